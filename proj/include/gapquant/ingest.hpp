#pragma once

#include "gapquant/model.hpp"

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gapquant {

enum class DiagnosticLevel { Warning, Error };

struct Diagnostic {
    std::size_t row = 0;   // spreadsheet numbering: header is row 1
    std::string field;
    std::string message;
    DiagnosticLevel level = DiagnosticLevel::Error;

    bool operator==(const Diagnostic&) const = default;
};

struct IngestReport {
    std::size_t rows_read = 0;
    std::size_t rows_accepted = 0;
    std::vector<Diagnostic> diagnostics;

    std::size_t error_count() const;
    std::size_t warning_count() const;
    bool ok() const { return error_count() == 0; }

    bool operator==(const IngestReport&) const = default;
};

/// Source column name -> canonical field name, applied to the header before
/// matching. Lets spreadsheet exports with different headings be read as is.
using ColumnMap = std::map<std::string, std::string>;

/// Parses "col=field"; throws Error on a missing '='.
std::pair<std::string, std::string> parse_column_mapping(std::string_view spec);

struct ConcernIngest {
    AuditDataset dataset;
    IngestReport report;
};

/// Reads the concern CSV interchange format:
///
///   id,standard,section,quoted_text,description,root_cause,probability,severity[,status][,expert_1..expert_k]
///
/// Header names are matched case-insensitively and in any order. Rows with a
/// bad label, a missing required field, the wrong field count or a repeated id
/// are rejected with an error diagnostic; every other row becomes a Concern.
/// Throws MalformedFile when the header is absent or lacks a required column.
ConcernIngest parse_concerns(std::istream& in, const ColumnMap& mapping = {});

/// Writes the dataset in the same format, including status and one column per
/// expert id seen in any ballot.
void write_concerns(std::ostream& out, const AuditDataset& dataset);

struct CoderTable {
    std::vector<std::string> item_ids;
    std::vector<std::string> coder_ids;
    // Row-major, item_ids.size() x coder_ids.size(); nullopt is a missing code.
    std::vector<std::optional<std::string>> codes;

    const std::optional<std::string>& at(std::size_t item, std::size_t coder) const {
        return codes[item * coder_ids.size() + coder];
    }

    bool operator==(const CoderTable&) const = default;
};

/// Reads `item_id,<coder>,<coder>,...`; blank cells are missing codes.
/// Throws MalformedFile for an absent header or ragged row, DuplicateItemId for
/// a repeated item.
CoderTable parse_coder_table(std::istream& in);

} // namespace gapquant
