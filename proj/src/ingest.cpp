#include "gapquant/ingest.hpp"

#include "gapquant/csv.hpp"
#include "gapquant/errors.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace gapquant {

using detail::to_lower;
using detail::trim;

namespace {

constexpr std::array<std::string_view, 8> kRequiredColumns = {
    "id", "standard", "section", "quoted_text", "description", "root_cause", "probability", "severity"};

// Fields that may not be blank in a data row.
constexpr std::array<std::string_view, 5> kNonBlankFields = {
    "id", "standard", "root_cause", "probability", "severity"};

bool is_expert_column(std::string_view name) {
    return name.size() > 7 && name.substr(0, 7) == "expert_";
}

bool is_blank_record(const std::vector<std::string>& rec) {
    return rec.size() == 1 && trim(rec[0]).empty();
}

// expert_2 sorts before expert_10.
bool expert_less(const std::string& a, const std::string& b) {
    const auto num = [](const std::string& s) -> std::optional<int> {
        return is_expert_column(s) ? detail::parse_int(std::string_view(s).substr(7)) : std::nullopt;
    };
    const auto na = num(a);
    const auto nb = num(b);
    if (na && nb && *na != *nb) return *na < *nb;
    if (na.has_value() != nb.has_value()) return na.has_value();
    return a < b;
}

struct Header {
    std::unordered_map<std::string, std::size_t> index;   // canonical name -> column
    std::vector<std::string> expert_columns;               // in file order
    std::size_t width = 0;
};

Header read_header(const std::vector<std::string>& rec, const ColumnMap& mapping, IngestReport& report) {
    std::unordered_map<std::string, std::string> folded_map;
    for (const auto& [from, to] : mapping) folded_map[to_lower(trim(from))] = to_lower(trim(to));

    Header h;
    h.width = rec.size();
    for (std::size_t i = 0; i < rec.size(); ++i) {
        auto name = to_lower(trim(rec[i]));
        if (auto it = folded_map.find(name); it != folded_map.end()) name = it->second;
        if (name.empty()) {
            report.diagnostics.push_back({1, "", "unnamed column " + std::to_string(i + 1) + " ignored",
                                          DiagnosticLevel::Warning});
            continue;
        }
        if (!h.index.emplace(name, i).second) throw MalformedFile("duplicate column in header: " + name);

        const bool known = std::find(kRequiredColumns.begin(), kRequiredColumns.end(), name) !=
                               kRequiredColumns.end() ||
                           name == "status";
        if (is_expert_column(name)) {
            h.expert_columns.push_back(name);
        } else if (!known) {
            report.diagnostics.push_back({1, name, "unknown column ignored", DiagnosticLevel::Warning});
        }
    }
    for (auto col : kRequiredColumns) {
        if (!h.index.contains(std::string(col))) {
            throw MalformedFile("header is missing required column '" + std::string(col) + "'");
        }
    }
    return h;
}

} // namespace

std::size_t IngestReport::error_count() const {
    return static_cast<std::size_t>(std::count_if(diagnostics.begin(), diagnostics.end(), [](const auto& d) {
        return d.level == DiagnosticLevel::Error;
    }));
}

std::size_t IngestReport::warning_count() const {
    return diagnostics.size() - error_count();
}

std::pair<std::string, std::string> parse_column_mapping(std::string_view spec) {
    const auto eq = spec.find('=');
    if (eq == std::string_view::npos || eq == 0 || eq + 1 == spec.size()) {
        throw Error("column mapping must look like 'column=field', got '" + std::string(spec) + "'");
    }
    return {std::string(trim(spec.substr(0, eq))), std::string(trim(spec.substr(eq + 1)))};
}

ConcernIngest parse_concerns(std::istream& in, const ColumnMap& mapping) {
    if (!in) throw MalformedFile("input stream is not readable");

    csv::Reader reader(in);
    IngestReport report;

    auto header_rec = reader.next();
    while (header_rec && is_blank_record(*header_rec)) header_rec = reader.next();
    if (!header_rec) throw MalformedFile("missing header row");
    const Header header = read_header(*header_rec, mapping, report);
    const std::size_t header_row = reader.record_number();
    for (auto& d : report.diagnostics) d.row = header_row;

    std::vector<Concern> concerns;
    std::unordered_set<std::string> seen_ids;

    while (auto rec = reader.next()) {
        if (is_blank_record(*rec)) continue;
        const std::size_t row = reader.record_number();
        ++report.rows_read;

        std::vector<Diagnostic> row_diags;
        const auto error = [&](std::string field, std::string message) {
            row_diags.push_back({row, std::move(field), std::move(message), DiagnosticLevel::Error});
        };

        if (rec->size() != header.width) {
            error("", "expected " + std::to_string(header.width) + " fields, found " +
                          std::to_string(rec->size()));
            report.diagnostics.insert(report.diagnostics.end(), row_diags.begin(), row_diags.end());
            continue;
        }

        const auto cell = [&](std::string_view name) -> std::string_view {
            return trim((*rec)[header.index.at(std::string(name))]);
        };

        bool missing = false;
        for (auto f : kNonBlankFields) {
            if (cell(f).empty()) {
                error(std::string(f), "required field is blank");
                missing = true;
            }
        }

        Concern c;
        c.id = std::string(cell("id"));
        c.standard = std::string(cell("standard"));
        c.section = std::string(cell("section"));
        c.quoted_text = (*rec)[header.index.at("quoted_text")];
        c.description = (*rec)[header.index.at("description")];

        const auto attempt = [&](std::string_view field, auto&& parse) {
            if (cell(field).empty()) return;
            try {
                parse(cell(field));
            } catch (const UnknownScaleValue& e) {
                error(std::string(field), std::string("UnknownScaleValue: ") + e.what());
            }
        };
        attempt("root_cause", [&](std::string_view v) { c.root_cause.category = parse_root_cause(v); });
        attempt("probability", [&](std::string_view v) { c.probability = normalize_probability(v); });
        attempt("severity", [&](std::string_view v) { c.severity = normalize_severity(v); });
        if (header.index.contains("status")) {
            try {
                c.status = parse_status(cell("status"));
            } catch (const UnknownScaleValue& e) {
                error("status", std::string("UnknownScaleValue: ") + e.what());
            }
        }

        ExpertBallot ballot;
        for (const auto& col : header.expert_columns) {
            try {
                if (auto v = parse_verdict(cell(col))) ballot.verdicts.emplace(col, *v);
            } catch (const UnknownScaleValue& e) {
                error(col, std::string("UnknownScaleValue: ") + e.what());
            }
        }
        if (!ballot.verdicts.empty()) c.ballots = std::move(ballot);

        if (!missing && seen_ids.contains(c.id)) error("id", "duplicate id '" + c.id + "'");

        report.diagnostics.insert(report.diagnostics.end(), row_diags.begin(), row_diags.end());
        if (row_diags.empty()) {
            seen_ids.insert(c.id);
            concerns.push_back(std::move(c));
            ++report.rows_accepted;
        }
    }

    return {AuditDataset(std::move(concerns)), std::move(report)};
}

void write_concerns(std::ostream& out, const AuditDataset& dataset) {
    std::set<std::string, decltype(&expert_less)> experts(&expert_less);
    for (const auto& c : dataset.concerns()) {
        if (!c.ballots) continue;
        for (const auto& [expert, verdict] : c.ballots->verdicts) experts.insert(expert);
    }

    std::vector<std::string> header(kRequiredColumns.begin(), kRequiredColumns.end());
    header.emplace_back("status");
    header.insert(header.end(), experts.begin(), experts.end());
    csv::write_row(out, header);

    for (const auto& c : dataset.concerns()) {
        std::vector<std::string> row = {
            c.id,
            c.standard,
            c.section,
            c.quoted_text,
            c.description,
            std::string(label(c.root_cause.category)),
            std::string(label(c.probability)),
            std::string(label(c.severity)),
            std::string(label(c.status)),
        };
        for (const auto& expert : experts) {
            std::string v;
            if (c.ballots) {
                if (auto it = c.ballots->verdicts.find(expert); it != c.ballots->verdicts.end()) {
                    v = label(it->second);
                }
            }
            row.push_back(std::move(v));
        }
        csv::write_row(out, row);
    }
}

CoderTable parse_coder_table(std::istream& in) {
    if (!in) throw MalformedFile("input stream is not readable");

    csv::Reader reader(in);
    auto header = reader.next();
    while (header && is_blank_record(*header)) header = reader.next();
    if (!header || header->empty() || trim((*header)[0]).empty()) {
        throw MalformedFile("missing coder table header");
    }

    CoderTable table;
    for (std::size_t i = 1; i < header->size(); ++i) {
        auto id = std::string(trim((*header)[i]));
        if (id.empty()) throw MalformedFile("blank coder id in header column " + std::to_string(i + 1));
        if (std::find(table.coder_ids.begin(), table.coder_ids.end(), id) != table.coder_ids.end()) {
            throw MalformedFile("duplicate coder id '" + id + "'");
        }
        table.coder_ids.push_back(std::move(id));
    }

    std::unordered_set<std::string> seen;
    while (auto rec = reader.next()) {
        if (is_blank_record(*rec)) continue;
        if (rec->size() != header->size()) {
            throw MalformedFile("row " + std::to_string(reader.record_number()) + " has " +
                                std::to_string(rec->size()) + " fields, expected " +
                                std::to_string(header->size()));
        }
        auto item = std::string(trim((*rec)[0]));
        if (item.empty()) throw MalformedFile("blank item_id in row " + std::to_string(reader.record_number()));
        if (!seen.insert(item).second) throw DuplicateItemId("duplicate item_id '" + item + "'");
        table.item_ids.push_back(std::move(item));
        for (std::size_t j = 1; j < rec->size(); ++j) {
            const auto code = trim((*rec)[j]);
            table.codes.push_back(code.empty() ? std::nullopt : std::optional<std::string>(code));
        }
    }
    return table;
}

} // namespace gapquant
