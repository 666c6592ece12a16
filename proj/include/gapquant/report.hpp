#pragma once

#include "gapquant/ingest.hpp"
#include "gapquant/metrics.hpp"
#include "gapquant/reliability.hpp"
#include "gapquant/riskmatrix.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gapquant {

enum class Format { Json, Csv, Markdown, Svg };

/// Accepts json, csv, md, markdown, svg. Throws UnsupportedFormat otherwise.
Format parse_format(std::string_view raw);

struct TierCountRow {
    std::string standard;
    std::size_t total = 0;
    std::size_t extremely_high = 0;
    std::size_t high = 0;
    std::size_t medium = 0;
    std::size_t low = 0;

    bool operator==(const TierCountRow&) const = default;
};

struct TierCountTable {
    std::vector<TierCountRow> rows;   // sorted by standard
    ClassificationMode mode = ClassificationMode::Grid;
};

/// Count grid with labelled axes. cells[r][c] pairs row_labels[r] with col_labels[c].
struct HeatmapGrid {
    std::string title;
    std::string row_axis;
    std::string col_axis;
    std::vector<std::string> row_labels;
    std::vector<std::string> col_labels;
    std::vector<std::vector<std::size_t>> cells;

    std::size_t total() const;
    std::vector<std::size_t> row_sums() const;
};

/// Per-standard tier counts over Active concerns.
TierCountTable tier_counts(const AuditDataset& dataset, ClassificationMode mode = ClassificationMode::Grid);

/// Severity (Catastrophic..Negligible) by probability (Frequent..Unlikely) counts of
/// Active concerns, optionally restricted to one standard.
HeatmapGrid matrix_grid(const AuditDataset& dataset, std::optional<std::string> standard = std::nullopt);

/// Root-cause category by tier counts of Active concerns.
HeatmapGrid rootcause_heatmap(const AuditDataset& dataset, ClassificationMode mode = ClassificationMode::Grid,
                              std::optional<std::string> standard = std::nullopt);

struct ClassificationRow {
    std::string id;
    std::string standard;
    Probability probability;
    Severity severity;
    int risk_score;
    RiskTier grid_tier;
    RiskTier rule_tier;
};

/// One row per Active concern, in dataset order.
std::vector<ClassificationRow> classification_rows(const AuditDataset& dataset);

/// Shortest decimal that round-trips, always with a fractional part ("1.0", not "1").
std::string format_real(double v);
/// Two decimals, ties to even.
std::string format_fixed2(double v);

// Deterministic serializers. Formats a given aggregate cannot express raise
// UnsupportedFormat (SVG is only offered for count grids).
std::string render(const std::vector<MetricsSummary>& summaries, Format format);
std::string render(const TierCountTable& table, Format format);
std::string render(const HeatmapGrid& grid, Format format);
std::string render(const std::vector<ClassificationRow>& rows, Format format);
std::string render(const AlphaResult& result, Format format);
std::string render(const IngestReport& report, Format format);
/// Both classification tables plus the cells on which they differ.
std::string render_matrix_dump(Format format);

/// `alpha=… D_o=… D_e=… pairable=…` lines for terminal output.
std::string to_text(const AlphaResult& result);
std::string to_text(const IngestReport& report);

} // namespace gapquant
