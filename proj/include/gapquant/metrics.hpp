#pragma once

#include "gapquant/model.hpp"
#include "gapquant/riskmatrix.hpp"

#include <map>
#include <span>
#include <string>
#include <vector>

namespace gapquant {

struct MetricsSummary {
    std::string standard;   // "(all)" for an overall summary
    std::size_t n = 0;
    long total_rs = 0;
    double rsi = 0.0;
    std::map<RootCauseCategory, double> rcvs_by_category;   // non-empty categories only
    double mean_rcvs = 0.0;
    std::size_t k = 0;
    double avpi = 0.0;
    double csgp_percent = 0.0;
    std::map<RiskTier, std::size_t> tier_counts;            // all four tiers present
    ClassificationMode classification_mode = ClassificationMode::Grid;

    bool operator==(const MetricsSummary&) const = default;
};

inline constexpr std::string_view kOverallStandard = "(all)";

/// Mean risk score. Throws EmptyDataset.
double compute_rsi(std::span<const Concern> concerns);

/// Each non-empty category's share of the total risk score. Throws ZeroTotalRisk.
std::map<RootCauseCategory, double> compute_rcvs(std::span<const Concern> concerns);

/// Sum over non-empty categories of (category count share) x (category risk share).
/// Throws EmptyDataset.
double compute_avpi(std::span<const Concern> concerns);

/// Percentage of concerns the rule set marks High or Extremely High.
/// Throws EmptyDataset.
double compute_csgp(std::span<const Concern> concerns);

/// Summary of a concern list regardless of status; `tier_mode` drives tier_counts only.
MetricsSummary summarize_concerns(std::string standard, std::span<const Concern> concerns,
                                  ClassificationMode tier_mode = ClassificationMode::Grid);

/// Active concerns only. With by_standard, one summary per standard named in the
/// dataset, sorted; otherwise a single overall summary. A partition without
/// Active concerns raises EmptyDataset naming the standard.
std::vector<MetricsSummary> summarize(const AuditDataset& dataset, bool by_standard,
                                      ClassificationMode tier_mode = ClassificationMode::Grid);

} // namespace gapquant
