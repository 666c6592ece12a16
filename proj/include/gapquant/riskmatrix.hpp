#pragma once

#include "gapquant/model.hpp"

#include <string_view>
#include <vector>

namespace gapquant {

// Declaration order gives the tier ordering: Low < Medium < High < ExtremelyHigh.
enum class RiskTier { Low, Medium, High, ExtremelyHigh };

inline constexpr RiskTier kAllTiers[] = {
    RiskTier::ExtremelyHigh, RiskTier::High, RiskTier::Medium, RiskTier::Low};

/// Grid: the CRM severity x probability lookup table.
/// Rules: the explicit E/H predicates, with Medium/Low taken from the grid.
enum class ClassificationMode { Grid, Rules };

std::string_view label(RiskTier t);
/// Single-letter code: E, H, M, L.
char letter(RiskTier t);
std::string_view label(ClassificationMode m);
ClassificationMode parse_mode(std::string_view raw);

RiskTier classify_grid(Probability p, Severity s);
RiskTier classify_rules(Probability p, Severity s);
RiskTier classify(Probability p, Severity s, ClassificationMode mode);
inline RiskTier classify(const Concern& c, ClassificationMode mode) {
    return classify(c.probability, c.severity, mode);
}

/// True when the rule set marks the cell Extremely High or High.
bool is_high_or_extreme_by_rules(Probability p, Severity s);

struct DiffCell {
    Probability probability;
    Severity severity;
    RiskTier grid_tier;
    RiskTier rule_tier;

    bool operator==(const DiffCell&) const = default;
};

/// Every cell where the grid and the rule set disagree, probability-major from Frequent.
std::vector<DiffCell> classification_diff();

} // namespace gapquant
