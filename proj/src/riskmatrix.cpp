#include "gapquant/riskmatrix.hpp"

#include "gapquant/errors.hpp"
#include "text_util.hpp"

#include <array>

namespace gapquant {

namespace {

constexpr RiskTier E = RiskTier::ExtremelyHigh;
constexpr RiskTier H = RiskTier::High;
constexpr RiskTier M = RiskTier::Medium;
constexpr RiskTier L = RiskTier::Low;

// Rows: severity Catastrophic..Negligible. Columns: probability Frequent..Unlikely.
constexpr std::array<std::array<RiskTier, 5>, 4> kGrid = {{
    {E, E, H, H, M},
    {E, H, H, M, L},
    {H, M, M, L, L},
    {M, L, L, L, L},
}};

bool is_extreme_by_rules(int p, int s) {
    return ((p == 4 || p == 5) && s == 4) || (p == 5 && (s == 3 || s == 4));
}

bool is_high_by_rules(int p, int s) {
    return ((p == 3 || p == 4) && s == 3) || ((p == 2 || p == 3) && s == 4) ||
           ((p == 4 || p == 5) && s == 2);
}

} // namespace

std::string_view label(RiskTier t) {
    switch (t) {
        case RiskTier::ExtremelyHigh: return "ExtremelyHigh";
        case RiskTier::High: return "High";
        case RiskTier::Medium: return "Medium";
        case RiskTier::Low: return "Low";
    }
    return "?";
}

char letter(RiskTier t) {
    switch (t) {
        case RiskTier::ExtremelyHigh: return 'E';
        case RiskTier::High: return 'H';
        case RiskTier::Medium: return 'M';
        case RiskTier::Low: return 'L';
    }
    return '?';
}

std::string_view label(ClassificationMode m) {
    return m == ClassificationMode::Grid ? "grid" : "rules";
}

ClassificationMode parse_mode(std::string_view raw) {
    const auto key = detail::to_lower(detail::trim(raw));
    if (key == "grid") return ClassificationMode::Grid;
    if (key == "rules") return ClassificationMode::Rules;
    throw Error("unknown classification mode: '" + std::string(raw) + "'");
}

RiskTier classify_grid(Probability p, Severity s) {
    return kGrid[static_cast<std::size_t>(4 - value(s))][static_cast<std::size_t>(5 - value(p))];
}

RiskTier classify_rules(Probability p, Severity s) {
    const int pv = value(p);
    const int sv = value(s);
    if (is_extreme_by_rules(pv, sv)) return RiskTier::ExtremelyHigh;
    if (is_high_by_rules(pv, sv)) return RiskTier::High;
    return classify_grid(p, s);
}

RiskTier classify(Probability p, Severity s, ClassificationMode mode) {
    return mode == ClassificationMode::Grid ? classify_grid(p, s) : classify_rules(p, s);
}

bool is_high_or_extreme_by_rules(Probability p, Severity s) {
    return is_extreme_by_rules(value(p), value(s)) || is_high_by_rules(value(p), value(s));
}

std::vector<DiffCell> classification_diff() {
    std::vector<DiffCell> out;
    for (auto p : kAllProbabilities) {
        for (auto s : kAllSeverities) {
            const auto g = classify_grid(p, s);
            const auto r = classify_rules(p, s);
            if (g != r) out.push_back({p, s, g, r});
        }
    }
    return out;
}

} // namespace gapquant
