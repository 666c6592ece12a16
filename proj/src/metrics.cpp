#include "gapquant/metrics.hpp"

#include "gapquant/errors.hpp"

#include <numeric>

namespace gapquant {

namespace {

struct CategoryTotals {
    std::size_t count = 0;
    long risk = 0;
};

std::map<RootCauseCategory, CategoryTotals> per_category(std::span<const Concern> concerns) {
    std::map<RootCauseCategory, CategoryTotals> out;
    for (const auto& c : concerns) {
        auto& t = out[c.root_cause.category];
        ++t.count;
        t.risk += risk_score(c);
    }
    return out;
}

long total_risk(std::span<const Concern> concerns) {
    return std::accumulate(concerns.begin(), concerns.end(), 0L,
                           [](long acc, const Concern& c) { return acc + risk_score(c); });
}

} // namespace

double compute_rsi(std::span<const Concern> concerns) {
    if (concerns.empty()) throw EmptyDataset("RSI is undefined for zero concerns");
    return static_cast<double>(total_risk(concerns)) / static_cast<double>(concerns.size());
}

std::map<RootCauseCategory, double> compute_rcvs(std::span<const Concern> concerns) {
    const long total = total_risk(concerns);
    if (total <= 0) throw ZeroTotalRisk("RCVS is undefined when the total risk score is zero");
    std::map<RootCauseCategory, double> out;
    for (const auto& [category, t] : per_category(concerns)) {
        out[category] = static_cast<double>(t.risk) / static_cast<double>(total);
    }
    return out;
}

double compute_avpi(std::span<const Concern> concerns) {
    if (concerns.empty()) throw EmptyDataset("AVPI is undefined for zero concerns");
    const long total = total_risk(concerns);
    if (total <= 0) throw ZeroTotalRisk("AVPI is undefined when the total risk score is zero");

    // (count_c / n) * (risk_c / total), summed with one division at the end.
    long double numerator = 0;
    for (const auto& [category, t] : per_category(concerns)) {
        numerator += static_cast<long double>(t.count) * static_cast<long double>(t.risk);
    }
    const long double denominator =
        static_cast<long double>(concerns.size()) * static_cast<long double>(total);
    return static_cast<double>(numerator / denominator);
}

double compute_csgp(std::span<const Concern> concerns) {
    if (concerns.empty()) throw EmptyDataset("CSGP is undefined for zero concerns");
    const auto flagged = std::count_if(concerns.begin(), concerns.end(), [](const Concern& c) {
        return is_high_or_extreme_by_rules(c.probability, c.severity);
    });
    return 100.0 * static_cast<double>(flagged) / static_cast<double>(concerns.size());
}

MetricsSummary summarize_concerns(std::string standard, std::span<const Concern> concerns,
                                  ClassificationMode tier_mode) {
    if (concerns.empty()) throw EmptyDataset("no active concerns for '" + standard + "'");

    MetricsSummary s;
    s.standard = std::move(standard);
    s.n = concerns.size();
    s.total_rs = total_risk(concerns);
    s.rsi = compute_rsi(concerns);
    s.rcvs_by_category = compute_rcvs(concerns);
    s.k = s.rcvs_by_category.size();
    // Mean of the exact shares risk_c / total, taken over integers so that the
    // result is the correctly rounded 1/k rather than an accumulated float sum.
    long category_risk = 0;
    for (const auto& [category, t] : per_category(concerns)) category_risk += t.risk;
    s.mean_rcvs = static_cast<double>(category_risk) /
                  (static_cast<double>(s.total_rs) * static_cast<double>(s.k));
    s.avpi = compute_avpi(concerns);
    s.csgp_percent = compute_csgp(concerns);
    s.classification_mode = tier_mode;
    for (auto t : kAllTiers) s.tier_counts[t] = 0;
    for (const auto& c : concerns) ++s.tier_counts[classify(c, tier_mode)];
    return s;
}

std::vector<MetricsSummary> summarize(const AuditDataset& dataset, bool by_standard,
                                      ClassificationMode tier_mode) {
    std::vector<MetricsSummary> out;
    if (!by_standard) {
        const auto active = dataset.active();
        out.push_back(summarize_concerns(std::string(kOverallStandard), active, tier_mode));
        return out;
    }
    for (const auto& standard : dataset.standards()) {
        const auto active = dataset.active_in(standard);
        out.push_back(summarize_concerns(standard, active, tier_mode));
    }
    return out;
}

} // namespace gapquant
