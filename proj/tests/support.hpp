#pragma once

// Shared generators and brute-force oracles for the test suites. Nothing here
// calls into the metric or reliability code it is used to check.

#include "gapquant/ingest.hpp"
#include "gapquant/model.hpp"

#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace testsupport {

using namespace gapquant;

inline std::string data_path(const std::string& name) {
    return std::string(GAPQUANT_TEST_DATA_DIR) + "/" + name;
}

inline AuditDataset load_fixture(const std::string& name) {
    std::ifstream in(data_path(name), std::ios::binary);
    return parse_concerns(in).dataset;
}

inline Concern make_concern(std::string id, int p, int s,
                            RootCauseCategory cat = RootCauseCategory::DataVulnerability,
                            std::string standard = "STD") {
    Concern c;
    c.id = std::move(id);
    c.standard = std::move(standard);
    c.section = "1.1";
    c.quoted_text = "text";
    c.description = "desc";
    c.root_cause.category = cat;
    c.probability = static_cast<Probability>(p);
    c.severity = static_cast<Severity>(s);
    return c;
}

/// Random Active concerns over a random non-empty subset of categories.
inline std::vector<Concern> random_concerns(std::mt19937& rng, std::size_t min_n = 1, std::size_t max_n = 60,
                                            bool uniform_rs = false) {
    std::uniform_int_distribution<std::size_t> n_dist(min_n, max_n);
    std::uniform_int_distribution<int> p_dist(1, 5), s_dist(1, 4), cat_dist(0, 3), std_dist(0, 2);
    const std::size_t n = n_dist(rng);
    std::vector<int> cats;
    for (int c = 0; c < 4; ++c) {
        if (rng() % 2) cats.push_back(c);
    }
    if (cats.empty()) cats.push_back(cat_dist(rng));
    std::uniform_int_distribution<std::size_t> pick(0, cats.size() - 1);
    const int fixed_p = p_dist(rng), fixed_s = s_dist(rng);

    std::vector<Concern> out;
    for (std::size_t i = 0; i < n; ++i) {
        const int p = uniform_rs ? fixed_p : p_dist(rng);
        const int s = uniform_rs ? fixed_s : s_dist(rng);
        out.push_back(make_concern("C" + std::to_string(i), p, s, static_cast<RootCauseCategory>(cats[pick(rng)]),
                                   "STD-" + std::to_string(std_dist(rng))));
    }
    return out;
}

// ---- metric oracles: direct transcriptions of the defining sums ----

inline double oracle_rsi(const std::vector<Concern>& cs) {
    long sum = 0;
    for (const auto& c : cs) sum += static_cast<int>(c.probability) * static_cast<int>(c.severity);
    return static_cast<double>(sum) / static_cast<double>(cs.size());
}

inline std::map<RootCauseCategory, double> oracle_rcvs(const std::vector<Concern>& cs) {
    double total = 0;
    std::map<RootCauseCategory, double> by;
    for (const auto& c : cs) {
        const double rs = static_cast<int>(c.probability) * static_cast<int>(c.severity);
        total += rs;
        by[c.root_cause.category] += rs;
    }
    for (auto& [k, v] : by) v /= total;
    return by;
}

inline double oracle_avpi(const std::vector<Concern>& cs) {
    const auto rcvs = oracle_rcvs(cs);
    std::map<RootCauseCategory, double> counts;
    for (const auto& c : cs) counts[c.root_cause.category] += 1;
    double acc = 0;
    for (const auto& [k, share] : rcvs) acc += (counts[k] / static_cast<double>(cs.size())) * share;
    return acc;
}

inline double sum_squared_count_shares(const std::vector<Concern>& cs) {
    std::map<RootCauseCategory, double> counts;
    for (const auto& c : cs) counts[c.root_cause.category] += 1;
    double acc = 0;
    for (const auto& [k, v] : counts) {
        const double p = v / static_cast<double>(cs.size());
        acc += p * p;
    }
    return acc;
}

// ---- reliability oracle: explicit enumeration of value pairs ----

/// Alpha from every ordered pair of pairable values: within-item pairs weighted
/// 1/(m_u - 1) for observed disagreement, all pairs across the table for
/// expected disagreement.
inline double oracle_alpha(const CoderTable& t) {
    struct Value {
        std::size_t item;
        std::string code;
    };
    std::vector<Value> values;
    std::map<std::size_t, std::size_t> m;
    for (std::size_t i = 0; i < t.item_ids.size(); ++i) {
        std::size_t count = 0;
        for (std::size_t j = 0; j < t.coder_ids.size(); ++j) count += t.at(i, j).has_value();
        if (count < 2) continue;
        m[i] = count;
        for (std::size_t j = 0; j < t.coder_ids.size(); ++j) {
            if (t.at(i, j)) values.push_back({i, *t.at(i, j)});
        }
    }
    const double n = static_cast<double>(values.size());
    double observed = 0, expected = 0;
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = 0; b < values.size(); ++b) {
            if (a == b) continue;
            const double delta = values[a].code == values[b].code ? 0.0 : 1.0;
            expected += delta;
            if (values[a].item == values[b].item) {
                observed += delta / static_cast<double>(m[values[a].item] - 1);
            }
        }
    }
    const double d_o = observed / n;
    const double d_e = expected / (n * (n - 1));
    return 1.0 - d_o / d_e;
}

inline CoderTable random_coder_table(std::mt19937& rng, std::size_t items, std::size_t coders, int n_codes,
                                     double missing_rate) {
    CoderTable t;
    for (std::size_t i = 0; i < items; ++i) t.item_ids.push_back("i" + std::to_string(i));
    for (std::size_t j = 0; j < coders; ++j) t.coder_ids.push_back("k" + std::to_string(j));
    std::uniform_int_distribution<int> code(0, n_codes - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < items * coders; ++i) {
        if (u(rng) < missing_rate) t.codes.emplace_back(std::nullopt);
        else t.codes.emplace_back(std::to_string(code(rng)));
    }
    return t;
}

} // namespace testsupport
