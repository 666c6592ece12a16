#include "gapquant/reliability.hpp"

#include "gapquant/errors.hpp"

#include <map>

namespace gapquant {

AlphaResult krippendorff_alpha_nominal(const CoderTable& table) {
    std::map<std::string, std::size_t> code_index;
    for (const auto& code : table.codes) {
        if (code) code_index.emplace(*code, 0);
    }
    std::size_t next = 0;
    for (auto& [code, idx] : code_index) idx = next++;

    const std::size_t v = code_index.size();
    std::vector<double> coincidence(v * v, 0.0);

    std::size_t pairable_items = 0;
    std::vector<std::size_t> counts(v);
    std::vector<std::size_t> marginal(v, 0);   // pairable values per code
    for (std::size_t item = 0; item < table.item_ids.size(); ++item) {
        std::fill(counts.begin(), counts.end(), 0);
        std::size_t m = 0;
        for (std::size_t coder = 0; coder < table.coder_ids.size(); ++coder) {
            if (const auto& code = table.at(item, coder)) {
                ++counts[code_index.at(*code)];
                ++m;
            }
        }
        if (m < 2) continue;
        ++pairable_items;
        for (std::size_t c = 0; c < v; ++c) marginal[c] += counts[c];
        // Ordered pairs of values from different coders, each weighted 1/(m-1).
        const double weight = 1.0 / static_cast<double>(m - 1);
        for (std::size_t c = 0; c < v; ++c) {
            if (!counts[c]) continue;
            for (std::size_t k = 0; k < v; ++k) {
                const double pairs = c == k ? static_cast<double>(counts[c] * (counts[c] - 1))
                                            : static_cast<double>(counts[c] * counts[k]);
                coincidence[c * v + k] += pairs * weight;
            }
        }
    }
    if (pairable_items == 0) throw InsufficientData("no item has codes from two or more coders");

    std::size_t total = 0;
    double off_diagonal = 0.0;
    for (std::size_t c = 0; c < v; ++c) {
        total += marginal[c];
        for (std::size_t k = 0; k < v; ++k) {
            if (c != k) off_diagonal += coincidence[c * v + k];
        }
    }

    double expected_pairs = 0.0;
    for (std::size_t c = 0; c < v; ++c) {
        expected_pairs += static_cast<double>(marginal[c]) * static_cast<double>(total - marginal[c]);
    }

    const auto n = static_cast<double>(total);
    AlphaResult r;
    r.pairable_values = total;
    r.observed_disagreement = off_diagonal / n;
    r.expected_disagreement = expected_pairs / (n * (n - 1.0));
    if (r.expected_disagreement == 0.0) {
        r.degenerate = true;
        r.alpha = 1.0;
    } else {
        r.alpha = 1.0 - r.observed_disagreement / r.expected_disagreement;
    }
    return r;
}

} // namespace gapquant
