#pragma once

#include "gapquant/ingest.hpp"

namespace gapquant {

struct AlphaResult {
    double alpha = 1.0;
    double observed_disagreement = 0.0;
    double expected_disagreement = 0.0;
    std::size_t pairable_values = 0;
    /// Every pairable value is the same code, so expected disagreement is zero
    /// and alpha is reported as 1 by convention.
    bool degenerate = false;
};

/// Krippendorff's alpha for nominal codes, built from the coincidence matrix.
/// Items with fewer than two codes are skipped. Throws InsufficientData when no
/// item is pairable.
AlphaResult krippendorff_alpha_nominal(const CoderTable& table);

} // namespace gapquant
