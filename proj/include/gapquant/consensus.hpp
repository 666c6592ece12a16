#pragma once

#include "gapquant/model.hpp"
#include "gapquant/riskmatrix.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gapquant {

inline constexpr double kDefaultConsensusThreshold = 0.75;
inline constexpr std::size_t kDefaultPanelSize = 4;

/// Confirmed and Plausible verdicts concur with a finding; Rejected opposes it.
std::size_t concurrence(const ExpertBallot& ballot);

/// Accepted once concurrence / panel_size reaches the threshold. Otherwise
/// Pending while fewer than panel_size verdicts are in, then Rejected.
/// panel_size 0 means "the verdicts cast are the whole panel".
/// Throws InvalidThreshold unless 0 < threshold <= 1.
BallotOutcome tally(const ExpertBallot& ballot, double threshold = kDefaultConsensusThreshold,
                    std::size_t panel_size = 0);

/// Tallies every ballot. Rejected concerns become RejectedByExperts; all other
/// fields are left untouched. Concerns without a ballot stay as they are.
AuditDataset apply_consensus(const AuditDataset& dataset, double threshold = kDefaultConsensusThreshold,
                             std::size_t panel_size = 0);

struct ValidationPlan {
    std::vector<std::string> selected;
    std::size_t budget = 0;
    std::uint64_t seed = 0;

    bool operator==(const ValidationPlan&) const = default;
};

/// Picks Active concerns for expert review: every Extremely High concern first,
/// then High, then Medium, then Low, each tier shuffled by `seed`, truncated
/// to `budget`.
ValidationPlan plan_validation(const AuditDataset& dataset, std::size_t budget, std::uint64_t seed,
                               ClassificationMode mode = ClassificationMode::Grid);

} // namespace gapquant
