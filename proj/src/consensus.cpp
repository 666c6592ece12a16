#include "gapquant/consensus.hpp"

#include "gapquant/errors.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace gapquant {

namespace {

void check_threshold(double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw InvalidThreshold("consensus threshold must lie in (0, 1], got " + std::to_string(threshold));
    }
}

// Unbiased draw from [0, bound) by rejection. mt19937_64's output sequence is
// fixed by the standard; the library distributions are not.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

} // namespace

std::size_t concurrence(const ExpertBallot& ballot) {
    return static_cast<std::size_t>(std::count_if(ballot.verdicts.begin(), ballot.verdicts.end(),
                                                  [](const auto& kv) { return kv.second != Verdict::Rejected; }));
}

BallotOutcome tally(const ExpertBallot& ballot, double threshold, std::size_t panel_size) {
    check_threshold(threshold);
    const std::size_t cast = ballot.verdicts.size();
    const std::size_t panel = panel_size == 0 ? cast : std::max(panel_size, cast);
    if (panel == 0) return BallotOutcome::Pending;

    const double share = static_cast<double>(concurrence(ballot)) / static_cast<double>(panel);
    if (share >= threshold) return BallotOutcome::Accepted;
    if (cast < panel) return BallotOutcome::Pending;
    return BallotOutcome::Rejected;
}

AuditDataset apply_consensus(const AuditDataset& dataset, double threshold, std::size_t panel_size) {
    check_threshold(threshold);
    std::vector<Concern> out = dataset.concerns();
    for (auto& c : out) {
        if (!c.ballots) continue;
        c.ballots->outcome = tally(*c.ballots, threshold, panel_size);
        if (c.ballots->outcome == BallotOutcome::Rejected && c.status == ConcernStatus::Active) {
            c.status = ConcernStatus::RejectedByExperts;
        }
    }
    return AuditDataset(std::move(out));
}

ValidationPlan plan_validation(const AuditDataset& dataset, std::size_t budget, std::uint64_t seed,
                               ClassificationMode mode) {
    ValidationPlan plan{{}, budget, seed};
    std::mt19937_64 rng(seed);

    for (auto tier : kAllTiers) {
        std::vector<std::string> ids;
        for (const auto& c : dataset.concerns()) {
            if (c.status == ConcernStatus::Active && classify(c, mode) == tier) ids.push_back(c.id);
        }
        std::sort(ids.begin(), ids.end());
        for (std::size_t i = ids.size(); i > 1; --i) {
            std::swap(ids[i - 1], ids[bounded(rng, i)]);
        }
        for (auto& id : ids) {
            if (plan.selected.size() == budget) return plan;
            plan.selected.push_back(std::move(id));
        }
    }
    return plan;
}

} // namespace gapquant
