#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gapquant {

// Underlying values are the numeric scale points used in risk scores.
enum class Probability : int {
    Unlikely = 1,
    Seldom = 2,
    Occasional = 3,
    Likely = 4,
    Frequent = 5,
};

enum class Severity : int {
    Negligible = 1,
    Moderate = 2,
    Critical = 3,
    Catastrophic = 4,
};

enum class RootCauseCategory {
    DataVulnerability,
    UnenforceableSecurityControl,
    UnderDefinedProcess,
    AmbiguousSpecification,
};

inline constexpr Probability kAllProbabilities[] = {
    Probability::Frequent, Probability::Likely, Probability::Occasional,
    Probability::Seldom, Probability::Unlikely};

inline constexpr Severity kAllSeverities[] = {
    Severity::Catastrophic, Severity::Critical, Severity::Moderate, Severity::Negligible};

inline constexpr RootCauseCategory kAllCategories[] = {
    RootCauseCategory::DataVulnerability, RootCauseCategory::UnenforceableSecurityControl,
    RootCauseCategory::UnderDefinedProcess, RootCauseCategory::AmbiguousSpecification};

enum class ConcernStatus { Active, Discarded, RejectedByExperts };

enum class Verdict { Confirmed, Plausible, Rejected };

enum class BallotOutcome { Accepted, Rejected, Pending };

constexpr int value(Probability p) { return static_cast<int>(p); }
constexpr int value(Severity s) { return static_cast<int>(s); }

std::string_view label(Probability p);
std::string_view label(Severity s);
std::string_view label(RootCauseCategory c);
std::string_view label(ConcernStatus s);
std::string_view label(Verdict v);
std::string_view label(BallotOutcome o);

/// Accepts labels (any case), CRM letters A (Frequent) .. E (Unlikely), or 1..5.
Probability normalize_probability(std::string_view raw);
Probability normalize_probability(int raw);

/// Accepts labels (any case), the aliases Marginal and Significant,
/// CRM Roman numerals I (Catastrophic) .. IV (Negligible), or 1..4.
Severity normalize_severity(std::string_view raw);
Severity normalize_severity(int raw);

/// Case, spacing, hyphens and underscores are ignored, so "Under-defined Process"
/// and "UnderDefinedProcess" both resolve.
RootCauseCategory parse_root_cause(std::string_view raw);
ConcernStatus parse_status(std::string_view raw);
/// Blank input yields nullopt; anything else must name a verdict.
std::optional<Verdict> parse_verdict(std::string_view raw);

struct RootCause {
    RootCauseCategory category = RootCauseCategory::DataVulnerability;
    std::string freeform_note;

    bool operator==(const RootCause&) const = default;
};

struct ExpertBallot {
    std::map<std::string, Verdict> verdicts;   // expert id -> verdict
    BallotOutcome outcome = BallotOutcome::Pending;

    bool operator==(const ExpertBallot&) const = default;
};

struct Concern {
    std::string id;
    std::string standard;
    std::string section;
    std::string quoted_text;
    std::string description;
    RootCause root_cause;
    Probability probability = Probability::Unlikely;
    Severity severity = Severity::Negligible;
    ConcernStatus status = ConcernStatus::Active;
    std::optional<ExpertBallot> ballots;

    bool operator==(const Concern&) const = default;
};

/// Probability value times severity value, in [1, 20].
constexpr int risk_score(Probability p, Severity s) { return value(p) * value(s); }
inline int risk_score(const Concern& c) { return risk_score(c.probability, c.severity); }

/// Ordered concern list with unique ids. Immutable once built.
class AuditDataset {
public:
    AuditDataset() = default;
    /// Throws DuplicateConcernId if two concerns share an id.
    explicit AuditDataset(std::vector<Concern> concerns);

    const std::vector<Concern>& concerns() const { return concerns_; }
    std::size_t size() const { return concerns_.size(); }
    bool empty() const { return concerns_.empty(); }

    /// Every standard named by any concern, sorted.
    std::set<std::string> standards() const;
    std::vector<Concern> active() const;
    std::vector<Concern> active_in(std::string_view standard) const;
    /// Concerns of one standard regardless of status.
    std::vector<Concern> of_standard(std::string_view standard) const;

    bool operator==(const AuditDataset&) const = default;

private:
    std::vector<Concern> concerns_;
};

} // namespace gapquant
