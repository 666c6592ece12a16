#include "gapquant/model.hpp"

#include "gapquant/errors.hpp"
#include "text_util.hpp"

#include <unordered_set>

namespace gapquant {

using detail::fold_key;
using detail::parse_int;
using detail::to_lower;
using detail::trim;

std::string_view label(Probability p) {
    switch (p) {
        case Probability::Frequent: return "Frequent";
        case Probability::Likely: return "Likely";
        case Probability::Occasional: return "Occasional";
        case Probability::Seldom: return "Seldom";
        case Probability::Unlikely: return "Unlikely";
    }
    return "?";
}

std::string_view label(Severity s) {
    switch (s) {
        case Severity::Catastrophic: return "Catastrophic";
        case Severity::Critical: return "Critical";
        case Severity::Moderate: return "Moderate";
        case Severity::Negligible: return "Negligible";
    }
    return "?";
}

std::string_view label(RootCauseCategory c) {
    switch (c) {
        case RootCauseCategory::DataVulnerability: return "Data Vulnerability";
        case RootCauseCategory::UnenforceableSecurityControl: return "Unenforceable Security Control";
        case RootCauseCategory::UnderDefinedProcess: return "Under-defined Process";
        case RootCauseCategory::AmbiguousSpecification: return "Ambiguous Specification";
    }
    return "?";
}

std::string_view label(ConcernStatus s) {
    switch (s) {
        case ConcernStatus::Active: return "Active";
        case ConcernStatus::Discarded: return "Discarded";
        case ConcernStatus::RejectedByExperts: return "RejectedByExperts";
    }
    return "?";
}

std::string_view label(Verdict v) {
    switch (v) {
        case Verdict::Confirmed: return "confirmed";
        case Verdict::Plausible: return "plausible";
        case Verdict::Rejected: return "rejected";
    }
    return "?";
}

std::string_view label(BallotOutcome o) {
    switch (o) {
        case BallotOutcome::Accepted: return "Accepted";
        case BallotOutcome::Rejected: return "Rejected";
        case BallotOutcome::Pending: return "Pending";
    }
    return "?";
}

Probability normalize_probability(int raw) {
    if (raw < 1 || raw > 5) {
        throw UnknownScaleValue("probability value out of range 1..5: " + std::to_string(raw));
    }
    return static_cast<Probability>(raw);
}

Probability normalize_probability(std::string_view raw) {
    const auto text = trim(raw);
    if (auto n = parse_int(text)) return normalize_probability(*n);

    const auto key = to_lower(text);
    if (key == "frequent" || key == "a") return Probability::Frequent;
    if (key == "likely" || key == "b") return Probability::Likely;
    if (key == "occasional" || key == "c") return Probability::Occasional;
    if (key == "seldom" || key == "d") return Probability::Seldom;
    if (key == "unlikely" || key == "e") return Probability::Unlikely;
    throw UnknownScaleValue("unknown probability: '" + std::string(text) + "'");
}

Severity normalize_severity(int raw) {
    if (raw < 1 || raw > 4) {
        throw UnknownScaleValue("severity value out of range 1..4: " + std::to_string(raw));
    }
    return static_cast<Severity>(raw);
}

Severity normalize_severity(std::string_view raw) {
    const auto text = trim(raw);
    if (auto n = parse_int(text)) return normalize_severity(*n);

    const auto key = to_lower(text);
    if (key == "catastrophic" || key == "i") return Severity::Catastrophic;
    if (key == "critical" || key == "significant" || key == "ii") return Severity::Critical;
    if (key == "moderate" || key == "marginal" || key == "iii") return Severity::Moderate;
    if (key == "negligible" || key == "iv") return Severity::Negligible;
    throw UnknownScaleValue("unknown severity: '" + std::string(text) + "'");
}

RootCauseCategory parse_root_cause(std::string_view raw) {
    const auto key = fold_key(raw);
    for (auto c : kAllCategories) {
        if (fold_key(label(c)) == key) return c;
    }
    throw UnknownScaleValue("unknown root cause: '" + std::string(trim(raw)) + "'");
}

ConcernStatus parse_status(std::string_view raw) {
    const auto key = fold_key(raw);
    if (key.empty() || key == "active") return ConcernStatus::Active;
    if (key == "discarded") return ConcernStatus::Discarded;
    if (key == "rejectedbyexperts" || key == "rejected") return ConcernStatus::RejectedByExperts;
    throw UnknownScaleValue("unknown status: '" + std::string(trim(raw)) + "'");
}

std::optional<Verdict> parse_verdict(std::string_view raw) {
    const auto key = fold_key(raw);
    if (key.empty()) return std::nullopt;
    if (key == "confirmed") return Verdict::Confirmed;
    if (key == "plausible") return Verdict::Plausible;
    if (key == "rejected") return Verdict::Rejected;
    throw UnknownScaleValue("unknown expert verdict: '" + std::string(trim(raw)) + "'");
}

AuditDataset::AuditDataset(std::vector<Concern> concerns) : concerns_(std::move(concerns)) {
    std::unordered_set<std::string> seen;
    for (const auto& c : concerns_) {
        if (!seen.insert(c.id).second) throw DuplicateConcernId("duplicate concern id: " + c.id);
    }
}

std::set<std::string> AuditDataset::standards() const {
    std::set<std::string> out;
    for (const auto& c : concerns_) out.insert(c.standard);
    return out;
}

std::vector<Concern> AuditDataset::active() const {
    std::vector<Concern> out;
    for (const auto& c : concerns_) {
        if (c.status == ConcernStatus::Active) out.push_back(c);
    }
    return out;
}

std::vector<Concern> AuditDataset::active_in(std::string_view standard) const {
    std::vector<Concern> out;
    for (const auto& c : concerns_) {
        if (c.status == ConcernStatus::Active && c.standard == standard) out.push_back(c);
    }
    return out;
}

std::vector<Concern> AuditDataset::of_standard(std::string_view standard) const {
    std::vector<Concern> out;
    for (const auto& c : concerns_) {
        if (c.standard == standard) out.push_back(c);
    }
    return out;
}

} // namespace gapquant
