#include "ecoscope/incidents.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace ecoscope {

std::string to_string(AttackType v) {
    switch (v) {
        case AttackType::Bait: return "Bait";
        case AttackType::Direct: return "Direct";
        case AttackType::Influencer: return "Influencer";
    }
    return "?";
}

std::string to_string(AttackStrategy v) {
    return v == AttackStrategy::SocialEngineering ? "SocialEngineering"
                                                  : "CredentialStealing";
}

std::string to_string(AttackVector v) {
    switch (v) {
        case AttackVector::PackageCode: return "PackageCode";
        case AttackVector::InstallationScript: return "InstallationScript";
        case AttackVector::NotApplicable: return "N/A";
    }
    return "?";
}

std::string to_string(AttackVictims v) {
    return v == AttackVictims::FirstParty ? "FirstParty" : "SecondParty";
}

std::string to_string(AttackGoal v) {
    switch (v) {
        case AttackGoal::DryRun: return "DryRun";
        case AttackGoal::CryptoTheft: return "CryptoTheft";
        case AttackGoal::CredentialTheft: return "CredentialTheft";
        case AttackGoal::Unknown: return "Unknown";
    }
    return "?";
}

EmptyInputError::EmptyInputError() : Error("incident list is empty") {}

const std::vector<IncidentRecord>& load_incidents() {
    static const std::vector<IncidentRecord> incidents = [] {
        std::vector<IncidentRecord> v{
            {"event-stream",
             "copay turned into a wallet stealer through a malicious dependency chain "
             "injected into the unmaintained event-stream package",
             AttackType::Influencer, AttackStrategy::SocialEngineering,
             AttackVector::PackageCode, AttackVictims::SecondParty, AttackGoal::CryptoTheft,
             46.0},
            {"go-bindata",
             "deleted GitHub account of the go-bindata developer re-created by an attacker",
             AttackType::Direct, AttackStrategy::SocialEngineering,
             AttackVector::NotApplicable, AttackVictims::FirstParty, AttackGoal::Unknown,
             0.0},
            {"mailparser",
             "backdoored package appended to the dependency chain of the popular but "
             "unmaintained mailparser package",
             AttackType::Influencer, AttackStrategy::CredentialStealing,
             AttackVector::PackageCode, AttackVictims::SecondParty,
             AttackGoal::CredentialTheft, 20.0},
            {"eslint-scope",
             "credential-stealing install payload published to eslint-scope from a "
             "compromised developer account",
             AttackType::Direct, AttackStrategy::CredentialStealing,
             AttackVector::InstallationScript, AttackVictims::FirstParty,
             AttackGoal::CredentialTheft, 0.0},
            {"conventional-changelog",
             "cryptominer inserted into the actively maintained conventional-changelog "
             "package",
             AttackType::Direct, AttackStrategy::CredentialStealing,
             AttackVector::PackageCode, AttackVictims::FirstParty, AttackGoal::CryptoTheft,
             1.5},
            {"npm-typosquatting",
             "40 information-stealing npm packages uploaded under names similar to "
             "popular packages (crossenv and others)",
             AttackType::Bait, AttackStrategy::SocialEngineering,
             AttackVector::InstallationScript, AttackVictims::FirstParty,
             AttackGoal::CredentialTheft, 12.0},
            {"pypi-backdoor",
             "credential-collecting code inserted into the well-maintained ssh-decorate "
             "module",
             AttackType::Direct, AttackStrategy::CredentialStealing,
             AttackVector::PackageCode, AttackVictims::SecondParty,
             AttackGoal::CredentialTheft, 3.0},
            {"pypi-typosquatting",
             "10 malicious PyPI packages uploaded under names similar to popular packages",
             AttackType::Bait, AttackStrategy::SocialEngineering,
             AttackVector::InstallationScript, AttackVictims::FirstParty, AttackGoal::DryRun,
             99.0},
        };
        // Bait implies social engineering on the bundled data.
        for (const auto& r : v)
            assert(r.attack_type != AttackType::Bait ||
                   r.strategy == AttackStrategy::SocialEngineering);
        return v;
    }();
    return incidents;
}

IncidentSummary incident_summary(const std::vector<IncidentRecord>& records) {
    if (records.empty()) throw EmptyInputError();
    IncidentSummary s;
    s.count = records.size();
    std::vector<double> ttd;
    ttd.reserve(records.size());
    for (const auto& r : records) {
        ttd.push_back(r.time_to_discovery_days);
        ++s.by_type[to_string(r.attack_type)];
        ++s.by_strategy[to_string(r.strategy)];
        ++s.by_vector[to_string(r.vector)];
        ++s.by_victims[to_string(r.victims)];
        ++s.by_goal[to_string(r.goal)];
    }
    std::sort(ttd.begin(), ttd.end());
    std::size_t n = ttd.size();
    s.median_ttd_days = n % 2 == 1 ? ttd[n / 2] : (ttd[n / 2 - 1] + ttd[n / 2]) / 2.0;
    s.mean_ttd_days = std::accumulate(ttd.begin(), ttd.end(), 0.0) / static_cast<double>(n);
    return s;
}

} // namespace ecoscope
