#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecoscope/errors.hpp"

namespace ecoscope {

enum class AttackType { Bait, Direct, Influencer };
enum class AttackStrategy { SocialEngineering, CredentialStealing };
enum class AttackVector { PackageCode, InstallationScript, NotApplicable };
enum class AttackVictims { FirstParty, SecondParty };
enum class AttackGoal { DryRun, CryptoTheft, CredentialTheft, Unknown };

std::string to_string(AttackType v);
std::string to_string(AttackStrategy v);
std::string to_string(AttackVector v);
std::string to_string(AttackVictims v);
std::string to_string(AttackGoal v);

/// One historical ecosystem attack framed in the five taxonomy dimensions,
/// plus time-to-discovery ("Same day" encoded as 0; fractional days kept).
struct IncidentRecord {
    std::string id;
    std::string description;
    AttackType attack_type = AttackType::Bait;
    AttackStrategy strategy = AttackStrategy::SocialEngineering;
    AttackVector vector = AttackVector::PackageCode;
    AttackVictims victims = AttackVictims::FirstParty;
    AttackGoal goal = AttackGoal::Unknown;
    double time_to_discovery_days = 0.0;
};

/// The eight bundled incidents. Immutable reference data.
const std::vector<IncidentRecord>& load_incidents();

struct EmptyInputError : Error {
    EmptyInputError();
};

struct IncidentSummary {
    std::size_t count = 0;
    double median_ttd_days = 0.0;
    double mean_ttd_days = 0.0;
    std::map<std::string, std::size_t> by_type;
    std::map<std::string, std::size_t> by_strategy;
    std::map<std::string, std::size_t> by_vector;
    std::map<std::string, std::size_t> by_victims;
    std::map<std::string, std::size_t> by_goal;
};

/// Median uses the midpoint rule for even counts.
IncidentSummary incident_summary(const std::vector<IncidentRecord>& records);

} // namespace ecoscope
