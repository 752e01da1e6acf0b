#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "ecoscope/incidents.hpp"

using namespace ecoscope;

TEST_CASE("bundle holds exactly eight incidents") {
    CHECK(load_incidents().size() == 8);
}

TEST_CASE("eslint-scope record") {
    const auto& records = load_incidents();
    auto it = std::find_if(records.begin(), records.end(),
                           [](const IncidentRecord& r) { return r.id == "eslint-scope"; });
    REQUIRE(it != records.end());
    CHECK(it->attack_type == AttackType::Direct);
    CHECK(it->strategy == AttackStrategy::CredentialStealing);
    CHECK(it->vector == AttackVector::InstallationScript);
    CHECK(it->victims == AttackVictims::FirstParty);
    CHECK(it->goal == AttackGoal::CredentialTheft);
    CHECK(it->time_to_discovery_days == 0.0);
}

TEST_CASE("event-stream record") {
    const auto& records = load_incidents();
    auto it = std::find_if(records.begin(), records.end(),
                           [](const IncidentRecord& r) { return r.id == "event-stream"; });
    REQUIRE(it != records.end());
    CHECK(it->attack_type == AttackType::Influencer);
    CHECK(it->vector == AttackVector::PackageCode);
    CHECK(it->goal == AttackGoal::CryptoTheft);
    CHECK(it->time_to_discovery_days == 46.0);
}

TEST_CASE("bait incidents all use social engineering") {
    for (const auto& r : load_incidents())
        if (r.attack_type == AttackType::Bait)
            CHECK(r.strategy == AttackStrategy::SocialEngineering);
}

TEST_CASE("bundled summary") {
    auto summary = incident_summary(load_incidents());
    // sorted discovery times {0, 0, 1.5, 3, 12, 20, 46, 99}: midpoint of 3 and 12
    CHECK(summary.median_ttd_days == 7.5);
    CHECK(summary.by_type.at("Bait") == 2);
    CHECK(summary.by_type.at("Direct") == 4);
    CHECK(summary.by_type.at("Influencer") == 2);
}

TEST_CASE("singleton summary") {
    IncidentRecord r;
    r.id = "solo";
    r.time_to_discovery_days = 5.0;
    auto summary = incident_summary({r});
    CHECK(summary.median_ttd_days == 5.0);
    CHECK(summary.mean_ttd_days == 5.0);
    for (const auto& [key, count] : summary.by_type) CHECK(count == 1);
    CHECK(summary.by_strategy.size() == 1);
}

TEST_CASE("empty input") {
    CHECK_THROWS_AS(incident_summary({}), EmptyInputError);
}

TEST_CASE("dimension counts sum to input size; median permutation-invariant") {
    std::mt19937 rng(11);
    auto records = load_incidents();
    auto base = incident_summary(records);
    for (int trial = 0; trial < 10; ++trial) {
        std::shuffle(records.begin(), records.end(), rng);
        auto summary = incident_summary(records);
        CHECK(summary.median_ttd_days == base.median_ttd_days);
        std::size_t total = 0;
        for (const auto& [key, count] : summary.by_type) total += count;
        CHECK(total == records.size());
        total = 0;
        for (const auto& [key, count] : summary.by_goal) total += count;
        CHECK(total == records.size());
    }
}
