#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ecoscope/snapshot.hpp"

namespace ecoscope {

/// Thresholds for the obscurity-alert predicates. All tunable; defaults
/// follow the download-count cutoffs used in the ecosystem analysis.
struct AdvisorPolicy {
    std::uint64_t obscure_download_threshold = 1000;
    double popularity_ratio_threshold = 100.0;
    int max_alert_distance = 1;       // distance 2 allowed for long names
    std::size_t long_name_length = 10;
    int long_name_distance = 2;
    int abandonment_window_days = 365;
    bool strict = false; // strict profile escalates severity to BlockByDefault
};

enum class AlertKind { PossibleTyposquat, AbandonedPackage, ImportNameCollision, UnknownPackage };
enum class AlertSeverity { Warn, BlockByDefault };

std::string to_string(AlertKind kind);
std::string to_string(AlertSeverity severity);

struct Alert {
    AlertKind kind = AlertKind::UnknownPackage;
    AlertSeverity severity = AlertSeverity::Warn;
    std::string subject;
    std::optional<std::string> suggestion; // always set for PossibleTyposquat
    int distance = 0;
    std::uint64_t subject_downloads = 0;
    std::uint64_t suggestion_downloads = 0;
    std::int64_t last_release_age_days = 0;
};

/// Name/popularity index derived from a snapshot. Immutable after build;
/// checks are pure and safe to run concurrently.
class AdvisorIndex {
public:
    explicit AdvisorIndex(const Snapshot& snapshot);

    const Snapshot& snapshot() const { return *snapshot_; }
    std::int64_t reference_time() const { return snapshot_->captured_at; }

    const PackageRecord* find_folded(const std::string& name) const;

    /// Provider of a normalized module name, highest downloads first.
    const PackageRecord* module_provider(const std::string& normalized_module) const;

    /// Packages within the given edit distance of the name (folded), the
    /// name itself excluded.
    std::vector<const PackageRecord*> neighbors(const std::string& name,
                                                int max_distance) const;

private:
    const Snapshot* snapshot_;
    std::unordered_map<std::string, std::size_t> folded_;  // folded name -> record index
    std::unordered_map<std::string, std::size_t> modules_; // normalized module -> provider
};

std::vector<Alert> check_install(const AdvisorIndex& index, const std::string& requested,
                                 const AdvisorPolicy& policy);

std::vector<Alert> check_update(const PackageRecord& record, std::int64_t reference_time,
                                const AdvisorPolicy& policy);

std::vector<Alert> check_import(const AdvisorIndex& index, const std::string& requested);

} // namespace ecoscope
