#include "ecoscope/advisor.hpp"

#include <algorithm>

#include "ecoscope/abandonment.hpp"
#include "ecoscope/squatting.hpp"

namespace ecoscope {

std::string to_string(AlertKind kind) {
    switch (kind) {
        case AlertKind::PossibleTyposquat: return "PossibleTyposquat";
        case AlertKind::AbandonedPackage: return "AbandonedPackage";
        case AlertKind::ImportNameCollision: return "ImportNameCollision";
        case AlertKind::UnknownPackage: return "UnknownPackage";
    }
    return "?";
}

std::string to_string(AlertSeverity severity) {
    return severity == AlertSeverity::Warn ? "warn" : "block-by-default";
}

AdvisorIndex::AdvisorIndex(const Snapshot& snapshot) : snapshot_(&snapshot) {
    folded_.reserve(snapshot.records.size());
    for (std::size_t i = 0; i < snapshot.records.size(); ++i) {
        const PackageRecord& rec = snapshot.records[i];
        auto [it, inserted] = folded_.emplace(fold_name(rec.name), i);
        if (!inserted && rec.downloads > snapshot.records[it->second].downloads)
            it->second = i;
        for (const auto& module : rec.modules) {
            auto [mit, minserted] = modules_.emplace(normalize_name(module), i);
            if (!minserted && rec.downloads > snapshot.records[mit->second].downloads)
                mit->second = i;
        }
    }
}

const PackageRecord* AdvisorIndex::find_folded(const std::string& name) const {
    auto it = folded_.find(fold_name(name));
    return it == folded_.end() ? nullptr : &snapshot_->records[it->second];
}

const PackageRecord* AdvisorIndex::module_provider(
    const std::string& normalized_module) const {
    auto it = modules_.find(normalized_module);
    return it == modules_.end() ? nullptr : &snapshot_->records[it->second];
}

std::vector<const PackageRecord*> AdvisorIndex::neighbors(const std::string& name,
                                                          int max_distance) const {
    // Linear scan with a bounded distance; exact, and fast enough for
    // install-time checks at desk scale.
    std::string folded = fold_name(name);
    std::vector<const PackageRecord*> out;
    auto limit = static_cast<std::size_t>(max_distance);
    for (const auto& rec : snapshot_->records) {
        std::string other = fold_name(rec.name);
        if (other == folded) continue;
        if (edit_distance_bounded(folded, other, limit) <= limit) out.push_back(&rec);
    }
    return out;
}

namespace {

AlertSeverity severity_for(const AdvisorPolicy& policy) {
    return policy.strict ? AlertSeverity::BlockByDefault : AlertSeverity::Warn;
}

} // namespace

std::vector<Alert> check_install(const AdvisorIndex& index, const std::string& requested,
                                 const AdvisorPolicy& policy) {
    std::vector<Alert> alerts;
    const PackageRecord* record = index.find_folded(requested);
    if (!record) {
        Alert alert;
        alert.kind = AlertKind::UnknownPackage;
        alert.severity = severity_for(policy);
        alert.subject = requested;
        alerts.push_back(std::move(alert));
        return alerts;
    }

    if (record->downloads < policy.obscure_download_threshold) {
        int distance = fold_name(requested).size() >= policy.long_name_length
                           ? policy.long_name_distance
                           : policy.max_alert_distance;
        double bar = policy.popularity_ratio_threshold *
                     static_cast<double>(std::max<std::uint64_t>(record->downloads, 1));
        const PackageRecord* best = nullptr;
        for (const PackageRecord* neighbor : index.neighbors(requested, distance)) {
            if (static_cast<double>(neighbor->downloads) < bar) continue;
            if (!best || neighbor->downloads > best->downloads ||
                (neighbor->downloads == best->downloads && neighbor->name < best->name))
                best = neighbor;
        }
        if (best) {
            Alert alert;
            alert.kind = AlertKind::PossibleTyposquat;
            alert.severity = severity_for(policy);
            alert.subject = requested;
            alert.suggestion = best->name;
            alert.distance = static_cast<int>(edit_distance(requested, best->name));
            alert.subject_downloads = record->downloads;
            alert.suggestion_downloads = best->downloads;
            alerts.push_back(std::move(alert));
        }
    }

    if (is_abandoned(*record, index.reference_time(), policy.abandonment_window_days)) {
        Alert alert;
        alert.kind = AlertKind::AbandonedPackage;
        alert.severity = severity_for(policy);
        alert.subject = requested;
        alert.subject_downloads = record->downloads;
        alert.last_release_age_days =
            (index.reference_time() - record->last_release) / kSecondsPerDay;
        alerts.push_back(std::move(alert));
    }
    return alerts;
}

std::vector<Alert> check_update(const PackageRecord& record, std::int64_t reference_time,
                                const AdvisorPolicy& policy) {
    std::vector<Alert> alerts;
    if (is_abandoned(record, reference_time, policy.abandonment_window_days)) {
        Alert alert;
        alert.kind = AlertKind::AbandonedPackage;
        alert.severity = severity_for(policy);
        alert.subject = record.name;
        alert.subject_downloads = record.downloads;
        alert.last_release_age_days = (reference_time - record.last_release) / kSecondsPerDay;
        alerts.push_back(std::move(alert));
    }
    return alerts;
}

std::vector<Alert> check_import(const AdvisorIndex& index, const std::string& requested) {
    std::vector<Alert> alerts;
    std::string norm = normalize_name(requested);
    const PackageRecord* provider = index.module_provider(norm);
    if (!provider || normalize_name(provider->name) == norm) return alerts;

    const PackageRecord* same_name = index.find_folded(requested);
    Alert alert;
    alert.subject = requested;
    alert.suggestion = provider->name;
    alert.suggestion_downloads = provider->downloads;
    if (same_name) {
        // requesting a module name that is registered as a different package
        alert.kind = AlertKind::ImportNameCollision;
        alert.subject_downloads = same_name->downloads;
    } else {
        alert.kind = AlertKind::UnknownPackage;
    }
    alerts.push_back(std::move(alert));
    return alerts;
}

} // namespace ecoscope
