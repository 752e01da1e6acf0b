#include "ecoscope/abandonment.hpp"

#include <algorithm>

namespace ecoscope {

FutureReleaseError::FutureReleaseError(const std::string& name)
    : Error("package " + name + " has a release after the reference time") {}

bool is_abandoned(const PackageRecord& record, std::int64_t reference_time,
                  int window_days) {
    if (record.last_release > reference_time) throw FutureReleaseError(record.name);
    return reference_time - record.last_release > window_days * kSecondsPerDay;
}

AbandonmentReport abandonment_report(const Snapshot& snapshot,
                                     std::int64_t reference_time, std::size_t top_n,
                                     int window_days) {
    if (snapshot.records.empty()) throw EmptySnapshotError();
    AbandonmentReport report;
    report.total = snapshot.records.size();
    std::vector<std::pair<std::string, std::uint64_t>> abandoned;
    for (const auto& rec : snapshot.records) {
        if (is_abandoned(rec, reference_time, window_days)) {
            abandoned.emplace_back(rec.name, rec.downloads);
            report.cumulative_abandoned_downloads += rec.downloads;
        }
    }
    report.abandoned = abandoned.size();
    report.fraction = static_cast<double>(report.abandoned) /
                      static_cast<double>(report.total);
    std::sort(abandoned.begin(), abandoned.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (abandoned.size() > top_n) abandoned.resize(top_n);
    report.top_abandoned = std::move(abandoned);
    return report;
}

} // namespace ecoscope
