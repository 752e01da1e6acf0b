#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ecoscope/snapshot.hpp"

namespace ecoscope {

inline constexpr std::int64_t kSecondsPerDay = 86400;
inline constexpr int kAbandonmentWindowDays = 365;

struct FutureReleaseError : Error {
    explicit FutureReleaseError(const std::string& name);
};

/// True iff more than the window (strictly) has elapsed since the last
/// release. A release exactly at the boundary is still active.
bool is_abandoned(const PackageRecord& record, std::int64_t reference_time,
                  int window_days = kAbandonmentWindowDays);

struct AbandonmentReport {
    std::size_t total = 0;
    std::size_t abandoned = 0;
    double fraction = 0.0;
    std::vector<std::pair<std::string, std::uint64_t>> top_abandoned; // downloads desc
    std::uint64_t cumulative_abandoned_downloads = 0;
};

AbandonmentReport abandonment_report(const Snapshot& snapshot,
                                     std::int64_t reference_time, std::size_t top_n,
                                     int window_days = kAbandonmentWindowDays);

} // namespace ecoscope
