#include "ecoscope/popularity.hpp"

#include <algorithm>
#include <cmath>

namespace ecoscope {

ZeroTotalError::ZeroTotalError() : Error("total download count is zero") {}
EmptySampleError::EmptySampleError() : Error("download sample is empty") {}

InsufficientTailError::InsufficientTailError(std::size_t n_tail)
    : Error("need at least 2 samples >= xmin, got " + std::to_string(n_tail)) {}

InvalidXminError::InvalidXminError(double xmin)
    : Error("xmin must be positive, got " + std::to_string(xmin)) {}

DownloadSample download_sample(const Snapshot& snapshot) {
    DownloadSample sample;
    sample.ecosystem = snapshot.ecosystem;
    for (const auto& rec : snapshot.records)
        if (rec.downloads > 0) sample.values.push_back(static_cast<double>(rec.downloads));
    return sample;
}

double top_share(const Snapshot& snapshot, std::size_t k) {
    if (snapshot.records.empty()) throw EmptySnapshotError();
    std::vector<std::pair<std::uint64_t, const std::string*>> counts;
    counts.reserve(snapshot.records.size());
    std::uint64_t total = 0;
    for (const auto& rec : snapshot.records) {
        counts.emplace_back(rec.downloads, &rec.name);
        total += rec.downloads;
    }
    if (total == 0) throw ZeroTotalError();
    std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return *a.second < *b.second;
    });
    std::uint64_t top = 0;
    for (std::size_t i = 0; i < std::min(k, counts.size()); ++i) top += counts[i].first;
    return static_cast<double>(top) / static_cast<double>(total);
}

std::size_t count_at_least(const Snapshot& snapshot, std::uint64_t threshold) {
    std::size_t count = 0;
    for (const auto& rec : snapshot.records)
        if (rec.downloads >= threshold) ++count;
    return count;
}

PowerLawFit fit_power_law(const DownloadSample& sample, double xmin) {
    if (!(xmin > 0)) throw InvalidXminError(xmin);
    double log_sum = 0.0;
    std::size_t n_tail = 0;
    for (double x : sample.values) {
        if (x >= xmin) {
            log_sum += std::log(x / xmin);
            ++n_tail;
        }
    }
    if (n_tail < 2) throw InsufficientTailError(n_tail);
    PowerLawFit fit;
    fit.xmin = xmin;
    fit.n_tail = n_tail;
    fit.alpha = 1.0 + static_cast<double>(n_tail) / log_sum;
    return fit;
}

std::vector<std::pair<double, double>> ccdf(const DownloadSample& sample) {
    if (sample.values.empty()) throw EmptySampleError();
    std::vector<double> sorted = sample.values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0 || sorted[i] != sorted[i - 1])
            points.emplace_back(sorted[i],
                                static_cast<double>(n - i) / static_cast<double>(n));
    }
    return points;
}

std::vector<std::pair<double, double>> power_law_ccdf(const PowerLawFit& fit,
                                                      const std::vector<double>& values) {
    std::vector<std::pair<double, double>> points;
    for (double v : values)
        if (v >= fit.xmin)
            points.emplace_back(v, std::pow(v / fit.xmin, -(fit.alpha - 1.0)));
    return points;
}

} // namespace ecoscope
