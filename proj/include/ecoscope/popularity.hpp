#pragma once

#include <cstdint>
#include <vector>

#include "ecoscope/snapshot.hpp"

namespace ecoscope {

struct ZeroTotalError : Error {
    ZeroTotalError();
};

struct EmptySampleError : Error {
    EmptySampleError();
};

struct InsufficientTailError : Error {
    explicit InsufficientTailError(std::size_t n_tail);
};

struct InvalidXminError : Error {
    explicit InvalidXminError(double xmin);
};

struct DownloadSample {
    std::vector<double> values; // strictly positive
    Ecosystem ecosystem = Ecosystem::Npm;
};

/// Zero-download packages are excluded (fitting works on positive counts);
/// shares and thresholds take the raw snapshot instead.
DownloadSample download_sample(const Snapshot& snapshot);

struct PowerLawFit {
    double alpha = 0.0;   // > 1
    double xmin = 0.0;    // > 0
    std::size_t n_tail = 0;
};

/// Share of total downloads held by the k most-downloaded packages.
/// Ties broken by name ascending.
double top_share(const Snapshot& snapshot, std::size_t k);

/// Packages with downloads >= threshold (inclusive).
std::size_t count_at_least(const Snapshot& snapshot, std::uint64_t threshold);

/// Continuous MLE over the tail x >= xmin:
/// alpha = 1 + n / sum(ln(x_i / xmin)).
PowerLawFit fit_power_law(const DownloadSample& sample, double xmin);

/// (value, fraction of samples >= value) at each distinct value; fractions
/// strictly decreasing in value, starting at 1.0.
std::vector<std::pair<double, double>> ccdf(const DownloadSample& sample);

/// Fitted-distribution overlay: (v, (v/xmin)^-(alpha-1)) at each given value
/// >= xmin, for plotting against the empirical CCDF.
std::vector<std::pair<double, double>> power_law_ccdf(const PowerLawFit& fit,
                                                      const std::vector<double>& values);

} // namespace ecoscope
