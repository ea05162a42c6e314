#pragma once

// Monte Carlo zero statistics. Sample i uses seed seed_base + i; per-sample
// results are merged in index order, so output does not depend on the
// number of workers.

#include <cstdint>
#include <functional>
#include <vector>

#include "debranges/gaf.hpp"
#include "debranges/intensity.hpp"

namespace debranges {

struct McOptions {
    int workers = 0;  ///< 0 means std::thread::hardware_concurrency()
    SampleOptions sample;
    double max_excluded_fraction = 1e-3;
};

struct HistogramBin {
    double lo = 0;
    double hi = 0;
    double mean = 0;       ///< mean zero count per unit length
    double std_error = 0;  ///< sample std / sqrt(n_samples)
};

struct CountHistogram {
    SpaceSpec space;
    double alpha = 0;
    Interval interval;
    std::vector<HistogramBin> bins;
    int n_samples = 0;
    std::uint64_t seed_base = 0;
    int excluded = 0;  ///< samples dropped for unresolved tangencies
};

CountHistogram empirical_intensity(const SpaceSpec& space, double alpha, Interval interval, int n_bins,
                                   int n_samples, std::uint64_t seed_base, const McOptions& opt = {});

struct CountMoments {
    double mean = 0;
    double variance = 0;
    double se_mean = 0;
    double se_variance = 0;
    int n_samples = 0;
    int excluded = 0;
};

CountMoments count_moments(const SpaceSpec& space, double alpha, Interval interval, int n_samples,
                           std::uint64_t seed_base, const McOptions& opt = {});

struct CurveComparison {
    double max_abs_z = 0;
    std::vector<double> expected;  ///< bin integral of the curve / bin width
    std::vector<double> z;
};

/// z-scores of the histogram against an analytic curve (trapezoid rule on the
/// curve's grid, linear interpolation at bin edges).
CurveComparison compare_curves(const CountHistogram& hist, const IntensityCurve& analytic);

/// Runs body(i) for i in [0, n) on a bounded pool; rethrows the first error.
void parallel_for(int n, int workers, const std::function<void(int)>& body);

}  // namespace debranges
