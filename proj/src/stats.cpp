#include "debranges/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "debranges/errors.hpp"

namespace debranges {

void parallel_for(int n, int workers, const std::function<void(int)>& body) {
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, std::max(n, 1));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    body(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    next = n;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

struct PerSample {
    std::vector<int> counts;
    bool excluded = false;
};

std::vector<PerSample> run_samples(const SpaceSpec& space, double alpha, Interval interval,
                                   const std::vector<double>& edges, int n_samples,
                                   std::uint64_t seed_base, const McOptions& opt) {
    if (n_samples < 2) throw ValidationError("samples", "need at least 2 samples");
    const auto model = build_model(space, alpha, interval, opt.sample);
    std::vector<PerSample> results(n_samples);
    const int n_bins = static_cast<int>(edges.size()) - 1;
    parallel_for(n_samples, opt.workers, [&](int i) {
        const GafSample s = draw(model, seed_base + static_cast<std::uint64_t>(i));
        const ZeroSet zs = real_zeros(s, interval);
        PerSample& r = results[i];
        r.counts.assign(std::max(n_bins, 1), 0);
        if (!zs.tangencies.empty()) {
            r.excluded = true;
            return;
        }
        for (double z : zs.zeros) {
            int b = 0;
            if (n_bins > 1) {
                b = static_cast<int>(std::upper_bound(edges.begin(), edges.end(), z) - edges.begin()) - 1;
                b = std::clamp(b, 0, n_bins - 1);
            }
            ++r.counts[b];
        }
    });
    int excluded = 0;
    for (const auto& r : results) excluded += r.excluded ? 1 : 0;
    if (excluded > opt.max_excluded_fraction * n_samples)
        throw NumericError("tangency exclusions (" + std::to_string(excluded) + ") exceed the allowed fraction");
    return results;
}

}  // namespace

CountHistogram empirical_intensity(const SpaceSpec& space, double alpha, Interval interval, int n_bins,
                                   int n_samples, std::uint64_t seed_base, const McOptions& opt) {
    if (n_bins < 1) throw ValidationError("bins", "need at least one bin");
    if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi))
        throw ValidationError("interval", "histogram needs a finite interval");
    std::vector<double> edges(n_bins + 1);
    for (int b = 0; b <= n_bins; ++b) edges[b] = interval.lo + interval.length() * b / n_bins;
    edges.back() = interval.hi;
    const auto results = run_samples(space, alpha, interval, edges, n_samples, seed_base, opt);

    CountHistogram h;
    h.space = space;
    h.alpha = alpha;
    h.interval = interval;
    h.n_samples = n_samples;
    h.seed_base = seed_base;
    for (const auto& r : results) h.excluded += r.excluded ? 1 : 0;
    const int used = n_samples - h.excluded;
    for (int b = 0; b < n_bins; ++b) {
        const double width = edges[b + 1] - edges[b];
        double sum = 0, sum_sq = 0;
        for (const auto& r : results) {
            if (r.excluded) continue;
            const double v = r.counts[b] / width;
            sum += v;
            sum_sq += v * v;
        }
        const double mean = sum / used;
        const double var = std::max(0.0, (sum_sq - used * mean * mean) / (used - 1));
        h.bins.push_back({edges[b], edges[b + 1], mean, std::sqrt(var / used)});
    }
    return h;
}

CountMoments count_moments(const SpaceSpec& space, double alpha, Interval interval, int n_samples,
                           std::uint64_t seed_base, const McOptions& opt) {
    const auto results = run_samples(space, alpha, interval, {interval.lo, interval.hi}, n_samples, seed_base, opt);
    CountMoments m;
    m.n_samples = n_samples;
    std::vector<double> counts;
    counts.reserve(results.size());
    for (const auto& r : results) {
        if (r.excluded) {
            ++m.excluded;
            continue;
        }
        counts.push_back(r.counts[0]);
    }
    const double n = static_cast<double>(counts.size());
    double sum = 0;
    for (double c : counts) sum += c;
    m.mean = sum / n;
    double m2 = 0, m4 = 0;
    for (double c : counts) {
        const double d = c - m.mean;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m.variance = m2 / (n - 1);
    m.se_mean = std::sqrt(m.variance / n);
    const double mu2 = m2 / n, mu4 = m4 / n;
    m.se_variance = std::sqrt(std::max(0.0, mu4 - mu2 * mu2) / n);
    return m;
}

namespace {

double interp(const IntensityCurve& c, double x) {
    const auto it = std::lower_bound(c.xs.begin(), c.xs.end(), x);
    if (it == c.xs.begin()) return c.values.front();
    if (it == c.xs.end()) return c.values.back();
    const std::size_t i = static_cast<std::size_t>(it - c.xs.begin());
    const double t = (x - c.xs[i - 1]) / (c.xs[i] - c.xs[i - 1]);
    return c.values[i - 1] + t * (c.values[i] - c.values[i - 1]);
}

double curve_integral(const IntensityCurve& c, double a, double b) {
    std::vector<double> xs{a};
    for (double x : c.xs)
        if (x > a && x < b) xs.push_back(x);
    xs.push_back(b);
    double s = 0;
    for (std::size_t i = 1; i < xs.size(); ++i) s += 0.5 * (xs[i] - xs[i - 1]) * (interp(c, xs[i]) + interp(c, xs[i - 1]));
    return s;
}

}  // namespace

CurveComparison compare_curves(const CountHistogram& hist, const IntensityCurve& analytic) {
    if (analytic.xs.empty() || analytic.xs.front() > hist.interval.lo + 1e-12 ||
        analytic.xs.back() < hist.interval.hi - 1e-12)
        throw ValidationError("analytic", "curve does not cover the histogram interval");
    CurveComparison out;
    for (const auto& b : hist.bins) {
        const double e = curve_integral(analytic, b.lo, b.hi) / (b.hi - b.lo);
        const double diff = b.mean - e;
        const double z = b.std_error > 0 ? diff / b.std_error : (diff == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff));
        out.expected.push_back(e);
        out.z.push_back(z);
        out.max_abs_z = std::max(out.max_abs_z, std::abs(z));
    }
    return out;
}

}  // namespace debranges
