#pragma once

// Truncated realizations of the real de Branges GAF
//   F(x) = sum_n a_n k_{w_n}(x),   a_n iid N(0, 1),
// evaluated in the |E|-normalized form
//   F(x)/|E(x)| = sum_n a_n sin(phi(x) - phi(w_n)) / (sqrt(pi phi'(w_n)) (x - w_n)).
//
// Basis points within `window_pad` of the interval are kept explicitly. The
// remaining (infinitely many) points enter through a Taylor expansion of
// sum_far a_n c_n / (x - w_n) about the interval center; its coefficients are
// jointly Gaussian with covariance given by power sums over the far points, so
// they are sampled exactly instead of being truncated away.

#include <cstdint>
#include <memory>
#include <vector>

#include "debranges/spaces.hpp"

namespace debranges {

struct Interval {
    double lo = 0;
    double hi = 0;
    double length() const { return hi - lo; }
};

/// Standard normal draw for (seed, stream, index); Acklam's inverse normal
/// CDF plus one Halley step. Pure function of its arguments.
double standard_normal(std::uint64_t seed, std::uint64_t stream, std::int64_t index);

struct SampleOptions {
    double deficit_tol = 1e-4;  ///< allowed |1 - Var F / K(x,x)| on the interval
    int far_order = 22;         ///< Taylor order of the far field
    int max_enlargements = 6;   ///< pad doublings before giving up
    std::size_t max_points = 4'000'000;
    int deficit_grid = 129;
};

/// Everything about a truncated GAF that does not depend on the seed.
struct GafModel {
    SpaceSpec space;
    BasisPoints basis;
    Interval interval;
    double window_pad = 0;  ///< +inf when the basis is exhaustive
    double cos_alpha = 1;
    double sin_alpha = 0;
    std::vector<double> weight;  ///< (-1)^n / sqrt(pi phi'(w_n))
    std::vector<PhaseJet> jets;  ///< phase derivatives at w_n

    // Far field: G(x) = sum_j z_j u^j, u = (x - center) / half_width, z = T g.
    double center = 0;
    double half_width = 1;
    int far_terms = 0;              ///< 0 when there is no far field
    std::vector<double> far_cov;    ///< far_terms x far_terms, row-major
    std::vector<double> far_map;    ///< T, row-major
    double max_deficit = 0;         ///< measured on the deficit grid
};

/// Build the seed-independent part. Throws ValidationError when the interval
/// is unusable and NumericError when the deficit criterion cannot be met.
std::shared_ptr<const GafModel> build_model(const SpaceSpec& space, double alpha, Interval interval,
                                            const SampleOptions& opt = {});

struct GafSample {
    std::shared_ptr<const GafModel> model;
    std::vector<double> coeffs;      ///< a_n, one per basis point
    std::vector<double> far_coeffs;  ///< z_j
    std::uint64_t seed = 0;

    const SpaceSpec& space() const { return model->space; }
    const BasisPoints& basis() const { return model->basis; }
    double window_pad() const { return model->window_pad; }
};

GafSample draw(std::shared_ptr<const GafModel> model, std::uint64_t seed);
GafSample sample(const SpaceSpec& space, double alpha, Interval interval, std::uint64_t seed,
                 const SampleOptions& opt = {});

/// F(x)/|E(x)|.
double eval(const GafSample& s, double x);

/// Var(F(x)/|E(x)|) of the truncated model; equals phi'(x)/pi for the full series.
double model_variance(const GafModel& m, double x);
/// 1 - model_variance / (phi'(x)/pi).
double variance_deficit(const GafModel& m, double x);

struct ZeroSet {
    std::vector<double> zeros;
    Interval interval;
    double resolution = 0;           ///< largest scan step used
    std::vector<double> tangencies;  ///< unresolved near-double zeros
};

/// Real zeros of F on the interval (which must lie inside the sampled one;
/// for exhaustive bases any interval, including infinite ends, is allowed).
ZeroSet real_zeros(const GafSample& s, Interval interval);

/// Same extraction on a uniform grid of the given step (the brute-force oracle).
ZeroSet real_zeros_uniform(const GafSample& s, Interval interval, double step);

}  // namespace debranges
