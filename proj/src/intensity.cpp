#include "debranges/intensity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "debranges/errors.hpp"
#include "debranges/numerics.hpp"
#include "debranges/specfun.hpp"

namespace debranges {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed_form";
        case Method::EdelmanKostlan: return "edelman_kostlan_fd";
        case Method::RiceCovariance: return "rice_covariance";
        case Method::AirySpecial: return "airy_special";
        case Method::RationalSpecial: return "rational_special";
        case Method::MonteCarlo: return "monte_carlo";
    }
    return "unknown";
}

Method method_from_string(const std::string& name) {
    if (name == "closed" || name == "closed_form") return Method::ClosedForm;
    if (name == "ek" || name == "edelman_kostlan_fd") return Method::EdelmanKostlan;
    if (name == "rice" || name == "rice_covariance") return Method::RiceCovariance;
    if (name == "airy" || name == "airy_special") return Method::AirySpecial;
    if (name == "rational" || name == "rational_special") return Method::RationalSpecial;
    if (name == "mc" || name == "monte_carlo") return Method::MonteCarlo;
    throw ValidationError("method", "unknown method '" + name + "'");
}

double rho1_from_jet(const PhaseJet& jet) {
    const double rad = jet.d1 * jet.d1 / 3 + jet.schwarzian / 6;
    if (rad < 0) {
        if (rad < -1e-12 * (1 + jet.d1 * jet.d1 + std::abs(jet.schwarzian)))
            throw NumericError("negative intensity radicand " + std::to_string(rad));
        return 0;
    }
    return std::sqrt(rad) / kPi;
}

double rho1_closed(const SpaceSpec& space, double x) { return rho1_from_jet(phase_derivatives(space, x)); }

RiceCovariance rice_covariance(const SpaceSpec& space, double x) {
    const PhaseJet j = phase_derivatives(space, x);
    return {j.d1 / kPi, j.d2 / (2 * kPi), (2 * j.d1 * j.d1 * j.d1 + j.d3) / (6 * kPi)};
}

double rho1_rice_covariance(const SpaceSpec& space, double x) {
    const RiceCovariance c = rice_covariance(space, x);
    if (!(c.a > 0)) throw NumericError("Rice covariance: non-positive variance");
    const double r = c.b / c.a;
    const double rad = c.d / c.a - r * r;
    if (rad < 0) {
        if (rad < -1e-12 * (1 + c.d / c.a)) throw NumericError("Rice covariance: negative determinant");
        return 0;
    }
    return std::sqrt(rad) / kPi;
}

double rho1_ek_fd(const SpaceSpec& space, double x, double h) {
    if (h <= 0) {
        const PhaseJet j = phase_derivatives(space, x);
        const double scale = std::min(1 / std::sqrt(j.d1 * j.d1 + std::abs(j.schwarzian)), 1 + std::abs(x));
        h = 0.5 * scale;
    }
    // log K(s, t) = log|E(s)| + log|E(t)| + log(model kernel); the first two
    // terms drop out of the mixed partial, so the model kernel is used.
    auto logk = [&](double s, double t) {
        const double k = model_kernel(space, s, t);
        if (!(k > 0)) throw NumericError("Edelman-Kostlan stencil: non-positive kernel value");
        return std::log(k);
    };
    // Even in u, so Ridders' extrapolation runs in u^2.
    auto stencil = [&](double u) {
        return (logk(x + u, x + u) + logk(x - u, x - u) - 2 * logk(x + u, x - u)) / (4 * u * u);
    };
    constexpr int kLevels = 10;
    constexpr double kShrink = 1.6, kShrink2 = kShrink * kShrink;
    double tab[kLevels][kLevels];
    tab[0][0] = stencil(h);
    double best = tab[0][0], err = std::numeric_limits<double>::infinity();
    for (int i = 1; i < kLevels; ++i) {
        h /= kShrink;
        tab[0][i] = stencil(h);
        double fac = kShrink2;
        for (int k = 1; k <= i; ++k) {
            tab[k][i] = (tab[k - 1][i] * fac - tab[k - 1][i - 1]) / (fac - 1);
            fac *= kShrink2;
            const double e = std::max(std::abs(tab[k][i] - tab[k - 1][i]), std::abs(tab[k][i] - tab[k - 1][i - 1]));
            if (e <= err) {
                err = e;
                best = tab[k][i];
            }
        }
        if (std::abs(tab[i][i] - tab[i - 1][i - 1]) >= 2 * err) break;
    }
    if (best < 0) throw NumericError("Edelman-Kostlan stencil: negative mixed partial");
    return std::sqrt(best) / kPi;
}

double rho1_airy_special(double x) {
    const auto p = specfun::airy(x);
    if (p.underflow) throw NumericError("Airy special formula: Ai underflows at x = " + std::to_string(x));
    const long double ai = p.ai, aip = p.ai_prime, lx = x;
    const long double den = lx * ai * ai - aip * aip;
    if (std::abs(den) < 1e-300L) throw NumericError("Airy special formula: vanishing denominator");
    const long double v =
        (2.0L / 3.0L) * ai * aip / den - ai * ai * ai * ai / (4.0L * den * den) - lx / 3.0L;
    if (v < 0) throw NumericError("Airy special formula: negative value");
    return static_cast<double>(std::sqrt(v) / std::numbers::pi_v<long double>);
}

double rho1_rational_special(const SpaceSpec& space, double x) {
    if (space.family != Family::Rational) throw ValidationError("space", "rational formula needs the rational family");
    const double n = *space.n, a = *space.a;
    return std::sqrt((n * n - 1) / 3) / kPi * a / (x * x + a * a);
}

double rho1(const SpaceSpec& space, double x, Method method) {
    switch (method) {
        case Method::ClosedForm: return rho1_closed(space, x);
        case Method::EdelmanKostlan: return rho1_ek_fd(space, x);
        case Method::RiceCovariance: return rho1_rice_covariance(space, x);
        case Method::AirySpecial:
            if (space.family != Family::Airy) throw ValidationError("method", "airy formula needs the airy family");
            return rho1_airy_special(x);
        case Method::RationalSpecial: return rho1_rational_special(space, x);
        case Method::MonteCarlo: break;
    }
    throw ValidationError("method", "monte_carlo is not a pointwise method");
}

IntensityCurve intensity_curve(const SpaceSpec& space, const std::vector<double>& xs, Method method) {
    space.validate();
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw ValidationError("grid", "grid must be strictly increasing");
    IntensityCurve c;
    c.space = space;
    c.xs = xs;
    c.method = method;
    c.values.reserve(xs.size());
    for (double x : xs) {
        const double v = rho1(space, x, method);
        if (!std::isfinite(v) || v < 0) throw NumericError("non-finite intensity at x = " + std::to_string(x));
        c.values.push_back(v);
    }
    return c;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t position_of(const BasisPoints& basis, long long k) {
    const long long i = k - basis.index_offset;
    if (i < 0 || i >= static_cast<long long>(basis.points.size()))
        throw ValidationError("k", "index " + std::to_string(k) + " is not in the basis");
    return static_cast<std::size_t>(i);
}

}  // namespace

BaselResult basel_series(const SpaceSpec& space, const BasisPoints& basis, long long k, int n_terms) {
    const std::size_t ik = position_of(basis, k);
    const double wk = basis.points[ik];
    const PhaseJet jk = phase_derivatives(space, wk);
    const long long n = static_cast<long long>(basis.points.size());
    const long long lo = std::max(0LL, static_cast<long long>(ik) - n_terms);
    const long long hi = std::min(n - 1, static_cast<long long>(ik) + n_terms);
    // Accumulate from the far ends inward so small terms go first.
    std::vector<double> terms;
    for (long long i = lo; i <= hi; ++i) {
        if (i == static_cast<long long>(ik)) continue;
        const double w = basis.points[i];
        const double d = wk - w;
        terms.push_back(jk.d1 / (d * d * phase_derivatives(space, w).d1));
    }
    std::sort(terms.begin(), terms.end());
    double sum = 0;
    for (double t : terms) sum += t;
    return {sum, jk.d1 * jk.d1 / 3 + jk.schwarzian / 6, static_cast<int>(terms.size())};
}

double bergman_rho1_squared(const SpaceSpec& space, const BasisPoints& basis, long long k, int n_terms) {
    return basel_series(space, basis, k, n_terms).partial_sum / (kPi * kPi);
}

// ---------------------------------------------------------------------------

namespace {

numerics::QuadResult integrate_pieces(const SpaceSpec& space, double lo, double hi, int pieces, double rel_tol = 1e-12) {
    numerics::QuadResult total;
    auto f = [&](double x) { return rho1_closed(space, x); };
    for (int i = 0; i < pieces; ++i) {
        const double a = lo + (hi - lo) * i / pieces;
        const double b = i + 1 == pieces ? hi : lo + (hi - lo) * (i + 1) / pieces;
        const auto r = numerics::integrate(f, a, b, 1e-11 * (b - a), rel_tol);
        total.value += r.value;
        total.abs_error += r.abs_error;
    }
    return total;
}

int piece_count(double lo, double hi) {
    const double span = hi - lo;
    return std::clamp(static_cast<int>(std::ceil(span / 50.0)), 1, 4096);
}

struct TailFit {
    double slope = 0;
    double start = 0;
};

// Log-log slope of rho_1 over the last decade [X, 10 X], from window
// averages at X and 10 X. A window spans at most 32 phase cycles (and at most
// a length X), so oscillating intensities are averaged at bounded cost.
// `sign` selects the +inf (1) or -inf (-1) end.
TailFit fit_tail(const SpaceSpec& space, double finite_end, int sign) {
    const double x0 = std::max(1e5, 10 * std::abs(finite_end));
    constexpr double kCycles = 64 * kPi;
    auto avg = [&](double x) {
        const double start = sign * x;
        const double p0 = phase(space, start);
        double w = x;
        for (int it = 0; it < 6; ++it) {
            const double turn = std::abs(phase(space, start + sign * w) - p0);
            if (turn <= 1.05 * kCycles) break;
            w *= kCycles / turn;
        }
        const double a = sign > 0 ? start : start - w;
        const double b = sign > 0 ? start + w : start;
        const int pieces = std::clamp(static_cast<int>(std::abs(phase(space, b) - phase(space, a)) / (4 * kPi)) + 1, 1, 4096);
        return integrate_pieces(space, a, b, pieces, 1e-8).value / w;
    };
    const double v0 = avg(x0), v1 = avg(10 * x0);
    TailFit t;
    t.start = x0;
    t.slope = (v0 > 0 && v1 > 0) ? std::log10(v1 / v0) : 0.0;
    return t;
}

constexpr double kSlopeSlack = 0.02;

}  // namespace

CountIntegral expected_count(const SpaceSpec& space, Interval iv) {
    space.validate();
    if (!(iv.lo < iv.hi)) throw ValidationError("interval", "empty interval");
    CountIntegral out;
    if (space.family == Family::Rational) {
        const double a = *space.a;
        const double t_lo = std::isfinite(iv.lo) ? std::atan(iv.lo / a) : -kPi / 2;
        const double t_hi = std::isfinite(iv.hi) ? std::atan(iv.hi / a) : kPi / 2;
        auto g = [&](double t) {
            const double c = std::cos(t);
            return rho1_closed(space, a * std::tan(t)) * a / (c * c);
        };
        const auto r = numerics::integrate(g, t_lo, t_hi, 1e-12, 1e-13);
        out.value = r.value;
        out.abs_error = r.abs_error;
        return out;
    }
    double lo = iv.lo, hi = iv.hi;
    double tail_total = 0, tail_err = 0;
    for (int sign : {-1, 1}) {
        const double end = sign > 0 ? iv.hi : iv.lo;
        if (std::isfinite(end)) continue;
        const double other = sign > 0 ? (std::isfinite(iv.lo) ? iv.lo : 0.0) : (std::isfinite(iv.hi) ? iv.hi : 0.0);
        const TailFit fit = fit_tail(space, other, sign);
        out.tail_slope = fit.slope;
        if (fit.slope >= -1 - kSlopeSlack) {
            out.divergent = true;
            out.value = kInf;
            return out;
        }
        auto f = [&](double x) { return rho1_closed(space, sign * x); };
        const auto r = numerics::integrate_power_tail(f, fit.start, -fit.slope);
        tail_total += r.value;
        tail_err += r.abs_error;
        if (sign > 0)
            hi = fit.start;
        else
            lo = -fit.start;
    }
    const auto r = integrate_pieces(space, lo, hi, piece_count(lo, hi));
    out.value = r.value + tail_total;
    out.abs_error = r.abs_error + tail_err;
    return out;
}

SchwarzianCheck schwarzian_asymptotic_check(double alpha_exp, const SpaceSpec& space, double x) {
    const PhaseJet j = phase_derivatives(space, x);
    return {x * x * j.schwarzian, alpha_exp * (2 - alpha_exp) / 2};
}

}  // namespace debranges
