#include "debranges/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>

#include "debranges/errors.hpp"
#include "debranges/numerics.hpp"
#include "debranges/specfun.hpp"

namespace debranges {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
using LJet = Jet<long double, 4>;

// Airy phase switches to the large-x expansion of Ai'/Ai here.
constexpr double kAiryAsymptoticX = 10.0;

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::PaleyWiener: return "paley-wiener";
        case Family::Airy: return "airy";
        case Family::Bessel: return "bessel";
        case Family::Rational: return "rational";
    }
    return "unknown";
}

Family family_from_string(const std::string& name) {
    if (name == "paley-wiener" || name == "pw" || name == "paley_wiener") return Family::PaleyWiener;
    if (name == "airy") return Family::Airy;
    if (name == "bessel") return Family::Bessel;
    if (name == "rational") return Family::Rational;
    throw ValidationError("space", "unknown family '" + name + "'");
}

SpaceSpec SpaceSpec::paley_wiener(double a) { return {Family::PaleyWiener, a, std::nullopt, std::nullopt}; }
SpaceSpec SpaceSpec::airy() { return {Family::Airy, std::nullopt, std::nullopt, std::nullopt}; }
SpaceSpec SpaceSpec::bessel(double nu) { return {Family::Bessel, std::nullopt, nu, std::nullopt}; }
SpaceSpec SpaceSpec::rational(int n, double a) { return {Family::Rational, a, std::nullopt, n}; }

void SpaceSpec::validate() const {
    const bool wants_a = family == Family::PaleyWiener || family == Family::Rational;
    const bool wants_nu = family == Family::Bessel;
    const bool wants_n = family == Family::Rational;
    const std::string fam = to_string(family);
    if (wants_a != a.has_value())
        throw ValidationError("a", wants_a ? fam + " requires parameter a" : fam + " does not take parameter a");
    if (wants_nu != nu.has_value())
        throw ValidationError("nu", wants_nu ? fam + " requires parameter nu" : fam + " does not take parameter nu");
    if (wants_n != n.has_value())
        throw ValidationError("n", wants_n ? fam + " requires parameter n" : fam + " does not take parameter n");
    if (a && !(*a > 0 && std::isfinite(*a))) throw ValidationError("a", "must be a positive finite number");
    if (nu && !(*nu >= -0.5 && std::isfinite(*nu))) throw ValidationError("nu", "must satisfy nu >= -1/2");
    if (n && *n < 2) throw ValidationError("n", "must satisfy n >= 2");
}

std::string describe(const SpaceSpec& space) {
    std::ostringstream os;
    os << to_string(space.family);
    if (space.a) os << " a=" << *space.a;
    if (space.nu) os << " nu=" << *space.nu;
    if (space.n) os << " n=" << *space.n;
    return os.str();
}

// ---------------------------------------------------------------------------
// A, B jets

namespace {

ABJet airy_ab_jet(double x) {
    const auto p = specfun::airy(x);
    // Ai^(m+2) = x Ai^(m) + m Ai^(m-1)
    std::array<long double, 5> d{};
    d[0] = p.ai;
    d[1] = p.ai_prime;
    d[2] = x * d[0];
    d[3] = d[0] + x * d[1];
    d[4] = x * d[2] + 2 * d[1];
    ABJet r;
    r.b = LJet::from_derivatives({d[0], d[1], d[2], d[3]});
    r.a = LJet::from_derivatives({d[1], d[2], d[3], d[4]});
    return r;
}

ABJet bessel_ab_jet(double nu, double z) {
    const auto d = specfun::bessel_entire_derivatives(nu, z);
    // A = nu B + 2 z B'  =>  A^(m) = (nu + 2m) B^(m) + 2 z B^(m+1)
    std::array<long double, 4> a{};
    for (int m = 0; m < 4; ++m) a[m] = (nu + 2.0L * m) * d[m] + 2.0L * z * d[m + 1];
    ABJet r;
    r.b = LJet::from_derivatives({d[0], d[1], d[2], d[3]});
    r.a = LJet::from_derivatives(a);
    return r;
}

ABJet pw_ab_jet(double a, double x) {
    std::array<long double, 4> ca{}, cb{};
    long double am = 1;
    for (int m = 0; m < 4; ++m) {
        const long double arg = static_cast<long double>(a) * x + m * std::numbers::pi_v<long double> / 2;
        ca[m] = am * std::cos(arg);
        cb[m] = am * std::sin(arg);
        am *= a;
    }
    return {LJet::from_derivatives(ca), LJet::from_derivatives(cb)};
}

ABJet rational_ab_jet(int n, double a, double x) {
    const std::complex<long double> w(x, a);
    std::array<long double, 4> ca{}, cb{};
    long double falling = 1;
    for (int m = 0; m < 4; ++m) {
        std::complex<long double> e = 0;
        if (m <= n) e = falling * std::pow(w, n - m);
        ca[m] = e.real();
        cb[m] = -e.imag();
        falling *= static_cast<long double>(n - m);
    }
    return {LJet::from_derivatives(ca), LJet::from_derivatives(cb)};
}

PhaseJet jet_from_ab(const ABJet& ab) {
    const LJet w = ab.b.diff() * ab.a - ab.b * ab.a.diff();
    const LJet d = ab.a * ab.a + ab.b * ab.b;
    const LJet dphi = w / d;
    PhaseJet j;
    j.phi = kNaN;
    j.d1 = static_cast<double>(dphi.c[0]);
    j.d2 = static_cast<double>(dphi.c[1]);
    j.d3 = static_cast<double>(2.0L * dphi.c[2]);
    const long double r = dphi.c[1] / dphi.c[0];
    j.schwarzian = static_cast<double>(2.0L * dphi.c[2] / dphi.c[0] - 1.5L * r * r);
    return j;
}

// Large-x Airy: Ai ~ e^-zeta U(zeta) / (2 sqrt(pi) x^(1/4)),
// Ai' ~ -x^(1/4) e^-zeta V(zeta) / (2 sqrt(pi)), zeta = 2/3 x^(3/2).
// With q = Ai'/Ai = -sqrt(x) V/U:  phi' = (q^2 - x) / (1 + q^2) and
// q^2 - x = x (V - U)(V + U) / U^2, where V - U has no constant term.
struct AiryAsymptotic {
    LJet q;
    LJet numerator;  // q^2 - x
};

AiryAsymptotic airy_asymptotic(double x0) {
    const LJet x = LJet::variable(x0);
    const LJet zeta = (2.0L / 3.0L) * pow(x, 1.5L);
    const LJet t = pow(zeta, -1.0L);
    const long double t0 = t.c[0];
    LJet u = LJet::constant(1.0L);
    LJet diff{};
    LJet tk = LJet::constant(1.0L);
    long double uk = 1.0L;
    long double last = std::numeric_limits<long double>::infinity();
    for (int k = 1; k < 200; ++k) {
        uk *= static_cast<long double>((6 * k - 5) * (6 * k - 3) * (6 * k - 1)) /
              (216.0L * k * (2 * k - 1));
        const long double vk = -static_cast<long double>(6 * k + 1) / (6 * k - 1) * uk;
        tk = tk * t;
        const long double sign = (k % 2 == 0) ? 1.0L : -1.0L;
        const long double size = std::abs(uk) * std::pow(t0, static_cast<long double>(k));
        if (size > last) break;  // asymptotic series: stop at the smallest term
        u += sign * uk * tk;
        diff += sign * (vk - uk) * tk;
        last = size;
        if (size < 1e-21L) break;
    }
    const LJet v = u + diff;
    AiryAsymptotic r;
    r.q = -1.0L * sqrt(x) * (v / u);
    r.numerator = x * diff * (v + u) / (u * u);
    return r;
}

PhaseJet airy_asymptotic_jet(double x0) {
    const auto as = airy_asymptotic(x0);
    const LJet dphi = as.numerator / (LJet::constant(1.0L) + as.q * as.q);
    PhaseJet j;
    j.phi = kNaN;
    j.d1 = static_cast<double>(dphi.c[0]);
    j.d2 = static_cast<double>(dphi.c[1]);
    j.d3 = static_cast<double>(2.0L * dphi.c[2]);
    const long double r = dphi.c[1] / dphi.c[0];
    j.schwarzian = static_cast<double>(2.0L * dphi.c[2] / dphi.c[0] - 1.5L * r * r);
    return j;
}

}  // namespace

ABJet ab_jet(const SpaceSpec& space, double x) {
    switch (space.family) {
        case Family::PaleyWiener: return pw_ab_jet(*space.a, x);
        case Family::Airy: return airy_ab_jet(x);
        case Family::Bessel: return bessel_ab_jet(*space.nu, x);
        case Family::Rational: return rational_ab_jet(*space.n, *space.a, x);
    }
    throw ValidationError("space", "unknown family");
}

// ---------------------------------------------------------------------------
// Phase jet

PhaseJet phase_derivatives(const SpaceSpec& space, double x) {
    switch (space.family) {
        case Family::PaleyWiener: {
            return {kNaN, *space.a, 0.0, 0.0, 0.0};
        }
        case Family::Rational: {
            const double a = *space.a, n = *space.n;
            const double p = x * x + a * a;
            PhaseJet j;
            j.phi = kNaN;
            j.d1 = n * a / p;
            j.d2 = -2.0 * n * a * x / (p * p);
            j.d3 = n * a * (6.0 * x * x - 2.0 * a * a) / (p * p * p);
            j.schwarzian = schwarzian_of(j.d1, j.d2, j.d3);
            return j;
        }
        case Family::Airy:
            if (x >= kAiryAsymptoticX) return airy_asymptotic_jet(x);
            return jet_from_ab(airy_ab_jet(x));
        case Family::Bessel: return jet_from_ab(bessel_ab_jet(*space.nu, x));
    }
    throw ValidationError("space", "unknown family");
}

namespace {

double integrate_d1(const SpaceSpec& space, double from, double to) {
    return numerics::integrate([&](double t) { return phase_derivatives(space, t).d1; }, from, to,
                               1e-11, 1e-14)
        .value;
}

double airy_zero_index_estimate(double x) {
    const double zeta = 2.0 / 3.0 * std::pow(std::abs(x), 1.5);
    return (zeta * 4.0 / kPi + 1.0) / 4.0;
}

}  // namespace

double phase(const SpaceSpec& space, double x) {
    switch (space.family) {
        case Family::PaleyWiener: return *space.a * x;
        case Family::Rational: return *space.n * (kPi / 2 + std::atan(x / *space.a));
        case Family::Airy: {
            const double a1 = specfun::airy_zero(1);
            if (x >= a1) return integrate_d1(space, a1, x);
            const double est = airy_zero_index_estimate(x);
            if (est > 2e9) throw NumericError("phase: Airy argument too far out for the zero anchor");
            const int k = std::max(1, static_cast<int>(std::lround(est)));
            const double ak = specfun::airy_zero(k);
            return -(k - 1) * kPi + integrate_d1(space, ak, x);
        }
        case Family::Bessel: {
            const double nu = *space.nu;
            const double j1 = specfun::bessel_zero(nu, 1);
            if (x <= j1 * j1) return integrate_d1(space, j1 * j1, x);
            const double est = std::sqrt(x) / kPi - nu / 2 + 0.25;
            const int k = std::max(1, static_cast<int>(std::lround(est)));
            const double jk = specfun::bessel_zero(nu, k);
            return (k - 1) * kPi + integrate_d1(space, jk * jk, x);
        }
    }
    throw ValidationError("space", "unknown family");
}

PhaseJet phase_jet(const SpaceSpec& space, double x) {
    PhaseJet j = phase_derivatives(space, x);
    j.phi = phase(space, x);
    return j;
}

Polar polar(const SpaceSpec& space, double x) {
    switch (space.family) {
        case Family::PaleyWiener: {
            const double ph = *space.a * x;
            return {std::cos(ph), std::sin(ph), 1.0, false};
        }
        case Family::Rational: {
            const double ph = phase(space, x);
            const double a = *space.a;
            return {std::cos(ph), std::sin(ph), std::pow(x * x + a * a, 0.5 * *space.n), false};
        }
        case Family::Airy: {
            // E(a_1) = Ai'(a_1) > 0 and phi(a_1) = 0: the raw phasor needs no sign flip.
            if (x >= kAiryAsymptoticX) {
                const auto q = static_cast<double>(airy_asymptotic(x).q.c[0]);
                const double norm = std::hypot(q, 1.0);
                const auto p = specfun::airy(x);
                return {q / norm, 1.0 / norm, p.ai * norm, p.underflow || p.ai == 0};
            }
            const auto p = specfun::airy(x);
            const double norm = std::hypot(p.ai_prime, p.ai);
            return {p.ai_prime / norm, p.ai / norm, norm, false};
        }
        case Family::Bessel: {
            // E(j_1^2) = A < 0 while phi(j_1^2) = 0: flip the raw phasor.
            const double nu = *space.nu;
            const auto d = specfun::bessel_entire_derivatives(nu, x);
            const long double b = d[0];
            const long double a = nu * d[0] + 2.0L * x * d[1];
            const long double norm = std::sqrt(a * a + b * b);
            const double abs_e = static_cast<double>(norm);
            return {static_cast<double>(-a / norm), static_cast<double>(-b / norm), abs_e,
                    !std::isfinite(abs_e)};
        }
    }
    throw ValidationError("space", "unknown family");
}

// ---------------------------------------------------------------------------
// Kernels

double kernel(const SpaceSpec& space, double x, double y) {
    const double h = y - x;
    if (std::abs(h) < kNearDiagonal * (1.0 + std::abs(x))) {
        // g(y) = B(x) A(y) - A(x) B(y) vanishes at y = x; K = -g(y) / (pi h).
        const ABJet j = ab_jet(space, x);
        const long double a0 = j.a.c[0], b0 = j.b.c[0];
        long double sum = 0, hp = 1;
        for (int m = 1; m < 4; ++m) {
            const long double gm = b0 * j.a.c[m] - a0 * j.b.c[m];  // Taylor coefficient of g
            sum += gm * hp;
            hp *= h;
        }
        return static_cast<double>(-sum / std::numbers::pi_v<long double>);
    }
    const ABJet jx = ab_jet(space, x);
    const ABJet jy = ab_jet(space, y);
    const long double num = jx.b.c[0] * jy.a.c[0] - jx.a.c[0] * jy.b.c[0];
    return static_cast<double>(num / (std::numbers::pi_v<long double> * (x - y)));
}

double model_kernel(const SpaceSpec& space, double x, double y) {
    const double h = x - y;
    if (std::abs(h) < kNearDiagonal * (1.0 + std::abs(y))) {
        const PhaseJet j = phase_derivatives(space, y);
        if (h == 0) return j.d1 / kPi;
        const double dphi = h * (j.d1 + h * (j.d2 / 2 + h * j.d3 / 6));
        return std::sin(dphi) / (kPi * h);
    }
    const Polar px = polar(space, x);
    const Polar py = polar(space, y);
    const double s = px.sin_phi * py.cos_phi - px.cos_phi * py.sin_phi;
    return s / (kPi * h);
}

double normalized_kernel(const SpaceSpec& space, double y, double x) {
    const double kyy = kernel(space, y, y);
    if (!(kyy > std::numeric_limits<double>::min()))
        throw NumericError("normalized_kernel: K(y, y) underflows at y = " + std::to_string(y));
    return kernel(space, x, y) / std::sqrt(kyy);
}

// ---------------------------------------------------------------------------
// Basis points

namespace {

BasisPoints pw_basis(double a, double alpha, double lo, double hi) {
    BasisPoints b;
    b.alpha = alpha;
    const auto n_lo = static_cast<long long>(std::ceil((a * lo - alpha) / kPi));
    const auto n_hi = static_cast<long long>(std::floor((a * hi - alpha) / kPi));
    b.index_offset = n_lo;
    for (long long n = n_lo; n <= n_hi; ++n) {
        const double w = (alpha + kPi * static_cast<double>(n)) / a;
        if (w < lo || w > hi) continue;  // rounding at the ends
        if (b.points.empty()) b.index_offset = n;
        b.points.push_back(w);
    }
    return b;
}

BasisPoints rational_basis(int n, double a, double alpha, double lo, double hi) {
    if (alpha == 0.0)
        throw ValidationError("alpha",
                              "alpha = 0 is the exceptional value for the rational family "
                              "(only n - 1 kernels, not a basis)");
    BasisPoints b;
    b.alpha = alpha;
    bool first = true;
    for (int m = 0; m < n; ++m) {
        // phi(w) = n (pi/2 + atan(w/a)) = alpha + pi m
        const double w = a * std::tan((alpha + kPi * m) / n - kPi / 2);
        if (w < lo || w > hi) continue;
        if (first) b.index_offset = m;
        first = false;
        b.points.push_back(w);
    }
    b.exhaustive = static_cast<int>(b.points.size()) == n;
    return b;
}

BasisPoints airy_zero_basis(double lo, double hi) {
    BasisPoints b;
    b.alpha = 0;
    // a_k descends with k; phi(a_k) = -(k - 1) pi, i.e. index n = 1 - k.
    int k = 1;
    if (hi < -3.0) k = std::max(1, static_cast<int>(std::floor(airy_zero_index_estimate(hi))) - 2);
    while (specfun::airy_zero(k) > hi) ++k;
    std::vector<double> desc;
    int k_first = k;
    for (;; ++k) {
        const double ak = specfun::airy_zero(k);
        if (ak < lo) break;
        desc.push_back(ak);
    }
    b.points.assign(desc.rbegin(), desc.rend());
    const int k_last = k_first + static_cast<int>(desc.size()) - 1;
    b.index_offset = 1 - k_last;
    return b;
}

BasisPoints bessel_zero_basis(double nu, double lo, double hi) {
    BasisPoints b;
    b.alpha = 0;
    if (hi <= 0) return b;
    const int count = static_cast<int>(std::sqrt(hi) / kPi + nu / 2 + 3);
    const auto zeros = specfun::bessel_zeros(nu, std::max(count, 1));
    bool first = true;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        const double w = zeros[i] * zeros[i];
        if (w < lo || w > hi) continue;
        if (first) b.index_offset = static_cast<long long>(i);  // phi(j_{k}^2) = (k - 1) pi
        first = false;
        b.points.push_back(w);
    }
    return b;
}

}  // namespace

BasisPoints basis_points_by_phase(const SpaceSpec& space, double alpha, double lo, double hi) {
    space.validate();
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ValidationError("interval", "basis_points_by_phase needs a finite window lo < hi");
    BasisPoints b;
    b.alpha = alpha;
    double x = lo;
    double ph = phase(space, lo);
    Polar p = polar(space, x);
    auto n = static_cast<long long>(std::ceil((ph - alpha) / kPi));
    b.index_offset = n;
    auto wrapped = [](const Polar& from, const Polar& to) {
        return std::atan2(to.sin_phi * from.cos_phi - to.cos_phi * from.sin_phi,
                          to.cos_phi * from.cos_phi + to.sin_phi * from.sin_phi);
    };
    while (x < hi) {
        const double d1 = phase_derivatives(space, x).d1;
        double h = std::min(0.25 / d1, hi - x);
        double x1 = 0, dph = 0;
        Polar p1;
        for (int tries = 0;; ++tries) {
            x1 = std::min(x + h, hi);
            p1 = polar(space, x1);
            dph = wrapped(p, p1);
            const double d1_end = phase_derivatives(space, x1).d1;
            const double predicted = 0.5 * (d1 + d1_end) * (x1 - x);
            if (dph > 0 && dph < 1.0 && std::abs(dph - predicted) < 0.5 * predicted + 1e-12) break;
            if (tries > 60) throw NumericError("basis_points_by_phase: phase tracking failed");
            h *= 0.5;
        }
        const double ph1 = ph + dph;
        while (alpha + kPi * static_cast<double>(n) <= ph1) {
            const double target = alpha + kPi * static_cast<double>(n);
            const Polar anchor = p;
            const double anchor_phase = ph;
            auto fdf = [&](double t) {
                const double f = anchor_phase + wrapped(anchor, polar(space, t)) - target;
                return std::pair{f, phase_derivatives(space, t).d1};
            };
            double w;
            if (anchor_phase == target)
                w = x;
            else
                w = numerics::safeguarded_newton(fdf, x, x1);
            if (b.points.empty()) b.index_offset = n;
            b.points.push_back(w);
            ++n;
        }
        x = x1;
        ph = ph1;
        p = p1;
    }
    return b;
}

BasisPoints basis_points(const SpaceSpec& space, double alpha, double x_lo, double x_hi) {
    space.validate();
    if (!(alpha >= 0 && alpha < kPi)) throw ValidationError("alpha", "must lie in [0, pi)");
    if (!(x_lo < x_hi)) throw ValidationError("interval", "empty window");
    switch (space.family) {
        case Family::PaleyWiener:
            if (!std::isfinite(x_lo) || !std::isfinite(x_hi))
                throw ValidationError("interval", "Paley-Wiener basis needs a finite window");
            return pw_basis(*space.a, alpha, x_lo, x_hi);
        case Family::Rational: return rational_basis(*space.n, *space.a, alpha, x_lo, x_hi);
        case Family::Airy:
            if (alpha == 0.0) return airy_zero_basis(x_lo, x_hi);
            return basis_points_by_phase(space, alpha, x_lo, x_hi);
        case Family::Bessel:
            if (alpha == 0.0) return bessel_zero_basis(*space.nu, x_lo, x_hi);
            return basis_points_by_phase(space, alpha, x_lo, x_hi);
    }
    throw ValidationError("space", "unknown family");
}

double schwarzian_fd(const SpaceSpec& space, double x, double h) {
    auto f = [&](double t) { return phase_derivatives(space, t).d1; };
    auto at = [&](double step) {
        const double fm2 = f(x - 2 * step), fm1 = f(x - step), f0 = f(x), fp1 = f(x + step),
                     fp2 = f(x + 2 * step);
        const double first = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * step);
        const double second = (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * step * step);
        return schwarzian_of(f0, first, second);
    };
    return (16 * at(h / 2) - at(h)) / 15;
}

}  // namespace debranges
