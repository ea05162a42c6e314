// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [N ...]   (no arguments runs all nine)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "debranges/intensity.hpp"
#include "debranges/numerics.hpp"
#include "debranges/rigidity.hpp"
#include "debranges/specfun.hpp"
#include "debranges/stats.hpp"

using namespace debranges;
using std::numbers::pi;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Collects sub-checks of one criterion.
struct Verdict {
    bool ok = true;
    std::ostringstream detail;

    void upper(const char* name, double measured, double bound) {
        const bool pass = measured <= bound;
        ok = ok && pass;
        detail << "\n    " << (pass ? "ok  " : "BAD ") << name << ": " << measured << " (<= " << bound << ")";
    }
    void within(const char* name, double measured, double lo, double hi) {
        const bool pass = measured >= lo && measured <= hi;
        ok = ok && pass;
        detail << "\n    " << (pass ? "ok  " : "BAD ") << name << ": " << measured << " in [" << lo << ", " << hi << "]";
    }
    void flag(const char* name, bool pass) {
        ok = ok && pass;
        detail << "\n    " << (pass ? "ok  " : "BAD ") << name;
    }
    void note(const std::string& text) { detail << "\n    note " << text; }
};

void criterion1(Verdict& v) {
    const auto s = SpaceSpec::paley_wiener(pi);
    const double expect = 1 / std::sqrt(3.0);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1000, 1000);
    double worst = 0;
    for (int i = 0; i < 100; ++i) worst = std::max(worst, std::abs(rho1_closed(s, u(rng)) - expect));
    v.upper("|rho1_closed - 1/sqrt 3| at 100 random points", worst, 1e-14);
    const auto h = empirical_intensity(s, 0, {0, 50}, 10, 2000, 1);
    double zmax = 0;
    bool in3 = true;
    for (const auto& b : h.bins) {
        const double z = (b.mean - expect) / b.std_error;
        zmax = std::max(zmax, std::abs(z));
        in3 = in3 && std::abs(z) <= 3;
    }
    v.flag("every bin within 3 standard errors", in3);
    v.upper("max |z| over 10 bins, 2000 samples", zmax, 4);
}

void criterion2(Verdict& v) {
    for (auto [n, a] : {std::pair{2, 1.0}, std::pair{4, 1.0}, std::pair{7, 2.0}}) {
        const auto s = SpaceSpec::rational(n, a);
        const double expect = std::sqrt((n * n - 1) / 3.0);
        const auto ec = expected_count(s, {-kInf, kInf});
        v.upper(("|expected_count - sqrt((n^2-1)/3)|, n = " + std::to_string(n)).c_str(), std::abs(ec.value - expect), 1e-8);
        const auto m = count_moments(s, pi / 2, {-kInf, kInf}, 100000, 7);
        const double dev = std::abs(m.mean - expect);
        if (m.se_mean > 0)
            v.upper(("|MC mean - exact| / se, 1e5 samples, n = " + std::to_string(n)).c_str(), dev / m.se_mean, 3);
        else
            v.upper(("|MC mean - exact|, zero variance, n = " + std::to_string(n)).c_str(), dev, 1e-12);
    }
}

void criterion3(Verdict& v) {
    struct Case {
        const char* name;
        SpaceSpec space;
        Interval iv;
    };
    const Case cases[] = {{"paley-wiener", SpaceSpec::paley_wiener(pi), {-50, 50}},
                          {"airy", SpaceSpec::airy(), {-20, 5}},
                          {"bessel nu=1/2", SpaceSpec::bessel(0.5), {-50, 200}},
                          {"bessel nu=0", SpaceSpec::bessel(0), {-50, 200}},
                          {"rational n=4", SpaceSpec::rational(4, 1), {-10, 10}}};
    for (const auto& c : cases) {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(c.iv.lo, c.iv.hi);
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const double x = u(rng);
            const double closed = rho1_closed(c.space, x);
            worst = std::max({worst, rel(rho1_rice_covariance(c.space, x), closed), rel(rho1_ek_fd(c.space, x), closed)});
        }
        v.upper((std::string("max relative spread, ") + c.name).c_str(), worst, 1e-5);
    }
}

void criterion4(Verdict& v) {
    const auto s = SpaceSpec::airy();
    double worst = 0;
    for (int i = 0; i <= 2500; ++i) {
        const double x = -20 + 25.0 * i / 2500;
        worst = std::max(worst, rel(rho1_airy_special(x), rho1_closed(s, x)));
    }
    v.upper("Airy formula vs closed form on [-20, 5] (relative)", worst, 1e-8);
    v.within("rho1(-100) pi / sqrt(100/3)", rho1_closed(s, -100) * pi / std::sqrt(100.0 / 3), 0.95, 1.05);
    v.within("rho1(100) 4 pi 100", rho1_closed(s, 100) * 4 * pi * 100, 0.85, 1.15);
}

void criterion5(Verdict& v) {
    for (double nu : {0.5, 0.0}) {
        const auto s = SpaceSpec::bessel(nu);
        const auto zeros = specfun::bessel_zeros(nu, 21);
        double d1 = 0, arch = 0;
        for (int k = 0; k < 20; ++k) {
            const double w = zeros[k] * zeros[k], next = zeros[k + 1] * zeros[k + 1];
            d1 = std::max(d1, std::abs(phase_derivatives(s, w).d1 - 1 / (2 * w)));
            const double integral =
                numerics::integrate([&](double x) { return phase_derivatives(s, x).d1; }, w, next, 1e-11, 1e-12).value;
            arch = std::max(arch, std::abs(integral - pi));
        }
        const std::string tag = nu == 0 ? " (nu = 0)" : " (nu = 1/2)";
        v.upper(("|phi'(j_k^2) - 1/(2 j_k^2)|, k <= 20" + tag).c_str(), d1, 1e-10);
        v.upper(("|arch integral of phi' - pi|, k <= 20" + tag).c_str(), arch, 1e-8);
        int k = 1;
        while (specfun::bessel_zero(nu, k + 1) < 100) ++k;
        const double lo = std::pow(specfun::bessel_zero(nu, k), 2), hi = std::pow(specfun::bessel_zero(nu, k + 1), 2);
        const double avg =
            numerics::integrate([&](double x) { return rho1_closed(s, x) * 2 * pi * std::sqrt(3 * x); }, lo, hi, 1e-10, 1e-10).value /
            (hi - lo);
        v.within(("arch average of rho1 2 pi sqrt(3x) at 1e4" + tag).c_str(), avg, 0.8, 1.2);
        v.within(("rho1(-1e4) 4 pi 1e4" + tag).c_str(), rho1_closed(s, -1e4) * 4 * pi * 1e4, 0.9, 1.1);
    }
}

void criterion6(Verdict& v) {
    const auto pw = SpaceSpec::paley_wiener(pi);
    const auto pw_basis = basis_points(pw, 0, -2101, 2101);
    double scaled = 0;
    for (int n : {100, 500, 1000, 2000}) {
        const auto r = basel_series(pw, pw_basis, 0, n);
        scaled = std::max(scaled, std::abs(r.target - r.partial_sum) * n);
    }
    v.upper("Paley-Wiener: max over N of error * N", scaled, 2.5);

    double worst = 0;
    for (auto [n, a] : {std::pair{4, 1.0}, std::pair{7, 2.0}}) {
        const auto s = SpaceSpec::rational(n, a);
        const auto b = basis_points(s, pi / 3, -kInf, kInf);
        for (std::size_t i = 0; i < b.points.size(); ++i) {
            const auto r = basel_series(s, b, b.index(i), n);
            worst = std::max(worst, rel(r.partial_sum, r.target));
        }
    }
    v.upper("Rational exhaustive sums (relative)", worst, 1e-10);

    // Airy zero basis; the last point is a_1, the basis runs down to beyond a_2100.
    const auto airy = SpaceSpec::airy();
    const auto ab = basis_points(airy, 0, -470, 5);
    const std::size_t last = ab.points.size() - 1;
    double airy_worst = 0;
    for (std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{100}}) {
        const std::size_t i = last - (k - 1);
        const auto r = basel_series(airy, ab, ab.index(i), 2000);
        const double e = rel(r.partial_sum, r.target);
        airy_worst = std::max(airy_worst, e);
        // Terms are phi'(a_k) / (a_k - a_n)^2 since phi'(a_n) = 1; estimate the
        // omitted tail with the asymptotic zeros.
        const int kk = static_cast<int>(k);
        const double ak = ab.points[i];
        const double tail = numerics::tail_sum(
            [&](double m) {
                const double t = 3 * pi * (4 * m - 1) / 8;
                const double am = -std::pow(t, 2.0 / 3) * (1 + 5.0 / 48 / (t * t));
                return phase_derivatives(airy, ak).d1 / ((ak - am) * (ak - am));
            },
            kk + 2001, 4.0 / 3, 200);
        std::ostringstream os;
        os << "Airy k = " << k << ": relative error " << e << " at 2000 terms, " << rel(r.partial_sum + tail, r.target)
           << " after adding the asymptotic tail";
        v.note(os.str());
    }
    v.upper("Airy truncated sums at 2000 terms, k in {1, 10, 100} (relative)", airy_worst, 1e-3);
}

void criterion7(Verdict& v) {
    double period8 = 0, drift = 0;
    for (double c : {8.5, 10.0, 100.0}) {
        const auto o = integrate_orbit(c, pi);
        period8 = std::max(period8, std::abs(o.period - pi));
        drift = std::max(drift, o.max_c_drift);
    }
    const auto far = integrate_orbit(1e4, pi);
    drift = std::max(drift, far.max_c_drift);
    v.upper("|period - pi|, C in {8.5, 10, 100}", period8, 1e-8);
    v.upper("|period - pi|, C = 1e4", std::abs(far.period - pi), 1e-6);
    v.upper("relative C drift over one period", drift, 1e-8);
    double sym = 0, u = 0;
    for (double c : {8.5, 10.0, 100.0, 1e4}) {
        const auto tp = turning_points(c);
        sym = std::max(sym, std::abs(tp.x_plus + tp.x_minus));
        for (int k = 1; k <= 4; ++k) u = std::max(u, std::abs(u_integral(c, k * pi / 2) - k * pi / 2));
    }
    v.upper("|x+ + x-|", sym, 1e-14);
    v.upper("|U(k pi/2) - k pi/2|, k = 1..4", u, 1e-8);
    const auto pw = SpaceSpec::paley_wiener(pi);
    double resid = 0;
    for (double c : {8.5, 10.0, 100.0}) {
        const auto iso = build_isophase(pw, c, 0.7);
        for (int i = 0; i <= 200; ++i) {
            const double x = -10 + 20.0 * i / 200;
            resid = std::max(resid, std::abs(rho1_from_jet(iso.jet(x)) - rho1_closed(pw, x)));
        }
    }
    v.upper("iso-intensity residual, Paley-Wiener", resid, 1e-6);
}

void criterion8(Verdict& v) {
    const auto s = SpaceSpec::airy();
    const auto ec = expected_count(s, {1, 1e4});
    v.within("int_1^1e4 rho1 / (ln(1e4) / (4 pi))", ec.value / (std::log(1e4) / (4 * pi)), 0.9, 1.1);
    const auto div = expected_count(s, {0, kInf});
    std::ostringstream os;
    os << "fitted tail slope " << div.tail_slope;
    v.note(os.str());
    v.flag("int_0^inf rho1 classified divergent", div.divergent && std::isinf(div.value));
}

void criterion9(Verdict& v) {
    // Phase here is in radians: the half-unit gap is pi/2 and phi'(b_k) = |b_k|.
    const auto s = SpaceSpec::airy();
    double half = 0, slope = 0;
    for (int k = 1; k <= 50; ++k) {
        const double a = specfun::airy_zero(k), b = specfun::airy_prime_zero(k);
        half = std::max(half, std::abs(std::abs(phase(s, b) - phase(s, a)) / pi - 0.5));
        slope = std::max(slope, std::abs(phase_derivatives(s, b).d1 - std::abs(b)));
    }
    v.upper("| |phi(b_k) - phi(a_k)| / pi - 1/2 |, k <= 50", half, 1e-8);
    v.upper("|phi'(b_k) - |b_k||, k <= 50", slope, 1e-8);
}

const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> kCriteria{
    {"Paley-Wiener constant intensity", criterion1},
    {"rational expected counts", criterion2},
    {"three-way rho1 agreement", criterion3},
    {"Airy special formula and asymptotics", criterion4},
    {"Bessel checks", criterion5},
    {"Basel-type identity", criterion6},
    {"rigidity ODE", criterion7},
    {"Airy logarithmic zero growth", criterion8},
    {"Airy non-doubling witness", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (int i = 1; i <= 9; ++i) which.push_back(i);
    int failed = 0;
    for (int id : which) {
        if (id < 1 || id > 9) {
            std::fprintf(stderr, "no criterion %d\n", id);
            return 1;
        }
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            kCriteria[id - 1].second(v);
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail << "\n    exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %d: %s (%.1f s)%s\n", v.ok ? "PASS" : "FAIL", id, kCriteria[id - 1].first, secs,
                    v.detail.str().c_str());
        std::fflush(stdout);
        failed += !v.ok;
    }
    return failed ? 1 : 0;
}
