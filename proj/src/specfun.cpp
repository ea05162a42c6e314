#include "debranges/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include "debranges/errors.hpp"
#include "debranges/numerics.hpp"

namespace debranges::specfun {

namespace {

constexpr double kPi = std::numbers::pi;

void check_order(double nu) {
    if (!(nu >= -0.5) || !std::isfinite(nu))
        throw ValidationError("nu", "Bessel order must satisfy nu >= -1/2, got " + std::to_string(nu));
}

// Widen a symmetric bracket around `guess` until f changes sign.
std::pair<double, double> bracket_around(const std::function<double(double)>& f, double guess,
                                         double half_width) {
    for (int i = 0; i < 8; ++i) {
        const double lo = guess - half_width, hi = guess + half_width;
        if ((f(lo) > 0) != (f(hi) > 0)) return {lo, hi};
        half_width *= 1.5;
    }
    throw NumericError("zero bracketing failed near " + std::to_string(guess));
}

}  // namespace

AiryPair airy(double x) {
    if (x > kAiryUnderflowX) return {0.0, 0.0, true};
    return {boost::math::airy_ai(x), boost::math::airy_ai_prime(x), false};
}

double airy_zero_asymptotic(double k) {
    const double t = 3.0 * kPi * (4.0 * k - 1.0) / 8.0;
    const double t2 = 1.0 / (t * t);
    const double series =
        1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0 + t2 * (77125.0 / 82944.0 + t2 * (-108056875.0 / 6967296.0))));
    return -std::pow(t, 2.0 / 3.0) * series;
}

namespace {

double airy_prime_zero_asymptotic(double k) {
    const double t = 3.0 * kPi * (4.0 * k - 3.0) / 8.0;
    const double t2 = 1.0 / (t * t);
    const double series =
        1.0 + t2 * (-7.0 / 48.0 + t2 * (35.0 / 288.0 + t2 * (-181223.0 / 207360.0 + t2 * (18683371.0 / 1244160.0))));
    return -std::pow(t, 2.0 / 3.0) * series;
}

}  // namespace

double airy_zero(int k) {
    if (k < 1) throw ValidationError("k", "Airy zero index must be >= 1");
    const double guess = airy_zero_asymptotic(k);
    const double spacing = kPi / std::sqrt(std::max(std::abs(guess), 1.0));
    auto f = [](double x) { return boost::math::airy_ai(x); };
    const auto [lo, hi] = bracket_around(f, guess, 0.3 * spacing);
    return numerics::safeguarded_newton(
        [](double x) { return std::pair{boost::math::airy_ai(x), boost::math::airy_ai_prime(x)}; }, lo,
        hi);
}

double airy_prime_zero(int k) {
    if (k < 1) throw ValidationError("k", "Airy zero index must be >= 1");
    const double guess = k == 1 ? -1.0188 : airy_prime_zero_asymptotic(k);
    const double spacing = kPi / std::sqrt(std::max(std::abs(guess), 1.0));
    auto f = [](double x) { return boost::math::airy_ai_prime(x); };
    const auto [lo, hi] = bracket_around(f, guess, 0.3 * spacing);
    return numerics::safeguarded_newton(
        [](double x) { return std::pair{boost::math::airy_ai_prime(x), x * boost::math::airy_ai(x)}; }, lo,
        hi);
}

BesselJ bessel_j(double nu, double x) {
    check_order(nu);
    if (!(x > 0)) throw ValidationError("x", "bessel_j requires x > 0");
    return {boost::math::cyl_bessel_j(nu, x), boost::math::cyl_bessel_j_prime(nu, x)};
}

std::array<long double, 5> bessel_entire_series(double nu, double z) {
    check_order(nu);
    // B(z) = sum_k t_k with t_k = b_k z^k, b_0 = 1 / (2^nu Gamma(nu+1)),
    // b_{k+1} = -b_k / (4 (k+1) (k+nu+1)). B^(m) = sum_k t_k k!/(k-m)! / z^m.
    const long double lz = z;
    long double t = 1.0L / (std::pow(2.0L, static_cast<long double>(nu)) * std::tgamma(static_cast<long double>(nu) + 1.0L));
    std::array<long double, 5> d{};
    const long double az = std::abs(lz);
    const int k_min = static_cast<int>(2.0 * std::sqrt(std::abs(z))) + 8;
    long double peak = 0;
    // At z == 0 only the k == m term survives: B^(m)(0) = m! b_m.
    std::array<long double, 5> coeff{};
    for (int k = 0; k < 20000; ++k) {
        if (lz == 0.0L) {
            if (k > 4) break;
            coeff[k] = t;
        } else {
            long double falling = 1.0L, zinv = 1.0L;
            for (int m = 0; m <= 4 && m <= k; ++m) {
                d[m] += t * falling * zinv;
                falling *= static_cast<long double>(k - m);
                zinv /= lz;
            }
        }
        const long double mag = std::abs(t) * (1.0L + static_cast<long double>(k) * k * k * k / (az + 1.0L));
        peak = std::max(peak, mag);
        if (k > k_min && mag < 1e-22L * peak) break;
        // At z == 0, t carries b_k itself.
        t = lz == 0.0L ? -t / (4.0L * (k + 1) * (k + 1 + static_cast<long double>(nu)))
                       : -t * lz / (4.0L * (k + 1) * (k + 1 + static_cast<long double>(nu)));
    }
    if (lz == 0.0L) {
        long double fact = 1.0L;
        for (int m = 0; m <= 4; ++m) {
            d[m] = fact * coeff[m];
            fact *= m + 1;
        }
    }
    return d;
}

std::array<long double, 5> bessel_entire_derivatives(double nu, double z) {
    check_order(nu);
    if (z <= kBesselSeriesLimit) return bessel_entire_series(nu, z);
    const double s = std::sqrt(z);
    const auto j = bessel_j(nu, s);
    const long double lz = z;
    std::array<long double, 5> d{};
    d[0] = std::pow(lz, -0.5L * nu) * j.value;
    const long double a = std::pow(lz, 0.5L * (1.0L - nu)) * j.derivative;
    d[1] = (a - nu * d[0]) / (2.0L * lz);
    // z B^(m+2) = -(nu + 1 + m) B^(m+1) - B^(m) / 4
    for (int m = 0; m + 2 <= 4; ++m) d[m + 2] = (-(nu + 1.0L + m) * d[m + 1] - 0.25L * d[m]) / lz;
    return d;
}

BesselEntirePair bessel_entire(double nu, double z) {
    const auto d = bessel_entire_derivatives(nu, z);
    return {static_cast<double>(d[0]), static_cast<double>(nu * d[0] + 2.0L * z * d[1]), nu};
}

double bessel_zero_asymptotic(double nu, double k) {
    const double beta = (k + 0.5 * nu - 0.25) * kPi;
    const double mu = 4.0 * nu * nu;
    const double e = 8.0 * beta;
    return beta - (mu - 1.0) / e - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e * e * e) -
           32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * std::pow(e, 5));
}

namespace {

constexpr int kScanLimit = 400;

auto j_fdf(double nu) {
    return [nu](double x) {
        const auto j = bessel_j(nu, x);
        return std::pair{j.value, j.derivative};
    };
}

auto jprime_fdf(double nu) {
    return [nu](double x) {
        const auto j = bessel_j(nu, x);
        const double second = -j.derivative / x - (1.0 - nu * nu / (x * x)) * j.value;
        return std::pair{j.derivative, second};
    };
}

// Scan for sign changes of f starting just above the origin.
template <typename Fdf>
std::vector<double> scan_zeros(const Fdf& fdf, double start, int count) {
    std::vector<double> zeros;
    zeros.reserve(count);
    const double step = 0.5;
    double x0 = start;
    double f0 = fdf(x0).first;
    while (static_cast<int>(zeros.size()) < count) {
        const double x1 = x0 + step;
        const double f1 = fdf(x1).first;
        if (f0 == 0) {
            zeros.push_back(x0);
        } else if ((f0 > 0) != (f1 > 0)) {
            zeros.push_back(numerics::safeguarded_newton(fdf, x0, x1));
        }
        x0 = x1;
        f0 = f1;
    }
    return zeros;
}

double scan_start(double nu) { return std::max(1e-3, nu > 0 ? nu : 1e-3); }

}  // namespace

std::vector<double> bessel_zeros(double nu, int count) {
    check_order(nu);
    if (count < 0) throw ValidationError("count", "must be non-negative");
    const int scanned = std::min(count, kScanLimit);
    auto zeros = scan_zeros(j_fdf(nu), scan_start(nu), scanned);
    for (int k = scanned + 1; k <= count; ++k) zeros.push_back(bessel_zero(nu, k));
    return zeros;
}

double bessel_zero(double nu, int k) {
    check_order(nu);
    if (k < 1) throw ValidationError("k", "Bessel zero index must be >= 1");
    const double beta = (k + 0.5 * nu - 0.25) * kPi;
    const double guess = bessel_zero_asymptotic(nu, k);
    if (beta > 3.0 * nu + 20.0) {
        // McMahon is well inside half a zero spacing here.
        return numerics::safeguarded_newton(j_fdf(nu), guess - 1.0, guess + 1.0);
    }
    if (k <= kScanLimit) {
        thread_local double cached_nu = std::numeric_limits<double>::quiet_NaN();
        thread_local std::vector<double> cached;
        if (cached_nu != nu || static_cast<int>(cached.size()) < k) {
            cached = scan_zeros(j_fdf(nu), scan_start(nu), std::max(k, 8));
            cached_nu = nu;
        }
        return cached[k - 1];
    }
    auto f = [nu](double x) { return bessel_j(nu, x).value; };
    const auto [lo, hi] = bracket_around(f, guess, 0.5);
    return numerics::safeguarded_newton(j_fdf(nu), lo, hi);
}

double bessel_prime_zero(double nu, int k) {
    check_order(nu);
    if (k < 1) throw ValidationError("k", "Bessel zero index must be >= 1");
    // Skip the origin: start past nu (J'_nu has no zeros in (0, nu) for nu > 0).
    const double start = std::max(1e-3, nu) + 1e-3;
    return scan_zeros(jprime_fdf(nu), start, k).back();
}

}  // namespace debranges::specfun
