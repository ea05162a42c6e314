#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "debranges/errors.hpp"
#include "debranges/specfun.hpp"

using namespace debranges;
using std::numbers::pi;

namespace {

// Taylor series of Ai from y'' = x y about 0, in long double.
std::pair<long double, long double> airy_taylor(long double x) {
    std::vector<long double> c(400, 0.0L);
    c[0] = 0.355028053887817239260063186004L;
    c[1] = -0.258819403792806798405183560189L;
    for (std::size_t n = 1; n + 2 < c.size(); ++n) c[n + 2] = c[n - 1] / ((n + 2) * (n + 1));
    long double v = 0, d = 0, p = 1;
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (n + 1 < c.size()) d += (n + 1) * c[n + 1] * p;
        v += c[n] * p;
        p *= x;
    }
    return {v, d};
}

double bisect(const std::function<long double(long double)>& f, double lo, double hi) {
    long double a = lo, b = hi, fa = f(a);
    for (int i = 0; i < 200 && b - a > 1e-18L * (1 + std::abs(a)); ++i) {
        const long double m = (a + b) / 2, fm = f(m);
        if ((fm < 0) == (fa < 0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return static_cast<double>((a + b) / 2);
}

// B_nu(z) and B_nu'(z) from the Frobenius series sum (-z/4)^m / (m! Gamma(m+nu+1)) / 2^nu.
std::pair<long double, long double> bessel_b_series(double nu, long double z) {
    long double term = 1.0L / (std::tgamma(static_cast<long double>(nu) + 1) * std::pow(2.0L, nu));
    long double b = term, db = 0;
    for (int m = 1; m < 300; ++m) {
        term *= -z / (4.0L * m * (m + nu));
        b += term;
        db += term * m / z;
    }
    return {b, db};
}

long double j0_series(long double x) {
    long double t = 1, s = 1;
    for (int m = 1; m < 200; ++m) {
        t *= -(x * x / 4) / (static_cast<long double>(m) * m);
        s += t;
    }
    return s;
}

}  // namespace

TEST_CASE("Airy values match the Taylor oracle on [-6, 5]") {
    for (double x = -6; x <= 5; x += 0.37) {
        const auto [v, d] = airy_taylor(x);
        const auto p = specfun::airy(x);
        CHECK(p.ai == doctest::Approx(static_cast<double>(v)).epsilon(1e-11).scale(1e-6));
        CHECK(p.ai_prime == doctest::Approx(static_cast<double>(d)).epsilon(1e-11).scale(1e-6));
    }
}

TEST_CASE("Airy underflow flag beyond the representable range") {
    CHECK_FALSE(specfun::airy(50).underflow);
    const auto p = specfun::airy(200);
    CHECK(p.underflow);
    CHECK(p.ai == 0);
}

TEST_CASE("Airy zeros: bisection oracle and tabulated values") {
    auto ai = [](long double x) { return airy_taylor(x).first; };
    auto aip = [](long double x) { return airy_taylor(x).second; };
    CHECK(specfun::airy_zero(1) == doctest::Approx(bisect(ai, -2.5, -2.2)).epsilon(1e-13));
    CHECK(specfun::airy_zero(2) == doctest::Approx(bisect(ai, -4.2, -4.0)).epsilon(1e-13));
    CHECK(specfun::airy_prime_zero(1) == doctest::Approx(bisect(aip, -1.1, -0.9)).epsilon(1e-13));
    CHECK(specfun::airy_prime_zero(2) == doctest::Approx(bisect(aip, -3.4, -3.1)).epsilon(1e-12));
    CHECK(specfun::airy_zero(10) == doctest::Approx(-12.828776752865757).epsilon(1e-13));
    CHECK(specfun::airy_prime_zero(10) == doctest::Approx(-12.384788371845747).epsilon(1e-12));
}

TEST_CASE("Airy zeros interlace and approach the asymptotic formula") {
    for (int k = 1; k < 60; ++k) {
        CHECK(specfun::airy_prime_zero(k) > specfun::airy_zero(k));
        CHECK(specfun::airy_zero(k) > specfun::airy_prime_zero(k + 1));
    }
    CHECK(specfun::airy_zero(500) == doctest::Approx(specfun::airy_zero_asymptotic(500)).epsilon(1e-12));
}

TEST_CASE("Bessel J of half-integer order in closed form") {
    for (double x = 0.3; x < 60; x += 1.7) {
        const auto j = specfun::bessel_j(0.5, x);
        const double s = std::sqrt(2 / (pi * x));
        CHECK(j.value == doctest::Approx(s * std::sin(x)).epsilon(1e-13).scale(1e-3));
        CHECK(j.derivative == doctest::Approx(s * (std::cos(x) - std::sin(x) / (2 * x))).epsilon(1e-12).scale(1e-3));
        CHECK(specfun::bessel_j(-0.5, x).value == doctest::Approx(s * std::cos(x)).epsilon(1e-13).scale(1e-3));
    }
    CHECK_THROWS_AS(specfun::bessel_j(-0.7, 1.0), ValidationError);
}

TEST_CASE("Bessel zeros") {
    for (int k = 1; k <= 30; ++k) CHECK(specfun::bessel_zero(0.5, k) == doctest::Approx(k * pi).epsilon(1e-14));
    for (int k = 1; k <= 30; ++k) CHECK(specfun::bessel_zero(-0.5, k) == doctest::Approx((k - 0.5) * pi).epsilon(1e-14));
    auto j0 = [](long double x) { return j0_series(x); };
    CHECK(specfun::bessel_zero(0, 1) == doctest::Approx(bisect(j0, 2.3, 2.5)).epsilon(1e-14));
    CHECK(specfun::bessel_zero(0, 3) == doctest::Approx(bisect(j0, 8.5, 8.8)).epsilon(1e-14));
    const auto list = specfun::bessel_zeros(1.3, 40);
    for (int k = 1; k <= 40; ++k) CHECK(list[k - 1] == doctest::Approx(specfun::bessel_zero(1.3, k)).epsilon(1e-14));
    CHECK(specfun::bessel_zero(0, 1000) == doctest::Approx(specfun::bessel_zero_asymptotic(0, 1000)).epsilon(1e-13));
}

TEST_CASE("Bessel entire pair against the Frobenius series, both signs of z") {
    for (double nu : {0.0, 0.5, 2.25}) {
        for (double z : {-40.0, -7.5, -0.3, 0.0, 0.01, 3.0, 25.0, 60.0}) {
            const auto [b, db] = z == 0 ? std::pair<long double, long double>{bessel_b_series(nu, 1e-30L).first, 0}
                                        : bessel_b_series(nu, z);
            const auto p = specfun::bessel_entire(nu, z);
            CHECK(p.b == doctest::Approx(static_cast<double>(b)).epsilon(1e-12));
            if (z != 0) CHECK(p.a == doctest::Approx(static_cast<double>(nu * b + 2 * z * db)).epsilon(1e-11).scale(1e-8));
        }
    }
}

TEST_CASE("Bessel entire pair is continuous across the series limit") {
    const double z = specfun::kBesselSeriesLimit;
    for (double nu : {0.0, 0.5}) {
        const auto lo = specfun::bessel_entire(nu, z * (1 - 1e-12));
        const auto hi = specfun::bessel_entire(nu, z * (1 + 1e-12));
        CHECK(lo.b == doctest::Approx(hi.b).epsilon(1e-9));
        CHECK(lo.a == doctest::Approx(hi.a).epsilon(1e-9));
    }
}
