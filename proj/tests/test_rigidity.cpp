#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "debranges/errors.hpp"
#include "debranges/intensity.hpp"
#include "debranges/rigidity.hpp"

using namespace debranges;
using std::numbers::pi;

namespace {

// Fixed-step classical RK4 for (x, y, U), independent of the library stepper.
struct Rk4Orbit {
    double period = 0;
    double max_drift = 0;
    std::array<std::array<double, 3>, 5> at_half_periods{};
};

Rk4Orbit rk4_orbit(double c, double x0, int steps_per_unit) {
    auto f = [](const std::array<double, 3>& s) {
        const double e = std::exp(s[0]);
        return std::array<double, 3>{s[1], 2 - 2 * e * e + 0.5 * s[1] * s[1], e};
    };
    Rk4Orbit out;
    std::array<double, 3> s{x0, 0, 0};
    const double h = 1.0 / steps_per_unit;
    int crossings = 0;
    int next_half = 1;
    out.at_half_periods[0] = s;
    // y starts at 0 moving up; the period ends at its next upward crossing.
    for (int i = 0; crossings < 1 || next_half <= 4; ++i) {
        const auto k1 = f(s);
        std::array<double, 3> t;
        for (int j = 0; j < 3; ++j) t[j] = s[j] + 0.5 * h * k1[j];
        const auto k2 = f(t);
        for (int j = 0; j < 3; ++j) t[j] = s[j] + 0.5 * h * k2[j];
        const auto k3 = f(t);
        for (int j = 0; j < 3; ++j) t[j] = s[j] + h * k3[j];
        const auto k4 = f(t);
        std::array<double, 3> n;
        for (int j = 0; j < 3; ++j) n[j] = s[j] + h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]);
        const double t0 = i * h, t1 = (i + 1) * h;
        if (next_half <= 4 && t1 >= next_half * pi / 2) {
            // Linear interpolation is enough for the coarse comparison below.
            const double w = (next_half * pi / 2 - t0) / h;
            for (int j = 0; j < 3; ++j) out.at_half_periods[next_half][j] = s[j] + w * (n[j] - s[j]);
            ++next_half;
        }
        if (s[1] < 0 && n[1] >= 0 && crossings++ == 0) {
            out.period = t0 - s[1] * h / (n[1] - s[1]);
        }
        out.max_drift = std::max(out.max_drift, std::abs(conserved_quantity(n[0], n[1]) - c) / c);
        s = n;
    }
    return out;
}

}  // namespace

TEST_CASE("ODE right-hand side and conserved quantity") {
    const OrbitState s{0, 0.3, -0.7};
    const auto d = ode_rhs(s);
    CHECK(d.dx == -0.7);
    CHECK(d.dy == doctest::Approx(2 - 2 * std::exp(0.6) + 0.245).epsilon(1e-15));
    // dC/dt = C_x x' + C_y y' vanishes along the flow.
    const double h = 1e-5;
    const double cx = (conserved_quantity(s.x + h, s.y) - conserved_quantity(s.x - h, s.y)) / (2 * h);
    const double cy = (conserved_quantity(s.x, s.y + h) - conserved_quantity(s.x, s.y - h)) / (2 * h);
    CHECK(cx * d.dx + cy * d.dy == doctest::Approx(0).scale(1).epsilon(1e-9));
    CHECK(conserved_quantity(0, 0) == 8);
}

TEST_CASE("turning points solve C(x, 0) = c and are symmetric") {
    for (double c : {8.0, 8.5, 10.0, 100.0, 1e4, 1e8}) {
        const auto tp = turning_points(c);
        CHECK(tp.x_minus <= tp.x_plus);
        CHECK(std::abs(tp.x_plus + tp.x_minus) <= 1e-14);
        CHECK(conserved_quantity(tp.x_minus, 0) == doctest::Approx(c).epsilon(1e-13));
        CHECK(conserved_quantity(tp.x_plus, 0) == doctest::Approx(c).epsilon(1e-13));
    }
    CHECK(turning_points(8).x_plus == 0);
    CHECK_THROWS_AS(turning_points(7.9), ValidationError);
    CHECK_THROWS_AS(turning_points(NAN), ValidationError);
}

TEST_CASE("orbits are isochronous with period pi") {
    for (double c : {8.5, 10.0, 100.0}) {
        const auto o = integrate_orbit(c, 2 * pi);
        CHECK(std::abs(o.period - pi) <= 1e-8);
        CHECK(o.max_c_drift <= 1e-8);
        CHECK(o.states.front().t == 0);
        CHECK(o.states.back().t == doctest::Approx(2 * pi).epsilon(1e-14));
        const auto oracle = rk4_orbit(c, turning_points(c).x_minus, 4000);
        CHECK(oracle.period == doctest::Approx(pi).epsilon(1e-6));
        CHECK(oracle.max_drift <= 1e-6);
    }
    const auto far = integrate_orbit(1e4, 0.0);
    CHECK(std::abs(far.period - pi) <= 1e-6);
    CHECK_THROWS_AS(integrate_orbit(8, 1), ValidationError);
    CHECK_THROWS_AS(integrate_orbit(9, -1), ValidationError);
    CHECK_THROWS_AS(integrate_orbit(9, 1, 1e-16), ValidationError);
}

TEST_CASE("U advances by pi/2 per quarter period") {
    for (double c : {8.5, 10.0, 100.0}) {
        for (int k = 1; k <= 4; ++k) CHECK(std::abs(u_integral(c, k * pi / 2) - k * pi / 2) <= 1e-8);
        const auto oracle = rk4_orbit(c, turning_points(c).x_minus, 4000);
        for (int k = 1; k <= 4; ++k) {
            const auto s = orbit_state(c, k * pi / 2);
            CHECK(s[2] == doctest::Approx(oracle.at_half_periods[k][2]).epsilon(1e-5));
            CHECK(s[0] == doctest::Approx(oracle.at_half_periods[k][0]).epsilon(1e-4).scale(1));
        }
    }
    CHECK_THROWS_AS(u_integral(10, -1), ValidationError);
}

TEST_CASE("isophase warp at the fixed point is the identity") {
    const auto space = SpaceSpec::airy();
    const auto iso = build_isophase(space, 8, 0.4);
    CHECK(iso.period() == pi);
    for (double x : {-7.0, -1.0, 2.0}) {
        const auto p = phase_jet(space, x);
        const auto q = iso.jet(x);
        CHECK(q.phi == doctest::Approx(p.phi).epsilon(1e-14));
        CHECK(q.d1 == doctest::Approx(p.d1).epsilon(1e-14));
        CHECK(q.d2 == doctest::Approx(p.d2).epsilon(1e-14).scale(1e-3));
        CHECK(q.schwarzian == doctest::Approx(p.schwarzian).epsilon(1e-14));
    }
}

TEST_CASE("isophase jet against finite differences and the chain rule") {
    for (const auto& space : {SpaceSpec::paley_wiener(1.3), SpaceSpec::airy(), SpaceSpec::bessel(0.5)}) {
        const auto iso = build_isophase(space, 12, 0.3);
        for (double x : {-3.1, 0.4, 2.7}) {
            const auto q = iso.jet(x);
            const double h = 1e-3 / std::max(1.0, q.d1);
            auto phi = [&](double s) { return iso.jet(s).phi; };
            auto d1 = [&](double s) { return iso.jet(s).d1; };
            auto richardson = [&](auto&& g) {
                auto c = [&](double k) { return (g(x + k) - g(x - k)) / (2 * k); };
                return (4 * c(h / 2) - c(h)) / 3;
            };
            CHECK(q.d1 == doctest::Approx(richardson(phi)).epsilon(1e-7));
            CHECK(q.d2 == doctest::Approx(richardson(d1)).epsilon(1e-6).scale(q.d1));
            CHECK(q.schwarzian == doctest::Approx(schwarzian_of(q.d1, q.d2, q.d3)).epsilon(1e-9).scale(1));
            // psi'' / psi' = y and S psi = 2 - 2 psi'^2 from the orbit.
            const double t = phase_jet(space, x).phi;
            const auto pd = iso.psi_derivatives(t);
            CHECK(iso.schwarzian_psi(t) == doctest::Approx(schwarzian_of(pd[0], pd[1], pd[2])).epsilon(1e-12).scale(1));
        }
    }
}

TEST_CASE("isophase warps preserve the intensity") {
    for (const auto& space : {SpaceSpec::paley_wiener(pi), SpaceSpec::airy(), SpaceSpec::rational(5, 1)}) {
        for (double c : {8.5, 30.0}) {
            const auto iso = build_isophase(space, c, 1.1);
            for (double x = -6; x <= 3; x += 0.37)
                CHECK(std::abs(rho1_from_jet(iso.jet(x)) - rho1_closed(space, x)) <= 1e-6 * rho1_closed(space, x));
        }
    }
    CHECK_THROWS_AS(build_isophase(SpaceSpec::airy(), 7, 0), ValidationError);
}
