#include "debranges/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/numeric/odeint.hpp>

#include "debranges/errors.hpp"
#include "debranges/numerics.hpp"

namespace debranges {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 3>;  // x, y, U
using Stepper = odeint::runge_kutta_dopri5<State>;

void system(const State& s, State& d, double /*t*/) {
    const double e = std::exp(s[0]);
    d[0] = s[1];
    d[1] = 2 - 2 * e * e + 0.5 * s[1] * s[1];
    d[2] = e;
}

State advance(State s, double from, double to, double tol) {
    if (to == from) return s;
    const double dt = std::min(1e-3, to - from);
    odeint::integrate_adaptive(odeint::make_controlled<Stepper>(tol, tol), system, s, from, to, dt);
    return s;
}

void check_c(double c, bool allow_fixed_point) {
    if (!std::isfinite(c) || c < 8 || (!allow_fixed_point && c == 8))
        throw ValidationError("c", allow_fixed_point ? "must satisfy c >= 8" : "must satisfy c > 8");
}

State start_state(double c) { return {turning_points(c).x_minus, 0.0, 0.0}; }

}  // namespace

Derivative ode_rhs(const OrbitState& s) {
    const double e = std::exp(s.x);
    return {s.y, 2 - 2 * e * e + 0.5 * s.y * s.y};
}

double conserved_quantity(double x, double y) { return (y * y + 4 * (1 + std::exp(2 * x))) / std::exp(x); }

TurningPoints turning_points(double c) {
    check_c(c, true);
    // r^2 - (c/4) r + 1 = 0; take the stable forms of both roots.
    const double s = std::sqrt(std::max(0.0, c * c - 64));
    const double r_plus = (c + s) / 8;
    const double r_minus = 8 / (c + s);
    return {std::log(r_minus), std::log(r_plus)};
}

Orbit integrate_orbit(double c, double t_end, double tol) {
    check_c(c, false);
    if (!(tol >= 1e-14)) throw ValidationError("tol", "must be at least 1e-14");
    if (!(t_end >= 0)) throw ValidationError("t_end", "must be non-negative");
    Orbit orbit;
    orbit.c = c;
    orbit.period = std::numeric_limits<double>::quiet_NaN();
    State s = start_state(c);
    orbit.states.push_back({0.0, s[0], s[1]});

    auto dense = odeint::make_dense_output(tol, tol, Stepper());
    dense.initialize(s, 0.0, 1e-3);
    const double t_limit = std::max(t_end, 0.0) + 4 * std::numbers::pi;
    int steps = 0;
    bool have_period = false;
    bool end_recorded = t_end == 0;
    while (!(have_period && end_recorded)) {
        const auto [ta, tb] = dense.do_step(system);
        if (++steps > 10'000'000 || tb - ta < 1e-15 * (1 + tb))
            throw NumericError("integrate_orbit: step size collapse at t = " + std::to_string(ta));
        const State prev = dense.previous_state();
        const State cur = dense.current_state();
        if (!end_recorded) {
            if (tb >= t_end) {
                const State e = advance(prev, ta, t_end, tol);
                orbit.states.push_back({t_end, e[0], e[1]});
                end_recorded = true;
            } else {
                orbit.states.push_back({tb, cur[0], cur[1]});
            }
        }
        if (!have_period && ta > 0 && prev[1] < 0 && cur[1] >= 0) {
            auto y_at = [&](double t) { return advance(prev, ta, t, tol)[1]; };
            orbit.period = cur[1] == 0 ? tb
                                       : numerics::bracketed_secant(y_at, ta, tb, prev[1], cur[1], {1e-14, 200});
            have_period = true;
        }
        if (tb > t_limit && !have_period) throw NumericError("integrate_orbit: no return of y to 0");
    }
    for (const auto& st : orbit.states)
        orbit.max_c_drift = std::max(orbit.max_c_drift, std::abs(conserved_quantity(st.x, st.y) - c) / c);
    return orbit;
}

std::array<double, 3> orbit_state(double c, double t, double tol) {
    check_c(c, true);
    if (c == 8) return {0.0, 0.0, t};
    return advance(start_state(c), 0.0, t, tol);
}

double u_integral(double c, double s, double tol) {
    if (!(s >= 0)) throw ValidationError("s", "must be non-negative");
    return orbit_state(c, s, tol)[2];
}

// ---------------------------------------------------------------------------

namespace {
constexpr int kCheckpoints = 64;
constexpr double kIsophaseTol = 1e-13;
}  // namespace

Isophase::Isophase(SpaceSpec space, double c, double t0)
    : space_(std::move(space)), c_(c), t0_(t0), period_(std::numbers::pi), u_period_(std::numbers::pi) {
    space_.validate();
    check_c(c, true);
    if (c == 8) return;
    period_ = integrate_orbit(c, 0.0, kIsophaseTol).period;
    checkpoint_step_ = period_ / kCheckpoints;
    State s = start_state(c);
    checkpoints_.push_back(s);
    for (int k = 1; k <= kCheckpoints; ++k) {
        s = advance(s, (k - 1) * checkpoint_step_, k * checkpoint_step_, kIsophaseTol);
        checkpoints_.push_back(s);
    }
    u_period_ = checkpoints_.back()[2];
}

std::array<double, 3> Isophase::state_at(double tau) const {
    if (checkpoints_.empty()) return {0.0, 0.0, tau};
    const double m = std::floor(tau / period_);
    const double r = tau - m * period_;
    const int k = std::clamp(static_cast<int>(r / checkpoint_step_), 0, kCheckpoints - 1);
    State s = advance(checkpoints_[k], k * checkpoint_step_, r, kIsophaseTol);
    s[2] += m * u_period_;
    return s;
}

std::array<double, 3> Isophase::psi_derivatives(double t) const {
    const auto s = state_at(t + t0_);
    const double e = std::exp(s[0]), y = s[1];
    return {e, e * y, e * (2 - 2 * e * e + 1.5 * y * y)};
}

double Isophase::schwarzian_psi(double t) const {
    const double e = std::exp(state_at(t + t0_)[0]);
    return 2 - 2 * e * e;
}

PhaseJet Isophase::jet(double x) const {
    const PhaseJet p = phase_jet(space_, x);
    const double t = p.phi;
    const auto s = state_at(t + t0_);
    const double e = std::exp(s[0]), y = s[1];
    const double d1 = e, d2 = e * y, d3 = e * (2 - 2 * e * e + 1.5 * y * y);
    PhaseJet q;
    q.phi = s[2] - state_at(t0_)[2];
    q.d1 = d1 * p.d1;
    q.d2 = d2 * p.d1 * p.d1 + d1 * p.d2;
    q.d3 = d3 * p.d1 * p.d1 * p.d1 + 3 * d2 * p.d1 * p.d2 + d1 * p.d3;
    // S(psi o phi) = (S psi o phi) phi'^2 + S phi
    q.schwarzian = (2 - 2 * e * e) * p.d1 * p.d1 + p.schwarzian;
    return q;
}

Isophase build_isophase(const SpaceSpec& space, double c, double t0) { return Isophase(space, c, t0); }

}  // namespace debranges
