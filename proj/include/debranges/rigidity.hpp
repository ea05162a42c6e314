#pragma once

// The isochronous system x' = y, y' = 2 - 2 e^{2x} + y^2/2 for x = log psi',
// its conserved quantity, and phase warps psi built from its orbits.

#include <array>
#include <vector>

#include "debranges/spaces.hpp"

namespace debranges {

struct OrbitState {
    double t = 0;
    double x = 0;
    double y = 0;
};

struct Derivative {
    double dx = 0;
    double dy = 0;
};

Derivative ode_rhs(const OrbitState& s);

/// C(x, y) = (y^2 + 4 (1 + e^{2x})) / e^x.
double conserved_quantity(double x, double y);

struct TurningPoints {
    double x_minus = 0;
    double x_plus = 0;
};
/// Roots of C e^x - 4 (1 + e^{2x}) = 0. Requires c >= 8.
TurningPoints turning_points(double c);

struct Orbit {
    double c = 0;
    std::vector<OrbitState> states;  ///< accepted integrator steps on [0, t_end]
    double period = 0;               ///< second return of y to 0 (from below)
    double max_c_drift = 0;          ///< max |C - c| / c over the recorded states
};

/// Integrates from (x_minus(c), 0). The period is always located, even if it
/// is beyond t_end. Requires c > 8 and tol >= 1e-14.
Orbit integrate_orbit(double c, double t_end, double tol = 1e-12);

/// U(s) = int_0^s e^{x(t)} dt along the orbit started at (x_minus(c), 0).
double u_integral(double c, double s, double tol = 1e-13);

/// State (x, y, U) at time t along the orbit.
std::array<double, 3> orbit_state(double c, double t, double tol = 1e-13);

/// phi_2 = psi o phi_1 with psi(t) = int_0^t e^{x(tau + t0)} dtau.
class Isophase {
public:
    Isophase(SpaceSpec space, double c, double t0);

    /// Jet of phi_2 at x (phi is psi(phi_1(x))).
    PhaseJet jet(double x) const;

    /// psi', psi'', psi''' at phase parameter t.
    std::array<double, 3> psi_derivatives(double t) const;
    /// Schwarzian of psi at t, from the orbit state: 2 - 2 e^{2x}.
    double schwarzian_psi(double t) const;

    double c() const { return c_; }
    double period() const { return period_; }

private:
    std::array<double, 3> state_at(double tau) const;  // (x, y, U) at orbit time tau

    SpaceSpec space_;
    double c_;
    double t0_;
    double period_;
    double u_period_;
    std::vector<std::array<double, 3>> checkpoints_;
    double checkpoint_step_ = 0;
};

Isophase build_isophase(const SpaceSpec& space, double c, double t0);

}  // namespace debranges
