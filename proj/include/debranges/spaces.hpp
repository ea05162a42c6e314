#pragma once

// de Branges spaces H(E) on the real line: phase function, its jet and
// Schwarzian, reproducing kernel, and orthonormal bases of normalized kernels.
//
// Conventions. E(x) = A(x) - i B(x) = |E(x)| e^{-i phi(x)} with phi increasing.
// K(x, y) = (B(x) A(y) - A(x) B(y)) / (pi (x - y)), so K(x, x) = phi'(x) |E(x)|^2 / pi.
// phi is anchored per family:
//   Paley-Wiener  E = e^{-iax}          phi(0) = 0
//   Airy          E = Ai' - i Ai         phi(a_1) = 0   (a_1 first zero of Ai)
//   Bessel        E = A_nu - i B_nu      phi(j_{nu,1}^2) = 0
//   Rational      E = (x + ia)^n         phi(0) = n pi / 2, range (0, n pi)

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "debranges/jet.hpp"

namespace debranges {

enum class Family { PaleyWiener, Airy, Bessel, Rational };

std::string to_string(Family f);
Family family_from_string(const std::string& name);

/// Which de Branges space to work in. Only the parameters of the chosen
/// family are set; validate() rejects anything else.
struct SpaceSpec {
    Family family = Family::PaleyWiener;
    std::optional<double> a;   ///< bandwidth (Paley-Wiener) or pole height (Rational)
    std::optional<double> nu;  ///< Bessel order
    std::optional<int> n;      ///< Rational exponent

    static SpaceSpec paley_wiener(double a);
    static SpaceSpec airy();
    static SpaceSpec bessel(double nu);
    static SpaceSpec rational(int n, double a);

    /// Throws ValidationError naming the offending field.
    void validate() const;

    bool operator==(const SpaceSpec&) const = default;
};

std::string describe(const SpaceSpec& space);

struct PhaseJet {
    double phi = 0;  ///< unwrapped phase; NaN when only derivatives were requested
    double d1 = 0;   ///< phi'
    double d2 = 0;   ///< phi''
    double d3 = 0;   ///< phi'''
    double schwarzian = 0;
};

/// Schwarzian from jet fields: d3/d1 - 3/2 (d2/d1)^2.
inline double schwarzian_of(double d1, double d2, double d3) {
    const double r = d2 / d1;
    return d3 / d1 - 1.5 * r * r;
}

/// phi', phi'', phi''' and the Schwarzian at x (phi left as NaN).
PhaseJet phase_derivatives(const SpaceSpec& space, double x);
/// Full jet including the unwrapped phase value.
PhaseJet phase_jet(const SpaceSpec& space, double x);
/// Unwrapped phase phi(x).
double phase(const SpaceSpec& space, double x);

/// cos phi(x), sin phi(x) for the anchored phase, and |E(x)|.
struct Polar {
    double cos_phi = 1;
    double sin_phi = 0;
    double abs_e = 1;
    bool abs_e_underflow = false;
};
Polar polar(const SpaceSpec& space, double x);

/// Taylor jets (orders 0..3) of A and B at x.
struct ABJet {
    Jet<long double, 4> a;
    Jet<long double, 4> b;
};
ABJet ab_jet(const SpaceSpec& space, double x);

/// Reproducing kernel K(x, y).
double kernel(const SpaceSpec& space, double x, double y);
/// K(x, y) / (|E(x)| |E(y)|) = sin(phi(x) - phi(y)) / (pi (x - y)); finite for all real x, y.
double model_kernel(const SpaceSpec& space, double x, double y);
/// k_y(x) = K(x, y) / sqrt(K(y, y)).
double normalized_kernel(const SpaceSpec& space, double y, double x);

/// phi points of a reproducing-kernel basis: phi(points[i]) = alpha + pi (index_offset + i).
struct BasisPoints {
    double alpha = 0;
    std::vector<double> points;
    long long index_offset = 0;
    bool exhaustive = false;

    long long index(std::size_t i) const { return index_offset + static_cast<long long>(i); }
};

/// All omega_n in [x_lo, x_hi] with phi(omega_n) = alpha + pi n.
/// Airy/Bessel with alpha = 0 return the zero-based bases (Ai zeros, squared
/// J_nu zeros); Paley-Wiener and Rational use their closed forms; anything else
/// is found by bracketing on the unwrapped phase.
/// Rational with alpha = 0 is rejected: only n - 1 points exist and the
/// kernels do not span the space.
BasisPoints basis_points(const SpaceSpec& space, double alpha, double x_lo, double x_hi);

/// Generic route: march in x tracking the unwrapped phase, then refine each
/// level crossing with bisection-safeguarded Newton.
BasisPoints basis_points_by_phase(const SpaceSpec& space, double alpha, double x_lo, double x_hi);

/// Schwarzian from 5-point central differences of phi' with one Richardson step.
double schwarzian_fd(const SpaceSpec& space, double x, double h);

/// Near-diagonal switch used by the kernels: |x - y| < kNearDiagonal (1 + |x|).
inline constexpr double kNearDiagonal = 1e-4;

}  // namespace debranges
