#pragma once

// Airy and Bessel functions on the real line, their zeros, and the entire
// Bessel combinations A_nu(z) = z^((1-nu)/2) J'_nu(sqrt z),
// B_nu(z) = z^(-nu/2) J_nu(sqrt z).

#include <array>
#include <vector>

namespace debranges::specfun {

struct AiryPair {
    double ai = 0;
    double ai_prime = 0;
    /// Set when x is so large that Ai(x) is below the double range; both
    /// fields are then exactly 0.
    bool underflow = false;
};

/// Largest x for which Ai(x) is representable as a normal double.
inline constexpr double kAiryUnderflowX = 104.0;

AiryPair airy(double x);

/// k-th zero of Ai, 0 > a_1 > a_2 > ...
double airy_zero(int k);
/// k-th zero of Ai', 0 > b_1 > b_2 > ...
double airy_prime_zero(int k);
/// Leading terms of the large-k expansion of a_k (real k allowed).
double airy_zero_asymptotic(double k);

struct BesselJ {
    double value = 0;
    double derivative = 0;
};

/// J_nu(x) and J'_nu(x) for nu >= -1/2, x > 0. Throws ValidationError for nu < -1/2.
BesselJ bessel_j(double nu, double x);

struct BesselEntirePair {
    double b = 0;  ///< B_nu(z)
    double a = 0;  ///< A_nu(z)
    double nu = 0;
};

/// Values of the entire pair at any real z. Power series for z <= 100,
/// direct Bessel evaluation beyond.
BesselEntirePair bessel_entire(double nu, double z);

/// B_nu^(m)(z) for m = 0..4 (long double). Same regime split as bessel_entire.
std::array<long double, 5> bessel_entire_derivatives(double nu, double z);

/// Power-series branch only, exposed for the continuity checks.
std::array<long double, 5> bessel_entire_series(double nu, double z);

inline constexpr double kBesselSeriesLimit = 100.0;

/// k-th positive zero of J_nu.
double bessel_zero(double nu, int k);
/// First `count` positive zeros of J_nu, ascending.
std::vector<double> bessel_zeros(double nu, int count);
/// k-th positive zero of J'_nu (for nu > 0 the origin is not counted).
double bessel_prime_zero(double nu, int k);
/// McMahon expansion of j_{nu,k} (real k allowed).
double bessel_zero_asymptotic(double nu, double k);

}  // namespace debranges::specfun
