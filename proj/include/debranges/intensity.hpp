#pragma once

// First intensity rho_1 of the real zeros of a de Branges GAF, by several
// independent routes, plus the series identity behind it.

#include <optional>
#include <string>
#include <vector>

#include "debranges/gaf.hpp"
#include "debranges/spaces.hpp"

namespace debranges {

enum class Method { ClosedForm, EdelmanKostlan, RiceCovariance, AirySpecial, RationalSpecial, MonteCarlo };

std::string to_string(Method m);
/// Accepts the long names and the CLI short forms closed|ek|rice|mc|airy|rational.
Method method_from_string(const std::string& name);

struct IntensityCurve {
    SpaceSpec space;
    std::vector<double> xs;
    std::vector<double> values;
    Method method = Method::ClosedForm;
    std::optional<std::vector<double>> ci_halfwidth;
};

/// (1/pi) sqrt(phi'^2/3 + S phi/6) from a jet. Radicands in [-1e-12, 0) are
/// clamped; anything more negative throws NumericError.
double rho1_from_jet(const PhaseJet& jet);

double rho1_closed(const SpaceSpec& space, double x);

/// Covariance of (F(x), F'(x)) / |E(x)|^2 in the phase frame: a = phi'/pi,
/// b = c = phi''/(2 pi), d = (2 phi'^3 + phi''')/(6 pi).
struct RiceCovariance {
    double a = 0;
    double b = 0;
    double d = 0;
};
RiceCovariance rice_covariance(const SpaceSpec& space, double x);
double rho1_rice_covariance(const SpaceSpec& space, double x);

/// Cross-stencil mixed partial of log K on the diagonal with Ridders'
/// extrapolation from the starting step h. h <= 0 picks half the local length
/// min(1/sqrt(phi'^2 + |S|), 1 + |x|).
double rho1_ek_fd(const SpaceSpec& space, double x, double h = 0);

/// Airy-specific closed formula in terms of Ai and Ai'.
double rho1_airy_special(double x);
/// (1/pi) sqrt((n^2 - 1)/3) a / (x^2 + a^2).
double rho1_rational_special(const SpaceSpec& space, double x);

double rho1(const SpaceSpec& space, double x, Method method);
IntensityCurve intensity_curve(const SpaceSpec& space, const std::vector<double>& xs, Method method);

/// Truncated sum_{n != k} phi'(w_k) / ((w_k - w_n)^2 phi'(w_n)) over basis
/// indices |n - k| <= n_terms, and the exact value phi'^2/3 + S phi/6 at w_k.
struct BaselResult {
    double partial_sum = 0;
    double target = 0;
    int terms_used = 0;
};
BaselResult basel_series(const SpaceSpec& space, const BasisPoints& basis, long long k, int n_terms);

/// rho_1(w_k)^2 from the dual l^2 sum over the other basis points.
double bergman_rho1_squared(const SpaceSpec& space, const BasisPoints& basis, long long k, int n_terms);

/// Integral of rho_1 over an interval; ends may be infinite.
struct CountIntegral {
    double value = 0;  ///< +inf when divergent
    double abs_error = 0;
    bool divergent = false;
    double tail_slope = 0;  ///< fitted log-log slope of rho_1 on an infinite end (last one examined)
};
CountIntegral expected_count(const SpaceSpec& space, Interval interval);

/// (x^2 S phi(x), predicted limit) for phi' ~ C / |x|^alpha_exp.
/// The predicted limit is alpha (2 - alpha) / 2.
struct SchwarzianCheck {
    double lhs = 0;
    double rhs = 0;
};
SchwarzianCheck schwarzian_asymptotic_check(double alpha_exp, const SpaceSpec& space, double x);

}  // namespace debranges
