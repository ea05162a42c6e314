#pragma once

#include <functional>
#include <utility>

namespace debranges::numerics {

struct QuadResult {
    double value = 0;
    double abs_error = 0;
};

/// Adaptive Gauss-Kronrod (7-15) on a finite interval. Segments that cannot
/// be split further (depth, width or total split budget) are kept as they are;
/// NumericError is thrown only when the summed error estimate exceeds the
/// tolerance by more than 1e3, naming the worst such segment.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     double abs_tol = 1e-11, double rel_tol = 1e-13, int max_depth = 40);

/// Integral over [lo, +inf) of a function decaying like x^(-decay) with
/// decay > 1. Uses the substitution x = lo * t^(-1/(decay-1)) which makes the
/// transformed integrand bounded at t = 0. Requires lo > 0.
QuadResult integrate_power_tail(const std::function<double(double)>& f, double lo, double decay,
                                double abs_tol = 1e-14, double rel_tol = 1e-12);

/// sum_{k >= k0} f(k) for smooth f with f(k) ~ k^(-decay), decay > 1.
/// Direct summation over [k0, k0 + direct_terms) then Euler-Maclaurin for
/// the rest, with endpoint derivatives by central differences.
double tail_sum(const std::function<double(double)>& f, long long k0, double decay,
                long long direct_terms = 2000);

struct RootOptions {
    double x_tol = 1e-13;
    int max_iter = 200;
};

/// Newton iteration safeguarded by bisection on a sign-changing bracket.
/// `fdf` returns (f, f'). Throws NumericError if [lo, hi] does not bracket.
double safeguarded_newton(const std::function<std::pair<double, double>(double)>& fdf, double lo,
                          double hi, RootOptions opt = {});

/// Derivative-free hybrid bisection/secant (Illinois-type) refinement of a
/// sign-changing bracket.
double bracketed_secant(const std::function<double(double)>& f, double lo, double hi,
                        double flo, double fhi, RootOptions opt = {});

}  // namespace debranges::numerics
