#include "debranges/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "debranges/errors.hpp"

namespace debranges::numerics {

namespace {

// Kronrod 15-point nodes/weights and embedded Gauss 7-point weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = 2.220446049250313e-16;

struct Segment {
    double lo, hi, value, error;
    int depth;
};

Segment gk15(const std::function<double(double)>& f, double lo, double hi, int depth) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    resk *= half;
    resg *= half;
    return {lo, hi, resk, std::abs(resk - resg), depth};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, double abs_tol,
                     double rel_tol, int max_depth) {
    if (lo == hi) return {};
    if (!(std::isfinite(lo) && std::isfinite(hi)))
        throw NumericError("integrate: infinite bounds require integrate_power_tail");
    double sign = 1;
    if (hi < lo) {
        std::swap(lo, hi);
        sign = -1;
    }
    std::vector<Segment> done;
    std::vector<Segment> work{gk15(f, lo, hi, 0)};
    std::optional<Segment> worst;
    // Bounds the work when noise in f sits above the requested tolerance.
    constexpr long kMaxSplits = 200000;
    long splits = 0;
    const double length = hi - lo;
    while (!work.empty()) {
        Segment s = work.back();
        work.pop_back();
        const double share = (s.hi - s.lo) / length;
        const double tol = std::max(abs_tol * share, rel_tol * std::abs(s.value));
        // Segments that cannot be refined further (depth or floating-point
        // resolution) are kept; the global error check below decides.
        const bool exhausted = s.depth >= max_depth || ++splits > kMaxSplits ||
                               s.hi - s.lo <= 64 * std::numeric_limits<double>::epsilon() * std::max(std::abs(s.lo), std::abs(s.hi));
        if (s.error <= tol || !std::isfinite(s.value) || exhausted) {
            if (exhausted && s.error > tol && (!worst || s.error > worst->error)) worst = s;
            done.push_back(s);
            continue;
        }
        const double mid = 0.5 * (s.lo + s.hi);
        work.push_back(gk15(f, s.lo, mid, s.depth + 1));
        work.push_back(gk15(f, mid, s.hi, s.depth + 1));
    }
    QuadResult r;
    for (const auto& s : done) {
        r.value += s.value;
        r.abs_error += s.error;
    }
    if (!std::isfinite(r.value)) throw NumericError("integrate: non-finite integrand");
    if (worst && r.abs_error > 1e3 * std::max(abs_tol, rel_tol * std::abs(r.value))) {
        std::ostringstream msg;
        msg << "integrate: no convergence on [" << worst->lo << ", " << worst->hi << "], error estimate "
            << worst->error << " (total " << r.abs_error << ")";
        throw NumericError(msg.str());
    }
    r.value *= sign;
    return r;
}

QuadResult integrate_power_tail(const std::function<double(double)>& f, double lo, double decay,
                                double abs_tol, double rel_tol) {
    if (!(lo > 0) || !(decay > 1)) throw NumericError("integrate_power_tail: need lo > 0, decay > 1");
    const double beta = 1.0 / (decay - 1.0);
    // x = lo t^-beta, dx = beta lo t^(-beta-1) dt, t in (0, 1].
    auto g = [&](double t) {
        if (t <= 0) return 0.0;
        const double x = lo * std::pow(t, -beta);
        if (!std::isfinite(x)) return 0.0;
        return f(x) * beta * lo * std::pow(t, -beta - 1.0);
    };
    return integrate(g, 0.0, 1.0, abs_tol, rel_tol);
}

double tail_sum(const std::function<double(double)>& f, long long k0, double decay,
                long long direct_terms) {
    double direct = 0;
    // Sum smallest terms first.
    for (long long k = k0 + direct_terms - 1; k >= k0; --k) direct += f(static_cast<double>(k));
    const double big_k = static_cast<double>(k0 + direct_terms);
    const double h = 1e-2 * big_k;
    const double fp = (f(big_k - 2 * h) - 8 * f(big_k - h) + 8 * f(big_k + h) - f(big_k + 2 * h)) / (12 * h);
    const double f3 = (f(big_k + 2 * h) - 2 * f(big_k + h) + 2 * f(big_k - h) - f(big_k - 2 * h)) / (2 * h * h * h);
    const auto integral = integrate_power_tail(f, big_k, decay);
    return direct + integral.value + 0.5 * f(big_k) - fp / 12.0 + f3 / 720.0;
}

double safeguarded_newton(const std::function<std::pair<double, double>(double)>& fdf, double lo,
                          double hi, RootOptions opt) {
    auto [flo, dlo] = fdf(lo);
    auto [fhi, dhi] = fdf(hi);
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0)) throw NumericError("safeguarded_newton: interval does not bracket a root");
    // Orient so that f(a) < 0 < f(b).
    double a = lo, b = hi;
    if (flo > 0) std::swap(a, b);
    double x = 0.5 * (lo + hi);
    double dx_old = std::abs(hi - lo);
    double dx = dx_old;
    auto [fx, dfx] = fdf(x);
    for (int it = 0; it < opt.max_iter; ++it) {
        if (fx == 0) return x;
        const bool newton_leaves = ((x - b) * dfx - fx) * ((x - a) * dfx - fx) > 0;
        const bool too_slow = std::abs(2 * fx) > std::abs(dx_old * dfx);
        dx_old = dx;
        if (newton_leaves || too_slow || dfx == 0) {
            dx = 0.5 * (b - a);
            x = a + dx;
        } else {
            dx = fx / dfx;
            x -= dx;
        }
        const double tol = opt.x_tol + 4 * kEps * std::abs(x);
        if (std::abs(dx) < tol) return x;
        std::tie(fx, dfx) = fdf(x);
        if (fx < 0)
            a = x;
        else
            b = x;
        if (std::abs(b - a) < tol) return 0.5 * (a + b);
    }
    throw NumericError("safeguarded_newton: iteration limit reached");
}

double bracketed_secant(const std::function<double(double)>& f, double lo, double hi, double flo,
                        double fhi, RootOptions opt) {
    if (flo == 0) return lo;
    if (fhi == 0) return hi;
    if ((flo > 0) == (fhi > 0)) throw NumericError("bracketed_secant: interval does not bracket a root");
    double a = lo, b = hi, fa = flo, fb = fhi;
    int side = 0;
    for (int it = 0; it < opt.max_iter; ++it) {
        if (std::abs(b - a) <= opt.x_tol + 4 * kEps * std::max(std::abs(a), std::abs(b))) break;
        double x = (a * fb - b * fa) / (fb - fa);
        // Fall back to bisection when the secant point hugs an endpoint.
        const double w = b - a;
        if (!(x > a + 0.01 * w && x < b - 0.01 * w) || it % 4 == 3) x = 0.5 * (a + b);
        const double fx = f(x);
        if (fx == 0) return x;
        if ((fx > 0) == (fa > 0)) {
            a = x;
            fa = fx;
            if (side == -1) fb *= 0.5;
            side = -1;
        } else {
            b = x;
            fb = fx;
            if (side == 1) fa *= 0.5;
            side = 1;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace debranges::numerics
