#include "debranges/gaf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "debranges/errors.hpp"
#include "debranges/intensity.hpp"
#include "debranges/numerics.hpp"
#include "debranges/specfun.hpp"

namespace debranges {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

double acklam(double p) {
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                   1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                   6.680131188771972e+01,  -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                   -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                   3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    if (p < p_low) {
        const double q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > 1 - p_low) {
        const double q = std::sqrt(-2 * std::log1p(-p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

double standard_normal(std::uint64_t seed, std::uint64_t stream, std::int64_t index) {
    const std::uint64_t h =
        splitmix64(splitmix64(seed ^ splitmix64(stream)) ^ static_cast<std::uint64_t>(index));
    const double u = (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
    double x = acklam(u);
    // One Halley step against the exact CDF.
    const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - u;
    const double v = e * std::sqrt(2 * kPi) * std::exp(0.5 * x * x);
    x -= v / (1 + 0.5 * x * v);
    return x;
}

// ---------------------------------------------------------------------------
// Far-field power sums  P_p = sum_far 1 / (pi phi'(w) (w - c)^p)

namespace {

struct PowerSums {
    double center = 0;
    int p_max = 0;
    std::vector<double> p;  // index = power

    PowerSums(double c, int pm) : center(c), p_max(pm), p(pm + 1, 0.0) {}

    void add(double omega, double wt) {
        const double inv = 1.0 / (omega - center);
        double term = wt * inv * inv;
        for (int k = 2; k <= p_max; ++k) {
            p[k] += term;
            term *= inv;
        }
    }

    // sum_{j >= 0} wt(j) (omega(j) - c)^(-k) for every k, where omega and wt
    // are smooth in j and the terms decay like j^(-growth * k + wt_growth).
    template <typename Omega, typename Weight>
    void add_tail(const Omega& omega, const Weight& wt, double growth, double wt_growth) {
        for (int k = 2; k <= p_max; ++k) {
            const double decay = growth * k - wt_growth;
            auto f = [&](double j) { return wt(j) * std::pow(omega(j) - center, -k); };
            // Shift by one so the sum starts at a positive index.
            p[k] += numerics::tail_sum([&](double j) { return f(j - 1.0); }, 1, decay);
        }
    }
};

constexpr int kDirectExact = 100;

int airy_first_index_below(double x) {
    // smallest k with a_k < x
    if (x > specfun::airy_zero(1)) return 1;
    const double zeta = 2.0 / 3.0 * std::pow(std::abs(x), 1.5);
    int k = std::max(1, static_cast<int>(std::floor((zeta * 8.0 / (3.0 * kPi) + 1.0) / 4.0)) - 2);
    while (specfun::airy_zero(k) >= x) ++k;
    while (k > 1 && specfun::airy_zero(k - 1) < x) --k;
    return k;
}

int bessel_first_index_above(double nu, double x) {
    // smallest k with j_k^2 > x
    if (x < 0) return 1;
    int k = std::max(1, static_cast<int>(std::floor(std::sqrt(x) / kPi - nu / 2 + 0.25)) - 2);
    auto sq = [&](int i) {
        const double j = specfun::bessel_zero(nu, i);
        return j * j;
    };
    while (sq(k) <= x) ++k;
    while (k > 1 && sq(k - 1) > x) --k;
    return k;
}

struct Layout {
    BasisPoints explicit_points;
    PowerSums sums;
};

Layout layout_paley_wiener(const SpaceSpec& space, double alpha, double c, double radius, int p_max) {
    const double a = *space.a;
    Layout out{basis_points(space, alpha, c - radius, c + radius), PowerSums(c, p_max)};
    const auto n_lo = static_cast<long long>(std::ceil((a * (c - radius) - alpha) / kPi));
    const auto n_hi = static_cast<long long>(std::floor((a * (c + radius) - alpha) / kPi));
    const long long first = out.explicit_points.points.empty() ? n_lo : out.explicit_points.index_offset;
    const long long last = out.explicit_points.points.empty()
                               ? n_hi
                               : first + static_cast<long long>(out.explicit_points.points.size()) - 1;
    const double wt = 1.0 / (kPi * a);
    out.sums.add_tail([&](double j) { return (alpha + kPi * (static_cast<double>(last + 1) + j)) / a; },
                      [&](double) { return wt; }, 1.0, 0.0);
    out.sums.add_tail([&](double j) { return (alpha + kPi * (static_cast<double>(first - 1) - j)) / a; },
                      [&](double) { return wt; }, 1.0, 0.0);
    return out;
}

Layout layout_airy(double c, double radius, int p_max) {
    const SpaceSpec space = SpaceSpec::airy();
    Layout out{basis_points(space, 0.0, c - radius, c + radius), PowerSums(c, p_max)};
    // Points are a_k with phi'(a_k) = 1, so every weight is 1/pi.
    constexpr double wt = 1.0 / kPi;
    int k_left;  // first k of the left tail
    int k_right_end;  // right-hand finite set is k = 1 .. k_right_end
    if (out.explicit_points.points.empty()) {
        k_left = airy_first_index_below(c - radius);
        k_right_end = k_left - 1;
    } else {
        const long long n_first = out.explicit_points.index_offset;  // = 1 - k_max
        k_left = static_cast<int>(1 - n_first) + 1;
        const long long n_last = n_first + static_cast<long long>(out.explicit_points.points.size()) - 1;
        k_right_end = static_cast<int>(1 - n_last) - 1;
    }
    for (int k = 1; k <= k_right_end; ++k) out.sums.add(specfun::airy_zero(k), wt);
    for (int k = k_left; k < k_left + kDirectExact; ++k) out.sums.add(specfun::airy_zero(k), wt);
    const double k0 = k_left + kDirectExact;
    out.sums.add_tail([&](double j) { return specfun::airy_zero_asymptotic(k0 + j); },
                      [](double) { return wt; }, 2.0 / 3.0, 0.0);
    return out;
}

Layout layout_bessel(double nu, double c, double radius, int p_max) {
    const SpaceSpec space = SpaceSpec::bessel(nu);
    Layout out{basis_points(space, 0.0, c - radius, c + radius), PowerSums(c, p_max)};
    // Points are j_k^2 with phi'(j_k^2) = 1 / (2 j_k^2).
    auto wt = [](double j) { return 2.0 * j * j / kPi; };
    int k_left_end;  // left finite set k = 1 .. k_left_end
    int k_right;     // first k of the right tail
    if (out.explicit_points.points.empty()) {
        k_right = bessel_first_index_above(nu, c + radius);
        k_left_end = k_right - 1;
    } else {
        const long long k_first = out.explicit_points.index_offset + 1;
        k_left_end = static_cast<int>(k_first) - 1;
        k_right = static_cast<int>(k_first + static_cast<long long>(out.explicit_points.points.size()));
    }
    for (int k = 1; k <= k_left_end; ++k) {
        const double j = specfun::bessel_zero(nu, k);
        out.sums.add(j * j, wt(j));
    }
    const auto zeros = specfun::bessel_zeros(nu, k_right + kDirectExact - 1);
    for (int k = k_right; k < k_right + kDirectExact; ++k) {
        const double j = zeros[k - 1];
        out.sums.add(j * j, wt(j));
    }
    const double k0 = k_right + kDirectExact;
    out.sums.add_tail(
        [&](double i) {
            const double j = specfun::bessel_zero_asymptotic(nu, k0 + i);
            return j * j;
        },
        [&](double i) { return wt(specfun::bessel_zero_asymptotic(nu, k0 + i)); }, 2.0, 2.0);
    return out;
}

void fill_point_data(GafModel& m) {
    const std::size_t n = m.basis.points.size();
    m.weight.resize(n);
    m.jets.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const PhaseJet j = phase_derivatives(m.space, m.basis.points[i]);
        m.jets[i] = j;
        const double sign = (m.basis.index(i) % 2 == 0) ? 1.0 : -1.0;
        m.weight[i] = sign / std::sqrt(kPi * j.d1);
    }
}

void fill_far_field(GafModel& m, const PowerSums& sums, int order) {
    const int terms = order + 1;
    bool any = false;
    for (double v : sums.p) any = any || v != 0.0;
    if (!any) {
        m.far_terms = 0;
        return;
    }
    Eigen::MatrixXd cov(terms, terms);
    for (int i = 0; i < terms; ++i)
        for (int j = 0; j < terms; ++j) cov(i, j) = std::pow(m.half_width, i + j) * sums.p[i + j + 2];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) throw NumericError("far-field covariance eigendecomposition failed");
    Eigen::VectorXd root = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    const Eigen::MatrixXd map = eig.eigenvectors() * root.asDiagonal();
    const Eigen::MatrixXd clamped = map * map.transpose();
    m.far_terms = terms;
    m.far_map.resize(terms * terms);
    m.far_cov.resize(terms * terms);
    for (int i = 0; i < terms; ++i)
        for (int j = 0; j < terms; ++j) {
            m.far_map[i * terms + j] = map(i, j);
            m.far_cov[i * terms + j] = clamped(i, j);
        }
}

// Index of the basis point nearest to x when it is within the near-pole
// threshold, else npos.
std::size_t near_point(const GafModel& m, double x) {
    const auto& pts = m.basis.points;
    if (pts.empty()) return std::string::npos;
    const auto it = std::lower_bound(pts.begin(), pts.end(), x);
    std::size_t best = std::string::npos;
    double best_dist = kInf;
    for (auto cand : {it, it == pts.begin() ? it : it - 1}) {
        if (cand == pts.end()) continue;
        const double d = std::abs(x - *cand);
        if (d < best_dist) {
            best_dist = d;
            best = static_cast<std::size_t>(cand - pts.begin());
        }
    }
    if (best_dist * m.jets[best].d1 < kNearDiagonal) return best;
    return std::string::npos;
}

// sin(phi(x) - phi(w)) / (x - w) from the jet at w.
double near_ratio(const PhaseJet& j, double h) {
    if (h == 0) return j.d1;
    const double dphi = h * (j.d1 + h * (j.d2 / 2 + h * j.d3 / 6));
    return std::sin(dphi) / h;
}

double sin_shift(const GafModel& m, double x) {
    const Polar p = polar(m.space, x);
    return p.sin_phi * m.cos_alpha - p.cos_phi * m.sin_alpha;
}

}  // namespace

std::shared_ptr<const GafModel> build_model(const SpaceSpec& space, double alpha, Interval interval,
                                            const SampleOptions& opt) {
    space.validate();
    if (!(alpha >= 0 && alpha < kPi)) throw ValidationError("alpha", "must lie in [0, pi)");
    if (!(interval.lo < interval.hi)) throw ValidationError("interval", "empty interval");
    auto m = std::make_shared<GafModel>();
    m->space = space;
    m->interval = interval;
    m->cos_alpha = std::cos(alpha);
    m->sin_alpha = std::sin(alpha);

    if (space.family == Family::Rational) {
        m->basis = basis_points(space, alpha, -kInf, kInf);
        m->window_pad = kInf;
        fill_point_data(*m);
        return m;
    }
    if (!std::isfinite(interval.lo) || !std::isfinite(interval.hi))
        throw ValidationError("interval", "sampling needs a finite interval for " + to_string(space.family));
    if ((space.family == Family::Airy || space.family == Family::Bessel) && alpha != 0.0)
        throw ValidationError("alpha",
                              "sampling uses the zero-based basis (alpha = 0) for " + to_string(space.family));

    const double c = 0.5 * (interval.lo + interval.hi);
    const double h = 0.5 * (interval.hi - interval.lo);
    m->center = c;
    m->half_width = h;
    const int p_max = 2 * opt.far_order + 2;
    double radius = 4 * h;
    for (int attempt = 0; attempt <= opt.max_enlargements; ++attempt, radius *= 2) {
        Layout layout = [&] {
            switch (space.family) {
                case Family::PaleyWiener: return layout_paley_wiener(space, alpha, c, radius, p_max);
                case Family::Airy: return layout_airy(c, radius, p_max);
                default: return layout_bessel(*space.nu, c, radius, p_max);
            }
        }();
        if (layout.explicit_points.points.size() > opt.max_points)
            throw ValidationError("interval", "basis size limit exceeded before the variance deficit was met");
        m->basis = std::move(layout.explicit_points);
        m->window_pad = radius - h;
        fill_point_data(*m);
        fill_far_field(*m, layout.sums, opt.far_order);
        double worst = 0;
        for (int i = 0; i < opt.deficit_grid; ++i) {
            const double x = interval.lo + (interval.hi - interval.lo) * i / (opt.deficit_grid - 1);
            worst = std::max(worst, std::abs(variance_deficit(*m, x)));
        }
        m->max_deficit = worst;
        if (worst <= opt.deficit_tol) return m;
    }
    throw NumericError("variance deficit " + std::to_string(m->max_deficit) + " above tolerance on [" +
                       std::to_string(interval.lo) + ", " + std::to_string(interval.hi) + "]");
}

GafSample draw(std::shared_ptr<const GafModel> model, std::uint64_t seed) {
    GafSample s;
    s.seed = seed;
    const std::size_t n = model->basis.points.size();
    s.coeffs.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.coeffs[i] = standard_normal(seed, 0, model->basis.index(i));
    const int t = model->far_terms;
    if (t > 0) {
        std::vector<double> g(t);
        for (int j = 0; j < t; ++j) g[j] = standard_normal(seed, 1, j);
        s.far_coeffs.assign(t, 0.0);
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j) s.far_coeffs[i] += model->far_map[i * t + j] * g[j];
    }
    s.model = std::move(model);
    return s;
}

GafSample sample(const SpaceSpec& space, double alpha, Interval interval, std::uint64_t seed,
                 const SampleOptions& opt) {
    return draw(build_model(space, alpha, interval, opt), seed);
}

double eval(const GafSample& s, double x) {
    const GafModel& m = *s.model;
    const std::size_t near = near_point(m, x);
    const double sx = sin_shift(m, x);
    double sum = 0;
    const auto& pts = m.basis.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == near) continue;
        sum += s.coeffs[i] * m.weight[i] / (x - pts[i]);
    }
    if (m.far_terms > 0 && !s.far_coeffs.empty()) {
        const double u = (x - m.center) / m.half_width;
        double g = 0;
        for (int j = m.far_terms - 1; j >= 0; --j) g = g * u + s.far_coeffs[j];
        sum += g;
    }
    double value = sx * sum;
    if (near != std::string::npos) {
        const PhaseJet& j = m.jets[near];
        value += s.coeffs[near] / std::sqrt(kPi * j.d1) * near_ratio(j, x - pts[near]);
    }
    return value;
}

double model_variance(const GafModel& m, double x) {
    const std::size_t near = near_point(m, x);
    const double sx = sin_shift(m, x);
    double sum = 0;
    const auto& pts = m.basis.points;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i == near) continue;
        const double t = m.weight[i] / (x - pts[i]);
        sum += t * t;
    }
    if (m.far_terms > 0) {
        const int t = m.far_terms;
        const double u = (x - m.center) / m.half_width;
        std::vector<double> up(t);
        double p = 1;
        for (int j = 0; j < t; ++j, p *= u) up[j] = p;
        double q = 0;
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < t; ++j) q += up[i] * m.far_cov[i * t + j] * up[j];
        sum += q;
    }
    double var = sx * sx * sum;
    if (near != std::string::npos) {
        const PhaseJet& j = m.jets[near];
        const double r = near_ratio(j, x - pts[near]);
        var += r * r / (kPi * j.d1);
    }
    return var;
}

double variance_deficit(const GafModel& m, double x) {
    const double full = phase_derivatives(m.space, x).d1 / kPi;
    return 1.0 - model_variance(m, x) / full;
}

// ---------------------------------------------------------------------------
// Zeros

namespace {

struct Scanner {
    std::function<double(double)> f;
    std::function<double(double)> threshold;  // tangency threshold at x
    ZeroSet out;

    void push_zero(double z) { out.zeros.push_back(z); }

    double refine(double a, double b, double fa, double fb) {
        return numerics::bracketed_secant(f, a, b, fa, fb, {1e-12, 300});
    }

    // Minimise sgn * f on [a, b] by golden section.
    std::pair<double, double> valley(double a, double b, double sgn) {
        const double g = (std::sqrt(5.0) - 1) / 2;
        double x1 = b - g * (b - a), x2 = a + g * (b - a);
        double f1 = sgn * f(x1), f2 = sgn * f(x2);
        for (int it = 0; it < 200 && (b - a) > 1e-11 * (1 + std::abs(a)); ++it) {
            if (f1 < 0 || f2 < 0) break;
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - g * (b - a);
                f1 = sgn * f(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + g * (b - a);
                f2 = sgn * f(x2);
            }
        }
        return f1 < f2 ? std::pair{x1, sgn * f1} : std::pair{x2, sgn * f2};
    }

    void scan(const std::vector<double>& xs) {
        const std::size_t n = xs.size();
        std::vector<double> fs(n);
        for (std::size_t i = 0; i < n; ++i) fs[i] = f(xs[i]);
        for (std::size_t i = 0; i < n; ++i) {
            if (fs[i] == 0) {
                push_zero(xs[i]);
                continue;
            }
            if (i + 1 < n && fs[i + 1] != 0 && (fs[i] > 0) != (fs[i + 1] > 0))
                push_zero(refine(xs[i], xs[i + 1], fs[i], fs[i + 1]));
            // Discrete local minimum of |f| without a sign change: look for a
            // hidden pair of zeros or a tangency.
            const bool left_ok = i == 0 || (fs[i - 1] != 0 && (fs[i - 1] > 0) == (fs[i] > 0) &&
                                            std::abs(fs[i]) <= std::abs(fs[i - 1]));
            const bool right_ok = i + 1 == n || (fs[i + 1] != 0 && (fs[i + 1] > 0) == (fs[i] > 0) &&
                                                 std::abs(fs[i]) <= std::abs(fs[i + 1]));
            if (!left_ok || !right_ok || n < 2) continue;
            const double a = i == 0 ? xs[0] : xs[i - 1];
            const double b = i + 1 == n ? xs[n - 1] : xs[i + 1];
            const double sgn = fs[i] > 0 ? 1.0 : -1.0;
            const auto [xm, fm] = valley(a, b, sgn);
            if (fm == 0) {
                out.tangencies.push_back(xm);
            } else if ((fm > 0) != (fs[i] > 0)) {
                const double fa = f(a), fb = f(b);
                if ((fa > 0) != (fm > 0)) push_zero(refine(a, xm, fa, fm));
                if ((fb > 0) != (fm > 0)) push_zero(refine(xm, b, fm, fb));
            } else if (std::abs(fm) < threshold(xm)) {
                out.tangencies.push_back(xm);
            }
        }
        std::sort(out.zeros.begin(), out.zeros.end());
        std::vector<double> unique;
        for (double z : out.zeros)
            if (unique.empty() || z - unique.back() > 1e-12 * (1 + std::abs(z))) unique.push_back(z);
        out.zeros = std::move(unique);
    }
};

void check_inside(const GafModel& m, Interval iv) {
    const double slack = 1e-12 * (1 + std::abs(m.interval.lo) + std::abs(m.interval.hi));
    if (!(iv.lo < iv.hi)) throw ValidationError("interval", "empty interval");
    if (iv.lo < m.interval.lo - slack || iv.hi > m.interval.hi + slack)
        throw ValidationError("interval", "zero search interval lies outside the sampled interval");
}

ZeroSet rational_zeros(const GafSample& s, Interval iv, double max_step) {
    const GafModel& m = *s.model;
    const double a = *m.space.a;
    const int n = *m.space.n;
    const double half_pi = kPi / 2;
    const double t_lo = std::isfinite(iv.lo) ? std::atan(iv.lo / a) : -half_pi;
    const double t_hi = std::isfinite(iv.hi) ? std::atan(iv.hi / a) : half_pi;
    // g(theta) = F/|E| * sqrt(x^2 + a^2), a trigonometric polynomial in theta.
    double sum_w = 0;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) sum_w += s.coeffs[i] * m.weight[i];
    auto g = [&](double t) {
        if (t >= half_pi) return (n % 2 == 0 ? -1.0 : 1.0) * m.sin_alpha * sum_w;  // sin(n pi - alpha)
        if (t <= -half_pi) return m.sin_alpha * sum_w;
        const double x = a * std::tan(t);
        return eval(s, x) * a / std::cos(t);
    };
    Scanner sc;
    sc.f = g;
    sc.threshold = [&](double t) {
        const double x = a * std::tan(t);
        return 1e-9 * std::sqrt(phase_derivatives(m.space, x).d1 / kPi) * a / std::cos(t);
    };
    const double step = std::min({kPi / (24.0 * n), (t_hi - t_lo) / 16, max_step});
    const int cells = std::max(1, static_cast<int>(std::ceil((t_hi - t_lo) / step)));
    std::vector<double> ts(cells + 1);
    for (int i = 0; i <= cells; ++i) ts[i] = t_lo + (t_hi - t_lo) * i / cells;
    sc.scan(ts);
    ZeroSet out;
    out.interval = iv;
    out.resolution = (t_hi - t_lo) / cells;
    for (double t : sc.out.zeros) {
        if (std::abs(t) >= half_pi) continue;  // a zero at infinity is a degenerate draw
        double x = a * std::tan(t);
        // polish in x
        const double e = 1e-9 * (1 + std::abs(t));
        const double xl = a * std::tan(std::max(t - e, -half_pi + 1e-15));
        const double xr = a * std::tan(std::min(t + e, half_pi - 1e-15));
        const double fl = eval(s, xl), fr = eval(s, xr);
        if (fl != 0 && fr != 0 && (fl > 0) != (fr > 0))
            x = numerics::bracketed_secant([&](double y) { return eval(s, y); }, xl, xr, fl, fr, {1e-12, 300});
        if (x >= iv.lo && x <= iv.hi) out.zeros.push_back(x);
    }
    for (double t : sc.out.tangencies) out.tangencies.push_back(a * std::tan(t));
    std::sort(out.zeros.begin(), out.zeros.end());
    return out;
}

Scanner make_scanner(const GafSample& s) {
    Scanner sc;
    sc.f = [&s](double x) { return eval(s, x); };
    sc.threshold = [&s](double x) { return 1e-9 * std::sqrt(phase_derivatives(s.space(), x).d1 / kPi); };
    return sc;
}

}  // namespace

ZeroSet real_zeros(const GafSample& s, Interval iv) {
    const GafModel& m = *s.model;
    if (m.space.family == Family::Rational) return rational_zeros(s, iv, kInf);
    check_inside(m, iv);
    std::vector<double> xs{iv.lo};
    double x = iv.lo, widest = 0;
    const double cap = (iv.hi - iv.lo) / 16;
    while (x < iv.hi) {
        const PhaseJet j = phase_derivatives(m.space, x);
        const double step = std::min({0.2 / rho1_from_jet(j), 0.25 / j.d1, cap});
        x = std::min(x + step, iv.hi);
        widest = std::max(widest, x - xs.back());
        xs.push_back(x);
    }
    Scanner sc = make_scanner(s);
    sc.scan(xs);
    sc.out.interval = iv;
    sc.out.resolution = widest;
    return sc.out;
}

ZeroSet real_zeros_uniform(const GafSample& s, Interval iv, double step) {
    const GafModel& m = *s.model;
    if (!(step > 0)) throw ValidationError("step", "must be positive");
    if (m.space.family == Family::Rational) return rational_zeros(s, iv, step);
    check_inside(m, iv);
    const auto cells = static_cast<std::size_t>(std::ceil((iv.hi - iv.lo) / step));
    std::vector<double> xs(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) xs[i] = iv.lo + (iv.hi - iv.lo) * static_cast<double>(i) / cells;
    Scanner sc = make_scanner(s);
    sc.scan(xs);
    sc.out.interval = iv;
    sc.out.resolution = (iv.hi - iv.lo) / static_cast<double>(cells);
    return sc.out;
}

}  // namespace debranges
