#include "debranges/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "debranges/errors.hpp"
#include "debranges/numerics.hpp"
#include "debranges/specfun.hpp"

namespace debranges::cli {

namespace {

constexpr double kPi = std::numbers::pi;

int log_level() {
    const char* v = std::getenv("DEBRANGES_LOG");
    if (!v) return 1;
    const std::string s(v);
    if (s == "quiet" || s == "0") return 0;
    if (s == "debug" || s == "2") return 2;
    return 1;
}

const std::vector<std::string> kCommands{"intensity", "sample", "zeros", "empirical", "verify", "rigidity", "figures"};

}  // namespace

void JobConfig::validate() const {
    if (std::find(kCommands.begin(), kCommands.end(), command) == kCommands.end())
        throw ValidationError("command", "unknown command '" + command + "'");
    space.validate();
    if (!(alpha >= 0 && alpha < kPi)) throw ValidationError("alpha", "must lie in [0, pi)");
    if (interval && !(interval->lo < interval->hi)) throw ValidationError("interval", "need LO < HI");
    if (grid < 2) throw ValidationError("grid", "need at least 2 grid points");
    if (samples < 2) throw ValidationError("samples", "need at least 2 samples");
    if (bins < 1) throw ValidationError("bins", "need at least 1 bin");
    if (format != "csv" && format != "json") throw ValidationError("format", "must be csv or json");
    if (workers < 0) throw ValidationError("workers", "must be >= 0");
    if (!(tol > 0)) throw ValidationError("tol", "must be positive");
    if (methods.empty()) throw ValidationError("method", "at least one method is required");
    for (const auto& m : methods) method_from_string(m);
    for (double c : orbit_c)
        if (!(c >= 8)) throw ValidationError("c", "orbit constants must be >= 8");
}

io::json to_json(const JobConfig& c) {
    io::json j;
    j["command"] = c.command;
    j["space"] = io::to_json(c.space);
    j["alpha"] = c.alpha;
    if (c.interval) j["interval"] = io::json::array({io::number(c.interval->lo), io::number(c.interval->hi)});
    j["grid"] = c.grid;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["bins"] = c.bins;
    j["methods"] = c.methods;
    j["out"] = c.out;
    j["format"] = c.format;
    j["workers"] = c.workers;
    j["tol"] = c.tol;
    j["orbit_c"] = c.orbit_c;
    j["t0"] = c.t0;
    return j;
}

JobConfig config_from_json(const io::json& j) {
    JobConfig c;
    if (!j.is_object()) throw ValidationError("config", "expected a JSON object");
    if (j.contains("command")) c.command = j["command"].get<std::string>();
    if (j.contains("space")) c.space = io::space_from_json(j["space"]);
    if (j.contains("alpha"))
        c.alpha = io::to_double(j["alpha"]);
    else
        c.alpha = default_alpha(c.space);
    if (j.contains("interval")) {
        const auto& iv = j["interval"];
        if (!iv.is_array() || iv.size() != 2) throw ValidationError("interval", "expected [lo, hi]");
        c.interval = Interval{io::to_double(iv[0]), io::to_double(iv[1])};
    }
    if (j.contains("grid")) c.grid = j["grid"].get<int>();
    if (j.contains("samples")) c.samples = j["samples"].get<int>();
    if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("bins")) c.bins = j["bins"].get<int>();
    if (j.contains("methods")) c.methods = j["methods"].get<std::vector<std::string>>();
    if (j.contains("out")) c.out = j["out"].get<std::string>();
    if (j.contains("format")) c.format = j["format"].get<std::string>();
    if (j.contains("workers")) c.workers = j["workers"].get<int>();
    if (j.contains("tol")) c.tol = io::to_double(j["tol"]);
    if (j.contains("orbit_c")) c.orbit_c = j["orbit_c"].get<std::vector<double>>();
    if (j.contains("t0")) c.t0 = io::to_double(j["t0"]);
    return c;
}

JobConfig config_from_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ValidationError("config", "cannot read '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string text = ss.str();
    const std::string tag = "# config: ";
    if (const auto pos = text.find(tag); pos != std::string::npos && text.rfind('#', 0) == 0) {
        const auto end = text.find('\n', pos);
        return config_from_json(io::json::parse(text.substr(pos + tag.size(), end - pos - tag.size())));
    }
    io::json j;
    try {
        j = io::json::parse(text);
    } catch (const io::json::exception& e) {
        throw ValidationError("config", std::string("invalid JSON: ") + e.what());
    }
    if (j.is_object() && j.contains("config") && j.contains("schema_version")) return config_from_json(j["config"]);
    return config_from_json(j);
}

double default_alpha(const SpaceSpec& space) { return space.family == Family::Rational ? kPi / 2 : 0.0; }

Interval default_interval(const SpaceSpec& space, const std::string& command) {
    switch (space.family) {
        case Family::PaleyWiener: return command == "empirical" ? Interval{0, 50} : Interval{0, 10};
        case Family::Airy: return {-20, 5};
        case Family::Bessel: return {-50, 200};
        case Family::Rational: {
            const double inf = std::numeric_limits<double>::infinity();
            if (command == "empirical" || command == "sample" || command == "zeros") return {-inf, inf};
            return {-10 * *space.a, 10 * *space.a};
        }
    }
    return {0, 1};
}

// ---------------------------------------------------------------------------

namespace {

struct Emitter {
    const JobConfig& config;
    std::ostream& out;

    io::json metadata(const std::string& kind) const {
        io::json m;
        m["schema_version"] = io::kSchemaVersion;
        m["kind"] = kind;
        m["config"] = to_json(config).dump();
        return m;
    }

    void write(const std::string& path_suffix, const std::string& content) const {
        if (config.out.empty()) {
            out << content;
            if (!content.empty() && content.back() != '\n') out << '\n';
            return;
        }
        std::string path = config.out;
        if (!path_suffix.empty()) {
            const auto dot = path.find_last_of('.');
            const auto slash = path.find_last_of('/');
            if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
                path = path.substr(0, dot) + path_suffix + path.substr(dot);
            else
                path += path_suffix;
        }
        io::write_file(path, content);
    }

    void json_doc(const std::string& kind, io::json body, const std::string& suffix = "") const {
        io::json doc;
        doc["schema_version"] = io::kSchemaVersion;
        doc["kind"] = kind;
        doc["config"] = to_json(config);
        doc["result"] = std::move(body);
        write(suffix, doc.dump(2));
    }

    void csv_doc(const std::string& kind, const io::CsvTable& t, io::json extra = {},
                 const std::string& suffix = "") const {
        io::json m = metadata(kind);
        if (extra.is_object())
            for (auto& [k, v] : extra.items()) m[k] = v;
        write(suffix, io::to_csv(t, m));
    }
};

std::vector<double> linspace(Interval iv, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = iv.lo + (iv.hi - iv.lo) * i / (n - 1);
    xs.back() = iv.hi;
    return xs;
}

Interval resolved_interval(const JobConfig& c) { return c.interval ? *c.interval : default_interval(c.space, c.command); }

McOptions mc_options(const JobConfig& c) {
    McOptions o;
    o.workers = c.workers;
    return o;
}

IntensityCurve closed_curve_for(const CountHistogram& h) {
    std::vector<double> xs;
    const int per_bin = 64;
    for (const auto& b : h.bins)
        for (int i = 0; i < per_bin; ++i) xs.push_back(b.lo + (b.hi - b.lo) * i / per_bin);
    xs.push_back(h.bins.back().hi);
    return intensity_curve(h.space, xs, Method::ClosedForm);
}

int cmd_intensity(const JobConfig& c, const Emitter& e) {
    const Interval iv = resolved_interval(c);
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) throw ValidationError("interval", "intensity needs a finite interval");
    const auto xs = linspace(iv, c.grid);
    std::vector<IntensityCurve> curves;
    for (const auto& name : c.methods) {
        const Method m = method_from_string(name);
        if (m == Method::MonteCarlo) {
            const auto h = empirical_intensity(c.space, c.alpha, iv, c.bins, c.samples, c.seed, mc_options(c));
            IntensityCurve mc;
            mc.space = c.space;
            mc.method = m;
            mc.ci_halfwidth.emplace();
            for (const auto& b : h.bins) {
                mc.xs.push_back(0.5 * (b.lo + b.hi));
                mc.values.push_back(b.mean);
                mc.ci_halfwidth->push_back(1.96 * b.std_error);
            }
            curves.push_back(std::move(mc));
        } else {
            curves.push_back(intensity_curve(c.space, xs, m));
        }
    }
    if (c.format == "json") {
        io::json arr = io::json::array();
        for (const auto& cv : curves) arr.push_back(io::to_json(cv));
        e.json_doc("intensity", arr);
    } else {
        for (std::size_t i = 0; i < curves.size(); ++i) {
            const std::string suffix = curves.size() > 1 ? "_" + to_string(curves[i].method) : "";
            e.csv_doc("intensity", io::table(curves[i]), {{"method", to_string(curves[i].method)}}, suffix);
        }
    }
    return kOk;
}

int cmd_sample(const JobConfig& c, const Emitter& e) {
    const auto s = sample(c.space, c.alpha, resolved_interval(c), c.seed);
    if (c.format == "json") {
        e.json_doc("sample", io::to_json(s));
    } else {
        io::CsvTable t;
        t.columns = {"index", "omega", "coeff"};
        for (std::size_t i = 0; i < s.coeffs.size(); ++i)
            t.rows.push_back({static_cast<double>(s.basis().index(i)), s.basis().points[i], s.coeffs[i]});
        e.csv_doc("sample", t,
                  {{"window_pad", io::format_number(s.window_pad())},
                   {"far_field_coeffs", io::json(io::to_json(s)["far_field"]["coeffs"]).dump()}});
    }
    return kOk;
}

int cmd_zeros(const JobConfig& c, const Emitter& e, std::ostream& log) {
    const Interval iv = resolved_interval(c);
    const auto s = sample(c.space, c.alpha, iv, c.seed);
    const auto z = real_zeros(s, iv);
    if (!z.tangencies.empty() && log_level() > 0)
        log << "warning: " << z.tangencies.size() << " unresolved near-tangencies flagged\n";
    if (c.format == "json")
        e.json_doc("zeros", io::to_json(z));
    else
        e.csv_doc("zeros", io::table(z),
                  {{"resolution", io::format_number(z.resolution)}, {"tangencies", z.tangencies.size()}});
    return kOk;
}

int cmd_empirical(const JobConfig& c, const Emitter& e) {
    const Interval iv = resolved_interval(c);
    if (c.space.family == Family::Rational && (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))) {
        const auto m = count_moments(c.space, c.alpha, iv, c.samples, c.seed, mc_options(c));
        const auto expected = expected_count(c.space, iv);
        io::json body = io::to_json(m);
        body["expected_count"] = io::number(expected.value);
        const double diff = m.mean - expected.value;
        // A degenerate count (n = 2 always has one real zero) has zero spread.
        body["z"] = m.se_mean > 0 ? diff / m.se_mean : (std::abs(diff) <= 1e-8 ? 0.0 : std::copysign(1e300, diff));
        if (c.format == "json") {
            e.json_doc("count_moments", body);
        } else {
            io::CsvTable t{{"mean", "variance", "se_mean", "se_variance", "expected", "z"},
                           {{m.mean, m.variance, m.se_mean, m.se_variance, expected.value, body["z"].get<double>()}}};
            e.csv_doc("count_moments", t, {{"excluded", m.excluded}});
        }
        return kOk;
    }
    const auto h = empirical_intensity(c.space, c.alpha, iv, c.bins, c.samples, c.seed, mc_options(c));
    const auto cmp = compare_curves(h, closed_curve_for(h));
    if (c.format == "json") {
        e.json_doc("empirical", {{"histogram", io::to_json(h)}, {"comparison", io::to_json(cmp)}});
    } else {
        e.csv_doc("empirical", io::table(h, &cmp),
                  {{"excluded", h.excluded}, {"max_abs_z", io::format_number(cmp.max_abs_z)}});
    }
    return kOk;
}

// --- verify -----------------------------------------------------------------

struct Check {
    std::string name;
    double measured = 0;
    double tolerance = 0;
    bool pass = false;
};

struct Checks {
    std::vector<Check> list;
    void upper(const std::string& name, double measured, double tol) {
        list.push_back({name, measured, tol, std::isfinite(measured) && measured <= tol});
    }
    void within(const std::string& name, double measured, double lo, double hi) {
        list.push_back({name + " in [" + io::format_number(lo) + ", " + io::format_number(hi) + "]", measured,
                        hi - lo, measured >= lo && measured <= hi});
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Interval check_window(const SpaceSpec& s) {
    switch (s.family) {
        case Family::PaleyWiener: return {-20, 20};
        case Family::Airy: return {-20, 5};
        case Family::Bessel: return {-20, 400};
        case Family::Rational: return {-10 * *s.a, 10 * *s.a};
    }
    return {0, 1};
}

void common_checks(const SpaceSpec& s, std::uint64_t seed, Checks& out) {
    const Interval w = check_window(s);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(w.lo, w.hi);
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        const double x = uni(rng);
        const double a = rho1_closed(s, x), b = rho1_rice_covariance(s, x), c = rho1_ek_fd(s, x);
        worst = std::max({worst, rel(b, a), rel(c, a), rel(c, b)});
    }
    out.upper("three-way rho1 agreement (max relative difference, 200 points)", worst, 1e-5);

    double sch = 0;
    for (double x : linspace(w, 7)) {
        const PhaseJet j = phase_derivatives(s, x);
        const double h = 1e-3 * std::min(1 + std::abs(x), 1 / j.d1);
        sch = std::max(sch, std::abs(schwarzian_fd(s, x, h) - j.schwarzian) / (1 + std::abs(j.schwarzian)));
    }
    out.upper("Schwarzian: jet vs finite differences", sch, 1e-6);

    double diag = 0;
    for (double x : linspace(w, 21)) {
        const Polar p = polar(s, x);
        if (p.abs_e_underflow || !std::isfinite(p.abs_e)) continue;
        const double expect = phase_derivatives(s, x).d1 * p.abs_e * p.abs_e / kPi;
        diag = std::max(diag, rel(kernel(s, x, x), expect));
    }
    out.upper("K(x,x) = phi' |E|^2 / pi (relative)", diag, 1e-10);

    const double alpha = s.family == Family::Rational ? kPi / 8 : 0.0;
    const auto basis = basis_points(s, alpha, w.lo, w.hi);
    const std::size_t m = std::min<std::size_t>(basis.points.size(), 30);
    double gram = 0, spacing = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double wi = basis.points[i];
        const double ki = std::sqrt(kernel(s, wi, wi));
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            const double wj = basis.points[j];
            gram = std::max(gram, std::abs(model_kernel(s, wj, wi)) / std::sqrt(model_kernel(s, wj, wj) * model_kernel(s, wi, wi)));
        }
        (void)ki;
        if (i + 1 < m) spacing = std::max(spacing, std::abs(phase(s, basis.points[i + 1]) - phase(s, wi) - kPi));
    }
    out.upper("basis orthogonality (max normalized off-diagonal Gram entry)", gram, 1e-9);
    out.upper("basis phase spacing |phi(w_{n+1}) - phi(w_n) - pi|", spacing, 1e-10);
}

void family_checks(const SpaceSpec& s, std::uint64_t seed, Checks& out) {
    std::mt19937_64 rng(seed + 1);
    switch (s.family) {
        case Family::PaleyWiener: {
            const double a = *s.a, expect = a / (kPi * std::sqrt(3.0));
            std::uniform_real_distribution<double> uni(-100, 100);
            double worst = 0;
            for (int i = 0; i < 100; ++i) worst = std::max(worst, rel(rho1_closed(s, uni(rng)), expect));
            out.upper("rho1 = a/(pi sqrt 3) at 100 points (relative)", worst, 1e-14);
            const int n = 1000;
            const auto basis = basis_points(s, 0.0, -(n + 1) * kPi / a, (n + 1) * kPi / a);
            const auto r = basel_series(s, basis, 0, n);
            out.upper("Basel partial sum error * N * pi^2 / a^2", std::abs(r.target - r.partial_sum) * n * kPi * kPi / (a * a), 2.5);
            break;
        }
        case Family::Rational: {
            const int n = *s.n;
            const auto ec = expected_count(s, {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()});
            out.upper("expected count over R vs sqrt((n^2-1)/3)", std::abs(ec.value - std::sqrt((n * n - 1) / 3.0)), 1e-8);
            const auto basis = basis_points(s, kPi / 8, -std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
            double worst = 0;
            for (std::size_t i = 0; i < basis.points.size(); ++i) {
                const auto r = basel_series(s, basis, basis.index(i), n);
                worst = std::max(worst, rel(r.partial_sum, r.target));
            }
            out.upper("Basel identity, exhaustive basis (relative)", worst, 1e-10);
            double sp = 0;
            for (double x : linspace({-10, 10}, 41)) sp = std::max(sp, rel(rho1_rational_special(s, x), rho1_closed(s, x)));
            out.upper("closed form vs rational formula (relative)", sp, 1e-12);
            break;
        }
        case Family::Airy: {
            double sp = 0;
            for (double x : linspace({-20, 5}, 251)) sp = std::max(sp, rel(rho1_airy_special(x), rho1_closed(s, x)));
            out.upper("Airy formula vs closed form on [-20, 5] (relative)", sp, 1e-8);
            out.within("rho1(-100) pi / sqrt(100/3)", rho1_closed(s, -100) * kPi / std::sqrt(100.0 / 3), 0.95, 1.05);
            out.within("rho1(100) 4 pi 100", rho1_closed(s, 100) * 4 * kPi * 100, 0.85, 1.15);
            double d1 = 0, half = 0, bk = 0;
            for (int k = 1; k <= 50; ++k) {
                const double a = specfun::airy_zero(k), b = specfun::airy_prime_zero(k);
                if (k <= 20) d1 = std::max(d1, std::abs(phase_derivatives(s, a).d1 - 1));
                half = std::max(half, std::abs(std::abs(phase(s, b) - phase(s, a)) / kPi - 0.5));
                bk = std::max(bk, std::abs(phase_derivatives(s, b).d1 - std::abs(b)) / std::abs(b));
            }
            out.upper("phi'(a_k) = 1 for k <= 20", d1, 1e-10);
            out.upper("|phi(b_k) - phi(a_k)| / pi = 1/2 for k <= 50", half, 1e-8);
            out.upper("phi'(b_k) = |b_k| for k <= 50 (relative)", bk, 1e-8);
            const auto ec = expected_count(s, {1, 1e4});
            out.within("int_1^1e4 rho1 / (ln(1e4) / (4 pi))", ec.value / (std::log(1e4) / (4 * kPi)), 0.9, 1.1);
            const auto div = expected_count(s, {0, std::numeric_limits<double>::infinity()});
            out.list.push_back({"int_0^inf rho1 classified divergent", div.tail_slope, -1.0, div.divergent});
            break;
        }
        case Family::Bessel: {
            const double nu = *s.nu;
            double d1 = 0, arch = 0;
            const auto zeros = specfun::bessel_zeros(nu, 21);
            for (int k = 0; k < 20; ++k) {
                const double w = zeros[k] * zeros[k];
                d1 = std::max(d1, rel(phase_derivatives(s, w).d1, 1 / (2 * w)));
                const double next = zeros[k + 1] * zeros[k + 1];
                const double integral =
                    numerics::integrate([&](double x) { return phase_derivatives(s, x).d1; }, w, next, 1e-11, 1e-12).value;
                arch = std::max(arch, std::abs(integral - kPi));
            }
            out.upper("phi'(j_k^2) = 1/(2 j_k^2) for k <= 20 (relative)", d1, 1e-10);
            out.upper("arch integrals of phi' equal pi", arch, 1e-8);
            int k = 1;
            while (specfun::bessel_zero(nu, k + 1) < 100) ++k;
            const double lo = std::pow(specfun::bessel_zero(nu, k), 2), hi = std::pow(specfun::bessel_zero(nu, k + 1), 2);
            const double avg = numerics::integrate([&](double x) { return rho1_closed(s, x) * 2 * kPi * std::sqrt(3 * x); },
                                                   lo, hi, 1e-10, 1e-10).value / (hi - lo);
            out.within("arch average of rho1 2 pi sqrt(3x) around x = 1e4", avg, 0.8, 1.2);
            out.within("rho1(-1e4) 4 pi 1e4", rho1_closed(s, -1e4) * 4 * kPi * 1e4, 0.9, 1.1);
            break;
        }
    }
}

int cmd_verify(const JobConfig& c, const Emitter& e) {
    Checks checks;
    common_checks(c.space, c.seed, checks);
    family_checks(c.space, c.seed, checks);
    bool ok = true;
    for (const auto& ch : checks.list) ok = ok && ch.pass;
    if (c.format == "json") {
        io::json arr = io::json::array();
        for (const auto& ch : checks.list)
            arr.push_back({{"check", ch.name}, {"measured", io::number(ch.measured)}, {"tolerance", io::number(ch.tolerance)}, {"pass", ch.pass}});
        e.json_doc("verify", {{"space", describe(c.space)}, {"pass", ok}, {"checks", arr}});
    } else {
        std::ostringstream os;
        os << "# schema_version: " << io::kSchemaVersion << "\n# kind: verify\n# config: " << to_json(c).dump() << '\n';
        os << "check,measured,tolerance,pass\n";
        for (const auto& ch : checks.list)
            os << '"' << ch.name << "\"," << io::format_number(ch.measured) << ',' << io::format_number(ch.tolerance) << ','
               << (ch.pass ? "true" : "false") << '\n';
        e.write("", os.str());
    }
    return ok ? kOk : kVerification;
}

// --- rigidity -----------------------------------------------------------------

int cmd_rigidity(const JobConfig& c, const Emitter& e) {
    io::json orbits = io::json::array();
    io::CsvTable t;
    t.columns = {"c", "period", "period_error", "c_drift", "x_plus_plus_x_minus", "u_pi_2", "u_pi", "u_3pi_2", "u_2pi",
                 "iso_residual"};
    const Interval iv = resolved_interval(c);
    const Interval win = std::isfinite(iv.lo) && std::isfinite(iv.hi) ? iv : Interval{-10, 10};
    for (double cc : c.orbit_c) {
        const auto tp = turning_points(cc);
        std::vector<double> row{cc};
        io::json o;
        if (cc > 8) {
            const Orbit orbit = integrate_orbit(cc, 10 * kPi, std::max(c.tol, 1e-14));
            row.insert(row.end(), {orbit.period, orbit.period - kPi, orbit.max_c_drift});
            o = io::to_json(orbit);
        } else {
            row.insert(row.end(), {kPi, 0.0, 0.0});
            o = {{"c", cc}, {"period", kPi}};
        }
        row.push_back(tp.x_plus + tp.x_minus);
        for (int k = 1; k <= 4; ++k) row.push_back(u_integral(cc, k * kPi / 2));
        const Isophase iso = build_isophase(c.space, cc, c.t0);
        double resid = 0;
        for (double x : linspace(win, 101)) resid = std::max(resid, std::abs(rho1_from_jet(iso.jet(x)) - rho1_closed(c.space, x)));
        row.push_back(resid);
        o["u"] = io::json::array({row[5], row[6], row[7], row[8]});
        o["iso_residual"] = resid;
        orbits.push_back(o);
        t.rows.push_back(row);
    }
    if (c.format == "json")
        e.json_doc("rigidity", {{"space", io::to_json(c.space)}, {"orbits", orbits}});
    else
        e.csv_doc("rigidity", t);
    return kOk;
}

// --- figures --------------------------------------------------------------------

int cmd_figures(const JobConfig& c, const Emitter& e) {
    if (c.space.family != Family::Airy && c.space.family != Family::Bessel)
        throw ValidationError("space", "figures are defined for the airy and bessel families");
    const Interval iv = resolved_interval(c);
    const int n = c.grid == 201 ? 1000 : c.grid;  // the figures default to 1000 points
    const auto xs = linspace(iv, n);
    io::CsvTable rho{{"x", "rho1"}, {}}, dphi{{"x", "phi_prime"}, {}};
    for (double x : xs) {
        const PhaseJet j = phase_derivatives(c.space, x);
        rho.rows.push_back({x, rho1_from_jet(j)});
        dphi.rows.push_back({x, j.d1});
    }
    const std::string tag = c.space.family == Family::Airy ? "airy" : "bessel";
    if (c.format == "json") {
        auto col = [](const io::CsvTable& t, int k) {
            io::json a = io::json::array();
            for (const auto& r : t.rows) a.push_back(r[k]);
            return a;
        };
        e.json_doc("figures", {{"space", io::to_json(c.space)}, {"x", col(rho, 0)}, {"rho1", col(rho, 1)}, {"phi_prime", col(dphi, 1)}});
    } else {
        e.csv_doc("figure_rho1", rho, {{"figure", tag + " first intensity"}}, "_rho1");
        e.csv_doc("figure_phi_prime", dphi, {{"figure", tag + " phase derivative"}}, "_phi_prime");
    }
    return kOk;
}

}  // namespace

namespace {

template <class F>
int guarded(std::ostream& log, F&& body) {
    try {
        return body();
    } catch (const ValidationError& err) {
        log << "validation error: " << err.what() << '\n';
        return kValidation;
    } catch (const NumericError& err) {
        log << "numeric failure: " << err.what() << '\n';
        return kNumeric;
    } catch (const io::json::exception& err) {
        log << "validation error [config]: " << err.what() << '\n';
        return kValidation;
    } catch (const std::exception& err) {
        log << "numeric failure: " << err.what() << '\n';
        return kNumeric;
    }
}

int dispatch(const JobConfig& c, std::ostream& out, std::ostream& log) {
    c.validate();
    Emitter e{c, out};
    if (log_level() > 1) log << "running " << c.command << " on " << describe(c.space) << '\n';
    if (c.command == "intensity") return cmd_intensity(c, e);
    if (c.command == "sample") return cmd_sample(c, e);
    if (c.command == "zeros") return cmd_zeros(c, e, log);
    if (c.command == "empirical") return cmd_empirical(c, e);
    if (c.command == "verify") return cmd_verify(c, e);
    if (c.command == "rigidity") return cmd_rigidity(c, e);
    return cmd_figures(c, e);
}

}  // namespace

int run(const JobConfig& c, std::ostream& out, std::ostream& log) {
    return guarded(log, [&] { return dispatch(c, out, log); });
}

namespace {

Interval parse_interval(const std::string& s) {
    const auto colon = s.find(':', 1);
    if (colon == std::string::npos) throw ValidationError("interval", "expected LO:HI, got '" + s + "'");
    auto num = [&](const std::string& t) {
        try {
            std::size_t used = 0;
            const double v = std::stod(t, &used);
            if (used != t.size()) throw std::invalid_argument(t);
            return v;
        } catch (const std::exception&) {
            throw ValidationError("interval", "cannot parse '" + t + "'");
        }
    };
    return {num(s.substr(0, colon)), num(s.substr(colon + 1))};
}

std::vector<std::string> split_commas(const std::vector<std::string>& in) {
    std::vector<std::string> out;
    for (const auto& s : in) {
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) out.push_back(item);
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Real zeros of de Branges Gaussian analytic functions"};
    std::string command, config_path, space_name, interval_text;
    double a = 0, nu = 0, alpha = 0, tol = 0, t0 = 0;
    int n = 0, grid = 0, samples = 0, bins = 0, workers = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> methods;
    std::vector<double> orbit_c;
    std::string out, format;

    app.add_option("command", command, "intensity | sample | zeros | empirical | verify | rigidity | figures");
    auto* o_config = app.add_option("--config", config_path, "JSON job file, or a previous output to rerun");
    auto* o_space = app.add_option("--space", space_name, "paley-wiener | airy | bessel | rational");
    auto* o_a = app.add_option("--a", a, "bandwidth (paley-wiener) or pole height (rational)");
    auto* o_nu = app.add_option("--nu", nu, "Bessel order");
    auto* o_n = app.add_option("--n", n, "rational exponent");
    auto* o_alpha = app.add_option("--alpha", alpha, "basis parameter in [0, pi)");
    auto* o_interval = app.add_option("--interval", interval_text, "LO:HI (use --interval=LO:HI for negative LO)");
    auto* o_grid = app.add_option("--grid", grid, "grid points");
    auto* o_samples = app.add_option("--samples", samples, "Monte Carlo samples");
    auto* o_seed = app.add_option("--seed", seed, "seed (base seed for Monte Carlo)");
    auto* o_bins = app.add_option("--bins", bins, "histogram bins");
    auto* o_method = app.add_option("--method", methods, "closed | ek | rice | mc | airy | rational (comma list)");
    auto* o_out = app.add_option("--out", out, "output path (stdout when absent)");
    auto* o_format = app.add_option("--format", format, "csv | json");
    auto* o_workers = app.add_option("--workers", workers, "Monte Carlo workers (0: all cores)");
    auto* o_tol = app.add_option("--tol", tol, "integrator tolerance");
    auto* o_c = app.add_option("--c", orbit_c, "orbit constants for rigidity (comma list)")->delimiter(',');
    auto* o_t0 = app.add_option("--t0", t0, "orbit time offset for the isophase warp");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kOk : kValidation;
    }

    return guarded(std::cerr, [&] {
        JobConfig c = o_config->count() ? config_from_file(config_path) : JobConfig{};
        if (!command.empty()) c.command = command;
        if (o_space->count() || o_a->count() || o_nu->count() || o_n->count()) {
            SpaceSpec s;
            s.family = o_space->count() ? family_from_string(space_name) : c.space.family;
            if (!o_space->count()) s = c.space;
            if (o_space->count()) {
                // Family defaults, then explicit flags.
                if (s.family == Family::PaleyWiener) s.a = kPi;
                if (s.family == Family::Bessel) s.nu = 0.5;
                if (s.family == Family::Rational) {
                    s.n = 2;
                    s.a = 1;
                }
            }
            if (o_a->count()) s.a = a;
            if (o_nu->count()) s.nu = nu;
            if (o_n->count()) s.n = n;
            c.space = s;
        }
        if (o_alpha->count())
            c.alpha = alpha;
        else if (!o_config->count())
            c.alpha = default_alpha(c.space);
        if (o_interval->count()) c.interval = parse_interval(interval_text);
        if (o_grid->count()) c.grid = grid;
        if (o_samples->count()) c.samples = samples;
        if (o_seed->count()) c.seed = seed;
        if (o_bins->count()) c.bins = bins;
        if (o_method->count()) c.methods = split_commas(methods);
        if (o_out->count()) c.out = out;
        if (o_format->count()) c.format = format;
        if (o_workers->count()) c.workers = workers;
        if (o_tol->count()) c.tol = tol;
        if (o_c->count()) c.orbit_c = orbit_c;
        if (o_t0->count()) c.t0 = t0;
        if (!c.interval) c.interval = default_interval(c.space, c.command);
        return run(c, std::cout, std::cerr);
    });
}

}  // namespace debranges::cli
