#include "debranges/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "debranges/errors.hpp"

namespace debranges::io {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

json number(double v) {
    if (std::isfinite(v)) return v;
    return format_number(v);
}

double to_double(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    }
    throw ValidationError("json", "expected a number, got " + j.dump());
}

json to_json(const SpaceSpec& s) {
    json j;
    j["family"] = to_string(s.family);
    if (s.a) j["a"] = *s.a;
    if (s.nu) j["nu"] = *s.nu;
    if (s.n) j["n"] = *s.n;
    return j;
}

SpaceSpec space_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("space", "expected an object");
    SpaceSpec s;
    s.family = family_from_string(j.at("family").get<std::string>());
    if (j.contains("a")) s.a = to_double(j["a"]);
    if (j.contains("nu")) s.nu = to_double(j["nu"]);
    if (j.contains("n")) s.n = j["n"].get<int>();
    s.validate();
    return s;
}

namespace {

json numbers(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

json interval_json(const Interval& iv) { return json::array({number(iv.lo), number(iv.hi)}); }

}  // namespace

json to_json(const BasisPoints& b) {
    return {{"alpha", b.alpha},
            {"index_offset", b.index_offset},
            {"exhaustive", b.exhaustive},
            {"points", numbers(b.points)}};
}

json to_json(const IntensityCurve& c) {
    json j{{"space", to_json(c.space)}, {"method", to_string(c.method)}, {"xs", numbers(c.xs)}, {"values", numbers(c.values)}};
    if (c.ci_halfwidth) j["ci_halfwidth"] = numbers(*c.ci_halfwidth);
    return j;
}

json to_json(const GafSample& s) {
    const GafModel& m = *s.model;
    return {{"space", to_json(m.space)},
            {"seed", s.seed},
            {"interval", interval_json(m.interval)},
            {"window_pad", number(m.window_pad)},
            {"basis", to_json(m.basis)},
            {"coeffs", numbers(s.coeffs)},
            {"far_field",
             {{"center", m.center}, {"half_width", m.half_width}, {"coeffs", numbers(s.far_coeffs)}}},
            {"max_variance_deficit", m.max_deficit}};
}

json to_json(const ZeroSet& z) {
    return {{"interval", interval_json(z.interval)},
            {"resolution", number(z.resolution)},
            {"zeros", numbers(z.zeros)},
            {"tangencies", numbers(z.tangencies)}};
}

json to_json(const CountHistogram& h) {
    json bins = json::array();
    for (const auto& b : h.bins)
        bins.push_back({{"lo", b.lo}, {"hi", b.hi}, {"mean", b.mean}, {"std_error", b.std_error}});
    return {{"space", to_json(h.space)},   {"alpha", h.alpha},         {"interval", interval_json(h.interval)},
            {"n_samples", h.n_samples},    {"seed_base", h.seed_base}, {"excluded", h.excluded},
            {"bins", bins}};
}

json to_json(const CurveComparison& c) {
    return {{"max_abs_z", number(c.max_abs_z)}, {"expected", numbers(c.expected)}, {"z", numbers(c.z)}};
}

json to_json(const CountMoments& m) {
    return {{"mean", m.mean},
            {"variance", m.variance},
            {"se_mean", m.se_mean},
            {"se_variance", m.se_variance},
            {"n_samples", m.n_samples},
            {"excluded", m.excluded}};
}

json to_json(const Orbit& o) {
    json t = json::array(), x = json::array(), y = json::array();
    for (const auto& s : o.states) {
        t.push_back(s.t);
        x.push_back(s.x);
        y.push_back(s.y);
    }
    return {{"c", o.c}, {"period", number(o.period)}, {"max_c_drift", o.max_c_drift}, {"t", t}, {"x", x}, {"y", y}};
}

std::string to_csv(const CsvTable& table, const json& metadata) {
    std::ostringstream os;
    for (const auto& [key, value] : metadata.items())
        os << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_number(row[i]);
        os << '\n';
    }
    return os.str();
}

CsvTable table(const IntensityCurve& c) {
    CsvTable t;
    t.columns = {"x", "rho1"};
    if (c.ci_halfwidth) t.columns.push_back("ci_halfwidth");
    for (std::size_t i = 0; i < c.xs.size(); ++i) {
        std::vector<double> row{c.xs[i], c.values[i]};
        if (c.ci_halfwidth) row.push_back((*c.ci_halfwidth)[i]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable table(const CountHistogram& h, const CurveComparison* cmp) {
    CsvTable t;
    t.columns = {"bin_lo", "bin_hi", "mean_per_length", "std_error"};
    if (cmp) {
        t.columns.push_back("expected");
        t.columns.push_back("z");
    }
    for (std::size_t i = 0; i < h.bins.size(); ++i) {
        const auto& b = h.bins[i];
        std::vector<double> row{b.lo, b.hi, b.mean, b.std_error};
        if (cmp) {
            row.push_back(cmp->expected[i]);
            row.push_back(cmp->z[i]);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable table(const ZeroSet& z) {
    CsvTable t;
    t.columns = {"zero"};
    for (double v : z.zeros) t.rows.push_back({v});
    return t;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("out", "cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw NumericError("failed writing '" + path + "'");
}

}  // namespace debranges::io
