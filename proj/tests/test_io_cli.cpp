#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "debranges/cli.hpp"
#include "debranges/errors.hpp"

using namespace debranges;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct ParsedCsv {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

ParsedCsv parse_csv(const std::string& text) {
    ParsedCsv out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("# ", 0) == 0) {
            const auto colon = line.find(": ");
            REQUIRE(colon != std::string::npos);
            out.meta.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (out.columns.empty()) {
            out.columns = cells;
        } else {
            REQUIRE(cells.size() == out.columns.size());
            std::vector<double> row;
            for (const auto& c : cells) row.push_back(io::to_double(io::json(c == "inf" || c == "-inf" || c == "nan" ? io::json(c) : io::json::parse(c))));
            out.rows.push_back(row);
        }
    }
    return out;
}

std::string meta_value(const ParsedCsv& p, const std::string& key) {
    for (const auto& [k, v] : p.meta)
        if (k == key) return v;
    return {};
}

fs::path scratch_dir() {
    const auto d = fs::temp_directory_path() / ("debranges_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("format_number round-trips and spells non-finite values") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double v = std::pow(10.0, u(rng)) * (i % 2 ? -1 : 1);
        CHECK(std::stod(io::format_number(v)) == v);
    }
    CHECK(io::format_number(0.1) == "0.1");
    CHECK(io::format_number(INFINITY) == "inf");
    CHECK(io::format_number(-INFINITY) == "-inf");
    CHECK(io::format_number(NAN) == "nan");
    CHECK(io::number(2.5).is_number());
    CHECK(io::number(INFINITY) == "inf");
    CHECK(io::to_double(io::number(-INFINITY)) == -INFINITY);
    CHECK(std::isnan(io::to_double(io::number(NAN))));
    CHECK(io::to_double(io::json(pi)) == pi);
}

TEST_CASE("space specs survive a JSON round trip") {
    for (const auto& s : {SpaceSpec::paley_wiener(0.7), SpaceSpec::airy(), SpaceSpec::bessel(2.5), SpaceSpec::rational(6, 1.25)}) {
        const auto back = io::space_from_json(io::to_json(s));
        CHECK(back.family == s.family);
        CHECK(back.a == s.a);
        CHECK(back.nu == s.nu);
        CHECK(back.n == s.n);
    }
    CHECK_THROWS_AS(io::space_from_json(io::json{{"family", "hardy"}}), ValidationError);
}

TEST_CASE("CSV tables carry metadata lines before the header") {
    io::CsvTable t;
    t.columns = {"x", "y"};
    t.rows = {{1, 0.25}, {-2, INFINITY}};
    const auto text = io::to_csv(t, io::json{{"schema_version", 1}, {"kind", "demo"}});
    const auto p = parse_csv(text);
    CHECK(meta_value(p, "schema_version") == "1");
    CHECK(meta_value(p, "kind") == "demo");
    CHECK(p.columns == t.columns);
    REQUIRE(p.rows.size() == 2);
    CHECK(p.rows[0][1] == 0.25);
    CHECK(p.rows[1][1] == INFINITY);
}

TEST_CASE("job configs round-trip through JSON and output files") {
    cli::JobConfig c;
    c.command = "empirical";
    c.space = SpaceSpec::bessel(0);
    c.interval = Interval{-5, 60};
    c.samples = 17;
    c.seed = 99;
    c.methods = {"closed", "rice"};
    const auto back = cli::config_from_json(cli::to_json(c));
    CHECK(back.command == "empirical");
    CHECK(back.space.family == Family::Bessel);
    CHECK(back.interval->lo == -5);
    CHECK(back.interval->hi == 60);
    CHECK(back.samples == 17);
    CHECK(back.seed == 99);
    CHECK(back.methods == c.methods);

    CHECK(cli::config_from_json(io::json{{"space", {{"family", "rational"}, {"n", 3}, {"a", 1}}}}).alpha == pi / 2);
    CHECK_THROWS_AS(cli::config_from_json(io::json{{"grid", 1}}).validate(), ValidationError);
    CHECK_THROWS_AS(cli::config_from_json(io::json{{"command", "dance"}}).validate(), ValidationError);

    const auto dir = scratch_dir();
    cli::JobConfig job;
    job.space = SpaceSpec::airy();
    job.grid = 4;
    job.out = (dir / "curve.csv").string();
    std::ostringstream sink;
    REQUIRE(cli::run(job, sink, sink) == cli::kOk);
    const auto again = cli::config_from_file(job.out);
    CHECK(again.space.family == Family::Airy);
    CHECK(again.grid == 4);

    job.format = "json";
    job.out = (dir / "curve.json").string();
    REQUIRE(cli::run(job, sink, sink) == cli::kOk);
    CHECK(cli::config_from_file(job.out).format == "json");
    fs::remove_all(dir);
}

TEST_CASE("exit codes") {
    std::ostringstream out, log;
    cli::JobConfig bad;
    bad.grid = 0;
    CHECK(cli::run(bad, out, log) == cli::kValidation);
    cli::JobConfig bad_alpha;
    bad_alpha.space = SpaceSpec::rational(4, 1);
    bad_alpha.alpha = 0;
    bad_alpha.command = "sample";
    CHECK(cli::run(bad_alpha, out, log) == cli::kValidation);
    cli::JobConfig ok;
    ok.grid = 3;
    CHECK(cli::run(ok, out, log) == cli::kOk);
    cli::JobConfig verify;
    verify.command = "verify";
    verify.space = SpaceSpec::rational(4, 1);
    verify.alpha = pi / 2;
    CHECK(cli::run(verify, out, log) == cli::kOk);
}

TEST_CASE("figure files follow the schema and match the library") {
    const auto dir = scratch_dir();
    for (const auto& space : {SpaceSpec::airy(), SpaceSpec::bessel(0.5), SpaceSpec::bessel(0)}) {
        cli::JobConfig job;
        job.command = "figures";
        job.space = space;
        job.grid = 57;
        job.out = (dir / "fig.csv").string();
        std::ostringstream sink;
        REQUIRE(cli::run(job, sink, sink) == cli::kOk);
        const auto iv = cli::default_interval(space, "figures");
        for (auto [suffix, column] : {std::pair{"fig_rho1.csv", "rho1"}, std::pair{"fig_phi_prime.csv", "phi_prime"}}) {
            const auto p = parse_csv(slurp(dir / suffix));
            CHECK(meta_value(p, "schema_version") == "1");
            CHECK(meta_value(p, "kind") == std::string("figure_") + column);
            CHECK(cli::config_from_json(io::json::parse(meta_value(p, "config"))).space.family == space.family);
            REQUIRE(p.columns == std::vector<std::string>{"x", column});
            REQUIRE(p.rows.size() == 57);
            CHECK(p.rows.front()[0] == iv.lo);
            CHECK(p.rows.back()[0] == iv.hi);
            for (const auto& r : p.rows) {
                const double expect = std::string(column) == "rho1" ? rho1_closed(space, r[0]) : phase_derivatives(space, r[0]).d1;
                CHECK(std::abs(r[1] - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
            }
        }
    }
    cli::JobConfig pw;
    pw.command = "figures";
    std::ostringstream sink;
    CHECK(cli::run(pw, sink, sink) == cli::kValidation);
    fs::remove_all(dir);
}
