#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "debranges/io.hpp"

namespace debranges::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kVerification = 2, kNumeric = 3 };

struct JobConfig {
    std::string command = "intensity";
    SpaceSpec space = SpaceSpec::paley_wiener(std::numbers::pi);
    double alpha = 0;
    std::optional<Interval> interval;  ///< family default when absent
    int grid = 201;
    int samples = 1000;
    std::uint64_t seed = 1;
    int bins = 10;
    std::vector<std::string> methods{"closed"};
    std::string out;  ///< empty: stdout
    std::string format = "csv";
    int workers = 0;
    double tol = 1e-12;
    std::vector<double> orbit_c{8.5, 10, 100, 1e4};
    double t0 = 0;

    /// Throws ValidationError naming the offending field.
    void validate() const;
};

io::json to_json(const JobConfig& c);
JobConfig config_from_json(const io::json& j);
/// Reads a JSON config, a JSON output document (uses its "config"), or a CSV
/// output (uses its "# config:" line).
JobConfig config_from_file(const std::string& path);

/// 0, except pi/2 for Rational where 0 is the exceptional value.
double default_alpha(const SpaceSpec& space);
Interval default_interval(const SpaceSpec& space, const std::string& command);

/// Runs a job; writes to c.out (or `out` when empty). Returns an ExitCode.
int run(const JobConfig& c, std::ostream& out, std::ostream& log);

/// Flag parsing front end used by the executable.
int main(int argc, char** argv);

}  // namespace debranges::cli
