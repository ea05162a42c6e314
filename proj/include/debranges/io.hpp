#pragma once

// Serialization: JSON documents and CSV tables with `#` metadata lines.
// Numbers are written in shortest round-trip form.

#include <string>
#include <vector>

#include <json.hpp>

#include "debranges/gaf.hpp"
#include "debranges/intensity.hpp"
#include "debranges/rigidity.hpp"
#include "debranges/stats.hpp"

namespace debranges::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Shortest decimal string that parses back to the same double; "inf",
/// "-inf" and "nan" for non-finite values.
std::string format_number(double v);
/// JSON value for a double: a number when finite, else the string form.
json number(double v);
/// Inverse of number(): accepts numbers and the strings "inf", "-inf", "nan".
double to_double(const json& j);

json to_json(const SpaceSpec& s);
SpaceSpec space_from_json(const json& j);

json to_json(const BasisPoints& b);
json to_json(const IntensityCurve& c);
json to_json(const GafSample& s);
json to_json(const ZeroSet& z);
json to_json(const CountHistogram& h);
json to_json(const CurveComparison& c);
json to_json(const CountMoments& m);
json to_json(const Orbit& o);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// `# key: value` lines for each metadata entry, then header and rows.
std::string to_csv(const CsvTable& table, const json& metadata);

CsvTable table(const IntensityCurve& c);
CsvTable table(const CountHistogram& h, const CurveComparison* cmp = nullptr);
CsvTable table(const ZeroSet& z);

void write_file(const std::string& path, const std::string& content);

}  // namespace debranges::io
