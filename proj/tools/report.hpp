#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace truncprod::cli {

/// Column-oriented numeric table plus the fully resolved experiment spec.
/// The spec (including derived quantities, seed and tool version) is embedded
/// in every output file so a run can be reproduced from the file alone.
struct Report {
    nlohmann::json spec;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Shortest-roundtrip decimal rendering of a double (deterministic bytes).
std::string format_double(double v);

/// CSV with one leading comment line carrying the spec as JSON.
std::string render_csv(const Report& report);

/// JSON object {"spec":..., "columns":..., "rows":...}.
std::string render_json(const Report& report);

/// Renders and writes in one shot; "-" writes to stdout. The file is only
/// created once the full contents exist, so failed runs leave nothing behind.
void write_report(const Report& report, const std::string& path, const std::string& format);

}  // namespace truncprod::cli
