#include "report.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace truncprod::cli {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string render_csv(const Report& report) {
    std::string out = "# " + report.spec.dump() + "\n";
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
        if (c) out += ',';
        out += report.columns[c];
    }
    out += '\n';
    for (const auto& row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_double(row[c]);
        }
        out += '\n';
    }
    return out;
}

std::string render_json(const Report& report) {
    nlohmann::json j;
    j["spec"] = report.spec;
    j["columns"] = report.columns;
    j["rows"] = report.rows;
    return j.dump(2) + "\n";
}

void write_report(const Report& report, const std::string& path, const std::string& format) {
    std::string text;
    if (format == "csv") {
        text = render_csv(report);
    } else if (format == "json") {
        text = render_json(report);
    } else {
        throw std::invalid_argument("unknown output format: " + format);
    }
    if (path == "-" || path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    file << text;
    if (!file.good()) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace truncprod::cli
