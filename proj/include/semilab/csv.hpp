#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "semilab/trace.hpp"
#include "semilab/util.hpp"

namespace semilab {

inline void write_text_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out << body;
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string trace_csv_body(const TrajectoryTrace& trace) {
    std::string body = "t,value\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        body += format_double(trace.times[i]);
        body += ',';
        body += format_double(trace.values[i]);
        body += '\n';
    }
    return body;
}

inline void write_trace_csv(const std::filesystem::path& path, const TrajectoryTrace& trace) {
    write_text_file(path, trace_csv_body(trace));
}

/// Reads a `t,value` CSV produced by write_trace_csv (or any two-column
/// numeric CSV with a single header row).
inline TrajectoryTrace read_trace_csv(const std::filesystem::path& path, std::string label = "") {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace csv: " + path.string());
    TrajectoryTrace trace;
    trace.label = label.empty() ? path.filename().string() : std::move(label);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (lineno == 1) continue;  // header
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": expected `t,value`");
        try {
            trace.times.push_back(std::stod(line.substr(0, comma)));
            trace.values.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": malformed number");
        }
    }
    trace.validate();
    return trace;
}

}  // namespace semilab
