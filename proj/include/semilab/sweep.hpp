#pragma once

#include <atomic>
#include <cmath>
#include <filesystem>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "semilab/scenario.hpp"

namespace semilab {

struct SweepAxis {
    std::string param;  // dotted path into the scenario json, e.g. "model.gamma"
    double min = 0.0;
    double max = 0.0;
    int steps = 2;
    bool log_spacing = false;

    double value(int i) const {
        if (steps == 1) return min;
        if (log_spacing) {
            const double f = static_cast<double>(i) / (steps - 1);
            return min * std::pow(max / min, f);
        }
        return min + (max - min) * static_cast<double>(i) / (steps - 1);
    }
};

struct SweepSpec {
    json base;  // scenario body, axes applied on top
    std::vector<SweepAxis> axes;
    std::string output_dir = "sweep";
    static constexpr int kMaxCells = 10000;
};

inline SweepSpec parse_sweep(const json& j) {
    SweepSpec spec;
    spec.base = cfg::member(j, "", "base");
    spec.output_dir = cfg::text_or(j, "output_dir", "sweep");
    const json& axes = cfg::member(j, "", "axes");
    if (!axes.is_array() || axes.empty() || axes.size() > 2)
        throw ConfigError("key `axes` must hold 1 or 2 entries");
    for (const auto& a : axes) {
        SweepAxis axis;
        axis.param = cfg::member(a, "axes[]", "param").get<std::string>();
        axis.min = cfg::number(a, "axes[]", "min");
        axis.max = cfg::number(a, "axes[]", "max");
        axis.steps = static_cast<int>(cfg::integer_or(a, "axes[]", "steps", 0));
        if (axis.steps < 2 && !(axis.steps == 1 && axes.size() == 1))
            throw ConfigError("key `axes[].steps` must be >= 2");
        const std::string spacing = cfg::text_or(a, "spacing", "linear");
        if (spacing == "log") {
            require(axis.min > 0.0 && axis.max > 0.0, "log axis needs positive bounds");
            axis.log_spacing = true;
        } else if (spacing != "linear") {
            throw ConfigError("key `axes[].spacing` must be `linear` or `log`");
        }
        spec.axes.push_back(axis);
    }
    long cells = 1;
    for (const auto& a : spec.axes) cells *= a.steps;
    if (cells > SweepSpec::kMaxCells)
        throw ConfigError("sweep has " + std::to_string(cells) + " cells, limit is " +
                          std::to_string(SweepSpec::kMaxCells));
    // probe the axes against the base up front so every cell failure is a
    // config error here, not inside a worker
    try {
        json probe = spec.base;
        for (const auto& a : spec.axes) cfg::set_path(probe, a.param, a.min);
        parse_scenario(probe);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("sweep axes do not fit the base scenario: ") + e.what());
    }
    return spec;
}

inline SweepSpec load_sweep(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_sweep(j);
}

struct SweepCell {
    int index = 0;
    double p1 = 0.0;
    std::optional<double> p2;
    Verdict verdict = Verdict::inconclusive;
    double dip_ratio = 0.0;
    double growth_ratio = 0.0;
    bool overflow = false;
    std::optional<SpectralIndicators> spectral;
    bool dip_then_double = false;  // energy dips below E0/2 before exceeding 2 E0
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::optional<int> first_decaying;
    std::optional<int> first_growing;
    std::optional<int> first_dip_then_double;
    std::filesystem::path out_dir;
};

namespace detail {

inline bool trace_dips_then_doubles(const TrajectoryTrace& trace) {
    if (trace.empty()) return false;
    const double v0 = trace.values.front();
    if (v0 <= 0.0) return false;
    bool dipped = false;
    for (double v : trace.values) {
        if (v < 0.5 * v0) dipped = true;
        if (dipped && v > 2.0 * v0) return true;
    }
    return false;
}

}  // namespace detail

/// Evaluates every cell of the grid (order-independent, optionally in
/// parallel) and assembles rows sorted by cell index. Cell overflow is
/// recorded in-row and never aborts the sweep.
inline SweepResult run_sweep(const SweepSpec& spec, const RunOptions& opt = {}, int jobs = 1) {
    const int n1 = spec.axes[0].steps;
    const int n2 = spec.axes.size() > 1 ? spec.axes[1].steps : 1;
    const int total = n1 * n2;

    SweepResult result;
    result.cells.resize(static_cast<std::size_t>(total));

    auto eval_cell = [&](int idx) {
        const int i1 = idx / n2;
        const int i2 = idx % n2;
        json body = spec.base;
        SweepCell cell;
        cell.index = idx;
        cell.p1 = spec.axes[0].value(i1);
        cfg::set_path(body, spec.axes[0].param, cell.p1);
        if (spec.axes.size() > 1) {
            cell.p2 = spec.axes[1].value(i2);
            cfg::set_path(body, spec.axes[1].param, *cell.p2);
        }
        try {
            const Scenario sc = parse_scenario(body);
            const RunProducts p = evaluate_scenario(sc);
            cell.verdict = p.verdict.verdict;
            cell.overflow = p.overflow;
            if (p.summarized) {
                cell.dip_ratio = p.summary.dip_ratio;
                cell.growth_ratio = p.summary.growth_ratio;
            }
            cell.spectral = p.spectral;
            cell.dip_then_double = detail::trace_dips_then_doubles(p.trace);
        } catch (const std::exception&) {
            cell.verdict = Verdict::inconclusive;  // recorded in-row, sweep continues
            cell.overflow = true;
        }
        result.cells[static_cast<std::size_t>(idx)] = std::move(cell);
    };

    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (int idx = 0; idx < total; ++idx) eval_cell(idx);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(jobs));
        for (int w = 0; w < jobs; ++w) {
            pool.emplace_back([&] {
                for (int idx = next.fetch_add(1); idx < total; idx = next.fetch_add(1))
                    eval_cell(idx);
            });
        }
        for (auto& t : pool) t.join();
    }

    for (const auto& cell : result.cells) {
        if (cell.verdict == Verdict::decaying && !result.first_decaying)
            result.first_decaying = cell.index;
        if (cell.verdict == Verdict::growing && !result.first_growing)
            result.first_growing = cell.index;
        if (cell.dip_then_double && !result.first_dip_then_double)
            result.first_dip_then_double = cell.index;
    }

    if (!opt.write_files) return result;

    namespace fs = std::filesystem;
    fs::path dir(spec.output_dir);
    if (dir.is_relative() && !opt.output_root.empty()) dir = opt.output_root / dir;
    fs::create_directories(dir);
    result.out_dir = dir;

    std::string body = "param1,param2,verdict,dip_ratio,growth_ratio,rho,region_meets_iR\n";
    for (const auto& cell : result.cells) {
        body += format_double(cell.p1);
        body += ',';
        if (cell.p2) body += format_double(*cell.p2);
        body += ',';
        body += to_string(cell.verdict);
        body += ',' + format_double(cell.dip_ratio);
        body += ',' + format_double(cell.growth_ratio);
        body += ',';
        if (cell.spectral) body += format_double(cell.spectral->rho);
        body += ',';
        if (cell.spectral) body += detail::csv_bool(cell.spectral->region_meets_imaginary_axis);
        body += '\n';
    }
    write_text_file(dir / "regime_map.csv", body);

    json manifest;
    manifest["artifact_version"] = kVersion;
    manifest["sweep"] = {{"axes", json::array()}, {"cells", total}};
    for (const auto& a : spec.axes) {
        manifest["sweep"]["axes"].push_back({{"param", a.param},
                                             {"min", a.min},
                                             {"max", a.max},
                                             {"steps", a.steps},
                                             {"spacing", a.log_spacing ? "log" : "linear"}});
    }
    manifest["base"] = spec.base;
    auto witness = [&](const std::optional<int>& idx) -> json {
        if (!idx) return nullptr;
        const auto& c = result.cells[static_cast<std::size_t>(*idx)];
        json w = {{"index", c.index}, {"param1", c.p1}};
        if (c.p2) w["param2"] = *c.p2;
        return w;
    };
    manifest["witnesses"] = {{"decaying", witness(result.first_decaying)},
                             {"growing", witness(result.first_growing)},
                             {"dip_then_double", witness(result.first_dip_then_double)}};
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return result;
}

}  // namespace semilab
