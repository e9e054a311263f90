#pragma once

#include <cctype>
#include <chrono>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "semilab/bump_spike.hpp"
#include "semilab/classify.hpp"
#include "semilab/csv.hpp"
#include "semilab/deviation.hpp"
#include "semilab/diagonal_model.hpp"
#include "semilab/matrix_model.hpp"
#include "semilab/robin_pde.hpp"
#include "semilab/spectral.hpp"
#include "semilab/splitting_model.hpp"
#include "semilab/trace.hpp"
#include "semilab/version.hpp"

namespace semilab {

using json = nlohmann::json;

/// Raised on malformed or inconsistent configuration; the CLI maps it to the
/// config-error exit code.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace cfg {

inline const json& member(const json& j, const std::string& ctx, const std::string& key) {
    if (!j.is_object() || !j.contains(key))
        throw ConfigError("missing key `" + (ctx.empty() ? key : ctx + "." + key) + "`");
    return j.at(key);
}

inline double number(const json& j, const std::string& ctx, const std::string& key) {
    const json& v = member(j, ctx, key);
    if (!v.is_number()) throw ConfigError("key `" + ctx + "." + key + "` must be a number");
    return v.get<double>();
}

inline double number_or(const json& j, const std::string& ctx, const std::string& key,
                        double fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return number(j, ctx, key);
}

inline std::int64_t integer_or(const json& j, const std::string& ctx, const std::string& key,
                               std::int64_t fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) throw ConfigError("key `" + ctx + "." + key + "` must be an integer");
    return v.get<std::int64_t>();
}

inline std::string text_or(const json& j, const std::string& key, std::string fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    if (!j.at(key).is_string()) throw ConfigError("key `" + key + "` must be a string");
    return j.at(key).get<std::string>();
}

/// Writes a numeric value at a dotted path ("model.gamma"), creating objects
/// along the way. Shared by the CLI overrides and the sweep axes.
inline void set_path(json& j, const std::string& dotted, double value) {
    json* cur = &j;
    std::size_t start = 0;
    while (true) {
        const std::size_t dot = dotted.find('.', start);
        const std::string key = dotted.substr(start, dot == std::string::npos ? dot : dot - start);
        if (key.empty()) throw ConfigError("bad parameter path `" + dotted + "`");
        if (dot == std::string::npos) {
            (*cur)[key] = value;
            return;
        }
        cur = &(*cur)[key];
        start = dot + 1;
    }
}

}  // namespace cfg

enum class ModelKind { diagonal, rotation, matrix, bumpspike, splitting, pde };

struct InitialSpec {
    std::string kind = "default";
    std::int64_t index = 0;                       // basis
    std::vector<std::complex<double>> coeffs;     // coeffs
    std::vector<double> stable;                   // splitting stable part
    double center = 0.0, width = 0.0, amplitude = 1.0, rate = 0.0;  // pde samplers
    std::int64_t modes = 16;                      // noise
};

struct Scenario {
    std::string label = "run";
    std::uint64_t seed = 0;
    std::string output_dir;
    ClassifierThresholds thresholds;
    json raw;

    ModelKind kind = ModelKind::diagonal;

    // synthetic models
    std::vector<std::complex<double>> diag_rates;
    Eigen::MatrixXd generator;
    BumpSpikeConfig bump;
    SplittingModelConfig splitting;
    double horizon = 50.0;
    double dt = 0.0;  // 0 -> model default

    // pde
    RobinParams pde;
    double L = 12.0;
    int N = 200;
    double T = 1.0;
    int save_every = 1;
    double safety = 0.9;
    std::optional<double> dt_request;
    RobinBoundary boundary = RobinBoundary::one_sided_first_order;
    int snapshot_count = 5;
    std::string solver = "direct";

    InitialSpec initial;
    std::string reference_kind = "zero";
    std::vector<std::complex<double>> reference_coeffs;
};

namespace detail {

inline std::vector<std::complex<double>> parse_complex_list(const json& arr,
                                                            const std::string& ctx) {
    if (!arr.is_array() || arr.empty())
        throw ConfigError("key `" + ctx + "` must be a non-empty array");
    std::vector<std::complex<double>> out;
    for (const auto& v : arr) {
        if (v.is_number()) {
            out.emplace_back(v.get<double>(), 0.0);
        } else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            out.emplace_back(v[0].get<double>(), v[1].get<double>());
        } else {
            throw ConfigError("entries of `" + ctx + "` must be numbers or [re, im] pairs");
        }
    }
    return out;
}

inline BumpSpikeConfig parse_bump_spike(const json& j, const std::string& ctx) {
    if (j.contains("bump_positions")) {
        BumpSpikeConfig cfg;
        cfg.h = cfg::number_or(j, ctx, "h", 1.0);
        for (const auto& v : cfg::member(j, ctx, "bump_positions")) cfg.bump_positions.push_back(v.get<std::int64_t>());
        for (const auto& v : cfg::member(j, ctx, "bump_amplitudes")) cfg.bump_amplitudes.push_back(v.get<double>());
        for (const auto& v : cfg::member(j, ctx, "spike_positions")) cfg.spike_positions.push_back(v.get<std::int64_t>());
        for (const auto& v : cfg::member(j, ctx, "spike_heights")) cfg.spike_heights.push_back(v.get<double>());
        cfg.validate();
        return cfg;
    }
    const auto K = cfg::integer_or(j, ctx, "K", 24);
    return default_bump_spike_config(static_cast<int>(K));
}

}  // namespace detail

inline Scenario parse_scenario(const json& j) {
    Scenario sc;
    sc.raw = j;
    sc.label = cfg::text_or(j, "label", "run");
    sc.output_dir = cfg::text_or(j, "output_dir", "");
    if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();

    if (j.contains("thresholds")) {
        const json& t = j.at("thresholds");
        sc.thresholds.burn_in_fraction =
            cfg::number_or(t, "thresholds", "burn_in_fraction", sc.thresholds.burn_in_fraction);
        sc.thresholds.eps_dip = cfg::number_or(t, "thresholds", "eps_dip", sc.thresholds.eps_dip);
        sc.thresholds.big_growth =
            cfg::number_or(t, "thresholds", "big_growth", sc.thresholds.big_growth);
        if (t.contains("band")) {
            const json& b = t.at("band");
            if (!b.is_array() || b.size() != 2)
                throw ConfigError("key `thresholds.band` must be [lo, hi]");
            sc.thresholds.band_lo = b[0].get<double>();
            sc.thresholds.band_hi = b[1].get<double>();
        }
        sc.thresholds.validate();
    }

    const json& model = cfg::member(j, "", "model");
    const std::string kind = cfg::member(model, "model", "kind").get<std::string>();

    if (kind == "diagonal") {
        sc.kind = ModelKind::diagonal;
        sc.diag_rates = detail::parse_complex_list(cfg::member(model, "model", "rates"), "model.rates");
    } else if (kind == "rotation") {
        sc.kind = ModelKind::rotation;
        for (const auto& v : cfg::member(model, "model", "frequencies"))
            sc.diag_rates.emplace_back(0.0, v.get<double>());
        if (sc.diag_rates.empty()) throw ConfigError("key `model.frequencies` must be non-empty");
    } else if (kind == "matrix") {
        sc.kind = ModelKind::matrix;
        const json& rows = cfg::member(model, "model", "generator");
        if (!rows.is_array() || rows.empty()) throw ConfigError("key `model.generator` must be an array of rows");
        const auto n = static_cast<Eigen::Index>(rows.size());
        sc.generator.resize(n, n);
        for (Eigen::Index r = 0; r < n; ++r) {
            const json& row = rows[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
                throw ConfigError("key `model.generator` must be square");
            for (Eigen::Index c = 0; c < n; ++c)
                sc.generator(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    } else if (kind == "bumpspike") {
        sc.kind = ModelKind::bumpspike;
        sc.bump = detail::parse_bump_spike(model, "model");
    } else if (kind == "splitting") {
        sc.kind = ModelKind::splitting;
        if (model.contains("stable_rates")) {
            sc.splitting.stable_rates.clear();
            for (const auto& v : model.at("stable_rates")) sc.splitting.stable_rates.push_back(v.get<double>());
        } else {
            sc.splitting.stable_rates = {-1.0};
        }
        sc.splitting.omega_s = cfg::number_or(model, "model", "omega_s", 1.0);
        sc.splitting.M_s = cfg::number_or(model, "model", "M_s", 1.0);
        sc.splitting.M_u = cfg::number_or(model, "model", "M_u", 1.0);
        sc.splitting.omega_u = cfg::number_or(model, "model", "omega_u", 0.0);
        sc.splitting.unstable = model.contains("unstable")
                                    ? detail::parse_bump_spike(model.at("unstable"), "model.unstable")
                                    : default_bump_spike_config();
        sc.splitting.validate();
    } else if (kind == "pde") {
        sc.kind = ModelKind::pde;
        sc.pde.alpha = cfg::number(model, "model", "alpha");
        sc.pde.beta = cfg::number(model, "model", "beta");
        sc.pde.gamma = cfg::number(model, "model", "gamma");
        sc.pde.kappa = cfg::number(model, "model", "kappa");
        sc.pde.validate();
        sc.solver = cfg::text_or(model, "solver", "direct");
        if (sc.solver != "direct" && sc.solver != "conjugated")
            throw ConfigError("key `model.solver` must be `direct` or `conjugated`");
    } else {
        throw ConfigError("unknown `model.kind`: " + kind);
    }

    if (sc.kind == ModelKind::pde) {
        const json& grid = cfg::member(j, "", "grid");
        sc.L = cfg::number(grid, "grid", "L");
        sc.N = static_cast<int>(cfg::integer_or(grid, "grid", "N", 0));
        if (sc.N == 0) throw ConfigError("missing key `grid.N`");
        sc.T = cfg::number(grid, "grid", "T");
        sc.save_every = static_cast<int>(cfg::integer_or(grid, "grid", "save_every", 1));
        sc.safety = cfg::number_or(grid, "grid", "safety", 0.9);
        if (grid.contains("dt")) sc.dt_request = grid.at("dt").get<double>();
        sc.snapshot_count = static_cast<int>(cfg::integer_or(grid, "grid", "snapshot_count", 5));
        const std::string bnd = cfg::text_or(grid, "boundary", "one_sided");
        if (bnd == "one_sided") sc.boundary = RobinBoundary::one_sided_first_order;
        else if (bnd == "ghost") sc.boundary = RobinBoundary::ghost_second_order;
        else throw ConfigError("key `grid.boundary` must be `one_sided` or `ghost`");
    } else {
        const json* time = j.contains("time") ? &j.at("time") : nullptr;
        if (!time) throw ConfigError("missing key `time`");
        sc.horizon = cfg::number(*time, "time", "horizon");
        sc.dt = cfg::number_or(*time, "time", "dt", 0.0);
        if (sc.horizon <= 0.0) throw ConfigError("key `time.horizon` must be > 0");
    }

    if (j.contains("initial")) {
        const json& ini = j.at("initial");
        sc.initial.kind = cfg::text_or(ini, "kind", "default");
        sc.initial.index = cfg::integer_or(ini, "initial", "index", 0);
        if (ini.contains("values"))
            sc.initial.coeffs = detail::parse_complex_list(ini.at("values"), "initial.values");
        if (ini.contains("stable"))
            for (const auto& v : ini.at("stable")) sc.initial.stable.push_back(v.get<double>());
        sc.initial.center = cfg::number_or(ini, "initial", "center", -1.0);
        sc.initial.width = cfg::number_or(ini, "initial", "width", -1.0);
        sc.initial.amplitude = cfg::number_or(ini, "initial", "amplitude", 1.0);
        sc.initial.rate = cfg::number_or(ini, "initial", "rate", 1.0);
        sc.initial.modes = cfg::integer_or(ini, "initial", "modes", 16);
    } else {
        sc.initial.center = -1.0;
        sc.initial.width = -1.0;
    }

    if (j.contains("reference")) {
        const json& ref = j.at("reference");
        sc.reference_kind = cfg::text_or(ref, "kind", "zero");
        if (sc.reference_kind == "coeffs")
            sc.reference_coeffs = detail::parse_complex_list(cfg::member(ref, "reference", "values"),
                                                             "reference.values");
        else if (sc.reference_kind != "zero")
            throw ConfigError("key `reference.kind` must be `zero` or `coeffs`");
    }
    return sc;
}

inline Scenario load_scenario(const std::filesystem::path& path) {
    json j;
    try {
        j = json::parse(read_text_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
    return parse_scenario(j);
}

struct RunProducts {
    TrajectoryTrace trace;
    DeviationSummary summary;
    bool summarized = false;
    VerdictRecord verdict;
    std::optional<SpectralIndicators> spectral;
    std::vector<std::string> warnings;
    bool overflow = false;
    std::optional<PdeRun> pde_run;  // kept for snapshots / diagnostics
    std::optional<std::vector<CrossingCertificate>> certificate;
    double perturb_gap = -1.0;  // gap reported by the density sampler, if used
};

namespace detail {

inline std::vector<std::complex<double>> initial_coeffs(const Scenario& sc, std::size_t dim) {
    const InitialSpec& ini = sc.initial;
    if (ini.kind == "coeffs") {
        if (ini.coeffs.size() != dim) throw ConfigError("initial.values has wrong dimension");
        return ini.coeffs;
    }
    if (ini.kind == "basis" || ini.kind == "default") {
        if (ini.index < 0 || static_cast<std::size_t>(ini.index) >= dim)
            throw ConfigError("initial.index out of range");
        std::vector<std::complex<double>> u(dim, 0.0);
        u[static_cast<std::size_t>(ini.index)] = 1.0;
        return u;
    }
    if (ini.kind == "random_unit") {
        std::mt19937_64 rng(sc.seed);
        std::vector<std::complex<double>> u(dim);
        double norm2 = 0.0;
        for (auto& c : u) {
            c = {gaussian01(rng), gaussian01(rng)};
            norm2 += std::norm(c);
        }
        require(norm2 > 0.0, "random initial state degenerated to zero");
        for (auto& c : u) c /= std::sqrt(norm2);
        return u;
    }
    throw ConfigError("unsupported initial.kind `" + ini.kind + "` for this model");
}

inline std::function<double(double)> pde_initial_sampler(const Scenario& sc) {
    const InitialSpec& ini = sc.initial;
    const double center = ini.center >= 0.0 ? ini.center : sc.L / 4.0;
    const double width = ini.width > 0.0 ? ini.width : sc.L / 16.0;
    if (ini.kind == "gaussian" || ini.kind == "default")
        return gaussian_bump(center, width, ini.amplitude);
    if (ini.kind == "boundary_layer") return boundary_layer(ini.rate, ini.amplitude);
    if (ini.kind == "eigenmode") return eigenmode_data(sc.pde);
    if (ini.kind == "noise")
        return band_limited_noise(sc.L, static_cast<int>(ini.modes), ini.amplitude, sc.seed);
    throw ConfigError("unsupported initial.kind `" + ini.kind + "` for the pde model");
}

template <class Model>
TrajectoryTrace synthetic_deviation(const Scenario& sc, const Model& model,
                                    const typename Model::state_type& u0) {
    double dt = sc.dt;
    if (dt <= 0.0) dt = model.grid_step() > 0.0 ? model.grid_step() : sc.horizon / 512.0;
    const auto times = uniform_times(sc.horizon, dt);
    ReferenceState<typename Model::state_type> uref = make_zero_reference(model);
    return deviation_trace(model, u0, uref, times, sc.label);
}

}  // namespace detail

/// Runs a scenario in memory: builds the model, produces the deviation or
/// energy trace, classifies it, and attaches spectral indicators for the pde
/// model. File output is a separate concern (run_scenario).
inline RunProducts evaluate_scenario(const Scenario& sc) {
    RunProducts out;
    switch (sc.kind) {
        case ModelKind::diagonal:
        case ModelKind::rotation: {
            DiagonalModel model(sc.diag_rates);
            auto u0 = detail::initial_coeffs(sc, model.dimension());
            if (sc.reference_kind == "coeffs") {
                auto ref = make_checked_reference(model, sc.reference_coeffs,
                                                  {0.5, 1.0, 2.0}, 1e-9);
                double dt = sc.dt > 0.0 ? sc.dt : sc.horizon / 512.0;
                out.trace = deviation_trace(model, u0, ref, uniform_times(sc.horizon, dt), sc.label);
            } else {
                out.trace = detail::synthetic_deviation(sc, model, u0);
            }
            break;
        }
        case ModelKind::matrix: {
            MatrixModel model(sc.generator);
            const auto dim = static_cast<std::size_t>(model.dimension());
            auto coeffs = detail::initial_coeffs(sc, dim);
            MatrixModel::state_type u0(model.dimension());
            for (std::size_t i = 0; i < dim; ++i) {
                if (coeffs[i].imag() != 0.0)
                    throw ConfigError("matrix model initial data must be real");
                u0[static_cast<Eigen::Index>(i)] = coeffs[i].real();
            }
            out.trace = detail::synthetic_deviation(sc, model, u0);
            break;
        }
        case ModelKind::bumpspike: {
            BumpSpikeModel model(sc.bump);
            out.trace = detail::synthetic_deviation(sc, model, model.initial_state());
            out.certificate = crossing_certificate(sc.bump);
            break;
        }
        case ModelKind::splitting: {
            SplittingModel model(sc.splitting);
            std::vector<double> stable = sc.initial.stable;
            if (stable.empty()) stable.assign(sc.splitting.stable_rates.size(), 1.0);
            auto u0 = model.initial_state(std::move(stable));
            if (sc.initial.kind == "stable_only") {
                u0.unstable = {};
                auto perturbed = perturb_to_chaotic(model, std::move(u0), 0.01);
                u0 = std::move(perturbed.state);
                out.perturb_gap = perturbed.gap;
            } else if (sc.initial.kind == "unstable_only") {
                std::fill(u0.stable.begin(), u0.stable.end(), 0.0);
            }
            out.trace = detail::synthetic_deviation(sc, model, u0);
            out.certificate = crossing_certificate(sc.splitting.unstable);
            break;
        }
        case ModelKind::pde: {
            const GridSpec grid = GridSpec::make(sc.pde, sc.L, sc.N, sc.T, sc.save_every,
                                                 sc.safety, sc.dt_request, sc.boundary);
            auto sampler = detail::pde_initial_sampler(sc);
            PdeRun run = sc.solver == "conjugated" ? solve_conjugated(sc.pde, grid, sampler)
                                                   : solve_direct(sc.pde, grid, sampler);
            out.trace = energy_trace(run, sc.label);
            out.warnings = run.warnings;
            out.spectral = dsw_indicator(sc.pde);
            out.pde_run = std::move(run);
            break;
        }
    }

    out.overflow = out.trace.overflow;
    if (!out.trace.empty() && out.trace.values.front() > 0.0) {
        out.summary = summarize(out.trace, sc.thresholds);
        out.summarized = true;
        out.verdict = classify(out.summary, sc.thresholds);
    } else {
        out.verdict.thresholds = sc.thresholds;
        out.verdict.verdict = Verdict::inconclusive;
        out.verdict.explanation = out.trace.empty()
                                      ? "trace is empty (overflow before the first sample)"
                                      : "initial deviation is zero; classification skipped";
    }
    return out;
}

// --- persistence -----------------------------------------------------------

struct RunOptions {
    std::filesystem::path output_root;  // empty -> current directory
    bool write_files = true;
};

namespace detail {

inline std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '-';
    return out.empty() ? "run" : out;
}

inline std::string csv_bool(bool b) { return b ? "1" : "0"; }

inline std::string verdict_csv(const std::string& label, const RunProducts& p) {
    std::string row = "label,verdict,dip_ratio,growth_ratio,t_min,t_max,alternations,overflow,"
                      "rho,region_meets_iR,lambda_kappa\n";
    row += label;
    row += ',';
    row += to_string(p.verdict.verdict);
    if (p.summarized) {
        row += ',' + format_double(p.summary.dip_ratio);
        row += ',' + format_double(p.summary.growth_ratio);
        row += ',' + format_double(p.summary.t_min);
        row += ',' + format_double(p.summary.t_max);
        row += ',' + std::to_string(p.summary.alternation_count);
        row += ',' + csv_bool(p.summary.overflow);
    } else {
        row += ",,,,,," + csv_bool(p.overflow);
    }
    if (p.spectral) {
        row += ',' + format_double(p.spectral->rho);
        row += ',' + csv_bool(p.spectral->region_meets_imaginary_axis);
        row += ',';
        if (p.spectral->lambda_kappa) row += format_double(*p.spectral->lambda_kappa);
    } else {
        row += ",,,";
    }
    row += '\n';
    return row;
}

inline std::string verdict_text(const std::string& label, const RunProducts& p) {
    std::string out;
    out += "label=" + label + "\n";
    out += std::string("verdict=") + to_string(p.verdict.verdict) + "\n";
    out += "explanation=" + p.verdict.explanation + "\n";
    if (p.summarized) {
        out += "initial=" + format_double(p.summary.initial) + "\n";
        out += "min_after_burn=" + format_double(p.summary.min_after_burn) + "\n";
        out += "max_overall=" + format_double(p.summary.max_overall) + "\n";
        out += "dip_ratio=" + format_double(p.summary.dip_ratio) + "\n";
        out += "growth_ratio=" + format_double(p.summary.growth_ratio) + "\n";
        out += "t_min=" + format_double(p.summary.t_min) + "\n";
        out += "t_max=" + format_double(p.summary.t_max) + "\n";
        out += "alternation_count=" + std::to_string(p.summary.alternation_count) + "\n";
        out += "final_window_median=" + format_double(p.summary.final_window_median) + "\n";
    }
    out += "overflow=" + csv_bool(p.overflow) + "\n";
    out += "eps_dip=" + format_double(p.verdict.thresholds.eps_dip) + "\n";
    out += "big_growth=" + format_double(p.verdict.thresholds.big_growth) + "\n";
    out += "band=[" + format_double(p.verdict.thresholds.band_lo) + "," +
           format_double(p.verdict.thresholds.band_hi) + "]\n";
    out += "burn_in_fraction=" + format_double(p.verdict.thresholds.burn_in_fraction) + "\n";
    if (p.spectral) {
        out += "rho=" + format_double(p.spectral->rho) + "\n";
        out += "eta=" + format_double(p.spectral->eta) + "\n";
        out += "rho_positive=" + csv_bool(p.spectral->rho_positive) + "\n";
        out += "region_meets_iR=" + csv_bool(p.spectral->region_meets_imaginary_axis) + "\n";
        if (p.spectral->lambda_kappa) {
            out += "lambda_kappa=" + format_double(*p.spectral->lambda_kappa) + "\n";
            out += "lambda_kappa_positive=" + csv_bool(*p.spectral->lambda_kappa_positive) + "\n";
        }
    }
    if (p.perturb_gap >= 0.0) out += "perturbation_gap=" + format_double(p.perturb_gap) + "\n";
    return out;
}

inline std::string field_csv(const Field& f, double h) {
    std::string body = "x,u\n";
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        body += format_double(static_cast<double>(i) * h);
        body += ',';
        body += format_double(f.samples[i]);
        body += '\n';
    }
    return body;
}

inline std::string certificate_csv(const std::vector<CrossingCertificate>& rows) {
    std::string body = "k,t_k,peak_lower_bound\n";
    for (const auto& r : rows) {
        body += std::to_string(r.k);
        body += ',' + std::to_string(r.t_k);
        body += ',' + format_double(r.peak_lower_bound);
        body += '\n';
    }
    return body;
}

}  // namespace detail

/// Runs the scenario and writes trace, verdict, manifest and the
/// model-specific artifacts into the output directory. Returns the products
/// along with everything already computed.
inline RunProducts run_scenario(const Scenario& sc, const RunOptions& opt = {}) {
    namespace fs = std::filesystem;
    const auto t_start = std::chrono::steady_clock::now();
    RunProducts p = evaluate_scenario(sc);
    if (!opt.write_files) return p;

    fs::path dir = sc.output_dir.empty() ? fs::path(detail::sanitize(sc.label)) : fs::path(sc.output_dir);
    if (dir.is_relative() && !opt.output_root.empty()) dir = opt.output_root / dir;
    fs::create_directories(dir);

    std::vector<std::string> outputs;
    write_trace_csv(dir / "trace.csv", p.trace);
    outputs.push_back("trace.csv");
    write_text_file(dir / "verdict.txt", detail::verdict_text(sc.label, p));
    outputs.push_back("verdict.txt");
    write_text_file(dir / "verdict.csv", detail::verdict_csv(sc.label, p));
    outputs.push_back("verdict.csv");

    if (p.certificate) {
        write_text_file(dir / "certificate.csv", detail::certificate_csv(*p.certificate));
        outputs.push_back("certificate.csv");
    }

    if (p.pde_run) {
        const PdeRun& run = *p.pde_run;
        if (sc.snapshot_count > 0 && !run.fields.empty()) {
            const std::size_t want = std::min<std::size_t>(
                static_cast<std::size_t>(sc.snapshot_count), run.fields.size());
            for (std::size_t i = 0; i < want; ++i) {
                const std::size_t idx =
                    want == 1 ? 0 : i * (run.fields.size() - 1) / (want - 1);
                char stamp[32];
                std::snprintf(stamp, sizeof(stamp), "%.6f", run.times[idx]);
                const std::string name = std::string("snapshot_t") + stamp + ".csv";
                write_text_file(dir / name, detail::field_csv(run.fields[idx], run.grid.h));
                outputs.push_back(name);
            }
        }
        if (run.fields.size() >= 2) {
            const auto rep = energy_identity_report(run, sc.pde);
            std::string body = "t,residual_plus,residual_minus\n";
            for (std::size_t i = 0; i < rep.plus_variant.size(); ++i) {
                body += format_double(rep.plus_variant.times[i]);
                body += ',' + format_double(rep.plus_variant.values[i]);
                body += ',' + format_double(rep.minus_variant.values[i]);
                body += '\n';
            }
            write_text_file(dir / "energy_identity.csv", body);
            outputs.push_back("energy_identity.csv");
        }
    }

    const auto wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t_start)
                             .count();
    json manifest;
    manifest["artifact_version"] = kVersion;
    manifest["label"] = sc.label;
    manifest["scenario"] = sc.raw;
    manifest["verdict"] = to_string(p.verdict.verdict);
    manifest["overflow"] = p.overflow;
    manifest["warnings"] = p.warnings;
    manifest["outputs"] = outputs;
    manifest["wall_time_ms"] = wall_ms;
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
    return p;
}

}  // namespace semilab
