// semilab command line: simulate scenarios, sweep parameter boxes, classify
// traces, print spectral indicators and run the verification suites.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "semilab/checks.hpp"
#include "semilab/classify.hpp"
#include "semilab/csv.hpp"
#include "semilab/scenario.hpp"
#include "semilab/spectral.hpp"
#include "semilab/sweep.hpp"
#include "semilab/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailure = 1;
constexpr int kExitConfigError = 2;

struct ThresholdFlags {
    std::optional<double> burn_in, eps_dip, big_growth, band_lo, band_hi;
    std::optional<double> safety;

    void apply(semilab::json& body) const {
        using semilab::cfg::set_path;
        if (burn_in) set_path(body, "thresholds.burn_in_fraction", *burn_in);
        if (eps_dip) set_path(body, "thresholds.eps_dip", *eps_dip);
        if (big_growth) set_path(body, "thresholds.big_growth", *big_growth);
        if (band_lo || band_hi) {
            semilab::ClassifierThresholds def;
            double lo = band_lo.value_or(def.band_lo);
            double hi = band_hi.value_or(def.band_hi);
            if (body.contains("thresholds") && body["thresholds"].contains("band")) {
                lo = band_lo.value_or(body["thresholds"]["band"][0].get<double>());
                hi = band_hi.value_or(body["thresholds"]["band"][1].get<double>());
            }
            body["thresholds"]["band"] = {lo, hi};
        }
        if (safety) set_path(body, "grid.safety", *safety);
    }

    void add_flags(CLI::App* cmd, bool with_safety) {
        cmd->add_option("--threshold-burn-in", burn_in, "burn-in fraction override");
        cmd->add_option("--threshold-eps-dip", eps_dip, "dip threshold override");
        cmd->add_option("--threshold-big-growth", big_growth, "growth threshold override");
        cmd->add_option("--threshold-band-lo", band_lo, "bounded band lower edge");
        cmd->add_option("--threshold-band-hi", band_hi, "bounded band upper edge");
        if (with_safety) cmd->add_option("--safety", safety, "CFL safety factor override");
    }

    semilab::ClassifierThresholds to_thresholds() const {
        semilab::ClassifierThresholds t;
        if (burn_in) t.burn_in_fraction = *burn_in;
        if (eps_dip) t.eps_dip = *eps_dip;
        if (big_growth) t.big_growth = *big_growth;
        if (band_lo) t.band_lo = *band_lo;
        if (band_hi) t.band_hi = *band_hi;
        t.validate();
        return t;
    }
};

std::filesystem::path output_root(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("SEMILAB_OUT")) return env;
    return {};
}

semilab::RobinParams parse_param_string(const std::string& text) {
    semilab::RobinParams p;
    bool saw_alpha = false, saw_beta = false, saw_gamma = false, saw_kappa = false;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        const auto eq = token.find('=');
        if (eq == std::string::npos)
            throw semilab::ConfigError("expected key=value in `" + token + "`");
        const std::string key = token.substr(0, eq);
        const double value = std::stod(token.substr(eq + 1));
        if (key == "alpha") { p.alpha = value; saw_alpha = true; }
        else if (key == "beta") { p.beta = value; saw_beta = true; }
        else if (key == "gamma") { p.gamma = value; saw_gamma = true; }
        else if (key == "kappa") { p.kappa = value; saw_kappa = true; }
        else throw semilab::ConfigError("unknown parameter `" + key + "`");
    }
    if (!saw_alpha) throw semilab::ConfigError("missing key `alpha`");
    if (!saw_beta) throw semilab::ConfigError("missing key `beta`");
    if (!saw_gamma) throw semilab::ConfigError("missing key `gamma`");
    if (!saw_kappa) throw semilab::ConfigError("missing key `kappa`");
    p.validate();
    return p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"semilab — linear evolution trajectories, energy diagnostics and "
                 "dip/excursion classification"};
    app.set_version_flag("--version", semilab::kVersion);
    app.require_subcommand(1);

    std::string out_flag;
    app.add_option("--out", out_flag, "output root (default: $SEMILAB_OUT or cwd)");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run one scenario file");
    simulate->fallthrough();
    std::string scenario_path;
    simulate->add_option("scenario", scenario_path, "scenario json file")->required();
    ThresholdFlags sim_flags;
    sim_flags.add_flags(simulate, true);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a parameter sweep file");
    sweep->fallthrough();
    std::string sweep_path;
    int jobs = 1;
    sweep->add_option("spec", sweep_path, "sweep json file")->required();
    sweep->add_option("--jobs", jobs, "worker threads (default 1)");
    ThresholdFlags sweep_flags;
    sweep_flags.add_flags(sweep, true);

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "classify a t,value trace csv");
    classify_cmd->fallthrough();
    std::string trace_path, trace_label;
    classify_cmd->add_option("trace", trace_path, "trace csv file")->required();
    classify_cmd->add_option("--label", trace_label, "label for the verdict record");
    ThresholdFlags cls_flags;
    cls_flags.add_flags(classify_cmd, false);

    // spectral
    auto* spectral_cmd =
        app.add_subcommand("spectral", "spectral indicators for alpha=..,beta=..,gamma=..,kappa=..");
    spectral_cmd->fallthrough();
    std::string params_text;
    spectral_cmd->add_option("params", params_text, "comma separated key=value list")->required();

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->fallthrough();
    std::string selector = "all";
    verify->add_option("selector", selector, "suite name or `all`");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        semilab::RunOptions opt;
        opt.output_root = output_root(out_flag);

        if (*simulate) {
            semilab::json body;
            try {
                body = semilab::json::parse(semilab::read_text_file(scenario_path));
            } catch (const semilab::json::parse_error& e) {
                throw semilab::ConfigError(scenario_path + ": " + e.what());
            }
            sim_flags.apply(body);
            const semilab::Scenario sc = semilab::parse_scenario(body);
            const auto products = semilab::run_scenario(sc, opt);
            std::cout << semilab::detail::verdict_text(sc.label, products);
            for (const auto& w : products.warnings) std::cerr << "warning: " << w << "\n";
            return kExitOk;
        }

        if (*sweep) {
            semilab::json body;
            try {
                body = semilab::json::parse(semilab::read_text_file(sweep_path));
            } catch (const semilab::json::parse_error& e) {
                throw semilab::ConfigError(sweep_path + ": " + e.what());
            }
            if (body.contains("base")) sweep_flags.apply(body["base"]);
            const semilab::SweepSpec spec = semilab::parse_sweep(body);
            const auto result = semilab::run_sweep(spec, opt, jobs);
            std::cout << "cells=" << result.cells.size() << "\n";
            auto report = [&](const char* tag, const std::optional<int>& idx) {
                std::cout << tag << "=";
                if (idx) {
                    const auto& c = result.cells[static_cast<std::size_t>(*idx)];
                    std::cout << "cell " << c.index << " (param1=" << c.p1;
                    if (c.p2) std::cout << ", param2=" << *c.p2;
                    std::cout << ")";
                } else {
                    std::cout << "none";
                }
                std::cout << "\n";
            };
            report("first_decaying", result.first_decaying);
            report("first_growing", result.first_growing);
            report("first_dip_then_double", result.first_dip_then_double);
            if (!result.out_dir.empty())
                std::cout << "regime_map=" << (result.out_dir / "regime_map.csv").string() << "\n";
            return kExitOk;
        }

        if (*classify_cmd) {
            const auto trace = semilab::read_trace_csv(trace_path, trace_label);
            const auto thresholds = cls_flags.to_thresholds();
            semilab::RunProducts p;
            p.trace = trace;
            p.overflow = trace.overflow;
            if (!trace.empty() && trace.values.front() > 0.0) {
                p.summary = semilab::summarize(trace, thresholds);
                p.summarized = true;
                p.verdict = semilab::classify(p.summary, thresholds);
            } else {
                p.verdict.thresholds = thresholds;
                p.verdict.explanation = "initial deviation is zero; classification skipped";
            }
            const std::string label = trace_label.empty() ? trace.label : trace_label;
            std::cout << semilab::detail::verdict_text(label, p);
            std::cout << semilab::detail::verdict_csv(label, p);
            return kExitOk;
        }

        if (*spectral_cmd) {
            const auto params = parse_param_string(params_text);
            const auto ind = semilab::dsw_indicator(params);
            std::cout << "rho=" << semilab::format_double(ind.rho) << "\n";
            std::cout << "eta=" << semilab::format_double(ind.eta) << "\n";
            std::cout << "rho_positive=" << (ind.rho_positive ? "1" : "0") << "\n";
            std::cout << "region_meets_iR=" << (ind.region_meets_imaginary_axis ? "1" : "0")
                      << "\n";
            if (ind.lambda_kappa) {
                std::cout << "lambda_kappa=" << semilab::format_double(*ind.lambda_kappa) << "\n";
                std::cout << "lambda_kappa_positive=" << (*ind.lambda_kappa_positive ? "1" : "0")
                          << "\n";
            } else {
                std::cout << "lambda_kappa=not-applicable\n";
            }
            return kExitOk;
        }

        if (*verify) {
            const int failures = semilab::checks::run_suites(selector, std::cout);
            if (failures < 0) return kExitConfigError;
            return failures == 0 ? kExitOk : kExitVerifyFailure;
        }
    } catch (const semilab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitOk;
}
