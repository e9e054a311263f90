#include <catch2/catch_amalgamated.hpp>
#include <filesystem>

#include "semilab/scenario.hpp"
#include "semilab/sweep.hpp"

using namespace semilab;
namespace fs = std::filesystem;

namespace {

json diagonal_decay_body() {
    return {
        {"label", "diag-decay"},
        {"model", {{"kind", "diagonal"}, {"rates", {-1.0}}}},
        {"time", {{"horizon", 50.0}, {"dt", 0.1}}},
        {"initial", {{"kind", "basis"}, {"index", 0}}},
    };
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("semilab-test-" +
                std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("scenario parsing and validation") {
    SECTION("diagonal decay parses") {
        const Scenario sc = parse_scenario(diagonal_decay_body());
        REQUIRE(sc.kind == ModelKind::diagonal);
        REQUIRE(sc.diag_rates.size() == 1);
    }
    SECTION("missing keys are named in the error") {
        json body = {{"label", "x"},
                     {"model", {{"kind", "pde"}, {"beta", 1.0}, {"gamma", 0.0}, {"kappa", 0.0}}}};
        try {
            parse_scenario(body);
            FAIL("expected a config error");
        } catch (const ConfigError& e) {
            REQUIRE(std::string(e.what()).find("alpha") != std::string::npos);
        }
    }
    SECTION("unknown model kind") {
        json body = {{"model", {{"kind", "pendulum"}}}};
        REQUIRE_THROWS_AS(parse_scenario(body), ConfigError);
    }
    SECTION("bad threshold band") {
        json body = diagonal_decay_body();
        body["thresholds"]["band"] = {5.0, 1.0};
        REQUIRE_THROWS_AS(parse_scenario(body), std::exception);
    }
}

TEST_CASE("run_scenario writes the documented artifacts") {
    TempDir tmp;
    RunOptions opt;
    opt.output_root = tmp.path;

    SECTION("diagonal decay run") {
        const auto p = run_scenario(parse_scenario(diagonal_decay_body()), opt);
        REQUIRE(p.verdict.verdict == Verdict::decaying);
        const fs::path dir = tmp.path / "diag-decay";
        for (const char* f : {"trace.csv", "verdict.txt", "verdict.csv", "manifest.json"})
            REQUIRE(fs::exists(dir / f));
        const auto trace = read_trace_csv(dir / "trace.csv");
        REQUIRE(trace.size() == 501);
        REQUIRE(trace.values.front() == 1.0);
    }
    SECTION("splitting run exports the certificate and classifies irregular") {
        json body = {
            {"label", "splitting-default"},
            {"model", {{"kind", "splitting"}}},
            {"time", {{"horizon", 320.0}}},
        };
        const auto p = run_scenario(parse_scenario(body), opt);
        REQUIRE(p.verdict.verdict == Verdict::irregular_candidate);
        REQUIRE(fs::exists(tmp.path / "splitting-default" / "certificate.csv"));
    }
    SECTION("pde run writes snapshots and the energy identity table") {
        json body = {
            {"label", "pde-mini"},
            {"model",
             {{"kind", "pde"}, {"alpha", 1.0}, {"beta", 0.0}, {"gamma", 0.0}, {"kappa", 1.0}}},
            {"grid",
             {{"L", 12.0}, {"N", 96}, {"T", 0.5}, {"save_every", 32}, {"snapshot_count", 3}}},
            {"initial", {{"kind", "eigenmode"}}},
        };
        const auto p = run_scenario(parse_scenario(body), opt);
        REQUIRE(p.spectral.has_value());
        const fs::path dir = tmp.path / "pde-mini";
        REQUIRE(fs::exists(dir / "snapshot_t0.000000.csv"));
        REQUIRE(fs::exists(dir / "energy_identity.csv"));
        int snapshots = 0;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.path().filename().string().rfind("snapshot_", 0) == 0) ++snapshots;
        REQUIRE(snapshots == 3);
    }
    SECTION("zero initial data is handled without classification") {
        json body = {
            {"label", "pde-zero"},
            {"model",
             {{"kind", "pde"}, {"alpha", 1.0}, {"beta", 0.0}, {"gamma", 0.0}, {"kappa", 0.5}}},
            {"grid", {{"L", 6.0}, {"N", 64}, {"T", 0.1}, {"snapshot_count", 0}}},
            {"initial", {{"kind", "gaussian"}, {"amplitude", 0.0}}},
        };
        const auto p = run_scenario(parse_scenario(body), opt);
        REQUIRE(p.verdict.verdict == Verdict::inconclusive);
        REQUIRE_FALSE(p.summarized);
    }
}

TEST_CASE("sweep machinery") {
    SECTION("single-cell sweep equals the plain scenario run") {
        json base = {
            {"label", "cell"},
            {"model",
             {{"kind", "pde"}, {"alpha", 1.0}, {"beta", 0.0}, {"gamma", -1.0}, {"kappa", 0.5}}},
            {"grid", {{"L", 6.0}, {"N", 64}, {"T", 2.0}, {"save_every", 16}, {"snapshot_count", 0}}},
            {"initial", {{"kind", "gaussian"}, {"center", 1.5}, {"width", 0.5}}},
        };
        json spec_json = {
            {"base", base},
            {"axes", {{{"param", "model.gamma"}, {"min", -1.0}, {"max", -1.0}, {"steps", 1}}}},
        };
        RunOptions no_files;
        no_files.write_files = false;
        const auto result = run_sweep(parse_sweep(spec_json), no_files, 1);
        REQUIRE(result.cells.size() == 1);
        const auto direct = evaluate_scenario(parse_scenario(base));
        REQUIRE(result.cells[0].verdict == direct.verdict.verdict);
        REQUIRE(result.cells[0].dip_ratio == direct.summary.dip_ratio);
        REQUIRE(result.cells[0].growth_ratio == direct.summary.growth_ratio);
    }
    SECTION("axes that do not fit the base are config errors") {
        json spec_json = {
            {"base", diagonal_decay_body()},
            {"axes", {{{"param", "model.rates.0"}, {"min", -1.0}, {"max", -2.0}, {"steps", 2}}}},
        };
        REQUIRE_THROWS_AS(parse_sweep(spec_json), ConfigError);
    }
    SECTION("pde sweep produces ordered rows and witnesses") {
        TempDir tmp;
        RunOptions opt;
        opt.output_root = tmp.path;
        json spec_json = {
            {"base",
             {{"label", "mini"},
              {"model",
               {{"kind", "pde"}, {"alpha", 1.0}, {"beta", 0.5}, {"gamma", 0.0}, {"kappa", 0.5}}},
              {"grid", {{"L", 6.0}, {"N", 64}, {"T", 4.0}, {"save_every", 16}, {"snapshot_count", 0}}},
              {"initial", {{"kind", "gaussian"}, {"center", 1.5}, {"width", 0.5}}}}},
            {"output_dir", "mini-sweep"},
            {"axes",
             {{{"param", "model.gamma"}, {"min", -2.0}, {"max", 2.0}, {"steps", 3}},
              {{"param", "model.beta"}, {"min", 0.0}, {"max", 1.0}, {"steps", 2}}}},
        };
        const auto spec = parse_sweep(spec_json);
        const auto result = run_sweep(spec, opt, 2);
        REQUIRE(result.cells.size() == 6);
        for (std::size_t i = 0; i < result.cells.size(); ++i)
            REQUIRE(result.cells[i].index == static_cast<int>(i));
        REQUIRE(result.first_decaying.has_value());
        REQUIRE(result.first_growing.has_value());
        const auto body = read_text_file(tmp.path / "mini-sweep" / "regime_map.csv");
        REQUIRE(body.rfind("param1,param2,verdict,", 0) == 0);
        REQUIRE(fs::exists(tmp.path / "mini-sweep" / "manifest.json"));
    }
    SECTION("kappa axis with negative effective reaction never grows") {
        // rho = -0.75 and lambda_kappa = kappa^2 - kappa - 0.5 < 0 on [0, 1]:
        // every rate in play is negative, so no cell may report GROWING
        RunOptions no_files;
        no_files.write_files = false;
        json spec_json = {
            {"base",
             {{"label", "kappa-axis"},
              {"model",
               {{"kind", "pde"}, {"alpha", 1.0}, {"beta", 1.0}, {"gamma", -0.5}, {"kappa", 0.0}}},
              {"grid", {{"L", 8.0}, {"N", 64}, {"T", 8.0}, {"save_every", 32}, {"snapshot_count", 0}}},
              {"initial", {{"kind", "gaussian"}, {"center", 2.0}, {"width", 0.6}}}}},
            {"axes", {{{"param", "model.kappa"}, {"min", 0.0}, {"max", 1.0}, {"steps", 6}}}},
        };
        const auto result = run_sweep(parse_sweep(spec_json), no_files, 2);
        for (const auto& cell : result.cells) {
            if (cell.spectral && cell.spectral->lambda_kappa)
                REQUIRE(*cell.spectral->lambda_kappa < 0.0);
            REQUIRE(cell.verdict != Verdict::growing);
        }
    }
    SECTION("cell budget is enforced") {
        json spec_json = {
            {"base", diagonal_decay_body()},
            {"axes",
             {{{"param", "model.x"}, {"min", 0.0}, {"max", 1.0}, {"steps", 101}},
              {{"param", "model.y"}, {"min", 0.0}, {"max", 1.0}, {"steps", 101}}}},
        };
        REQUIRE_THROWS_AS(parse_sweep(spec_json), ConfigError);
    }
}
