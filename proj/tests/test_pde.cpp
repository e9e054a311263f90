#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "semilab/robin_pde.hpp"
#include "semilab/spectral.hpp"

using namespace semilab;
using Catch::Approx;

TEST_CASE("cfl timestep formula") {
    REQUIRE(cfl_timestep({1.0, 0.0, 0.0, 0.0}, 0.1, 1.0) == Approx(0.005).epsilon(1e-15));
    REQUIRE(cfl_timestep({1.0, 10.0, 0.0, 0.0}, 0.1, 1.0) == Approx(1.0 / 300.0).epsilon(1e-15));
    REQUIRE(cfl_timestep({1.0, 10.0, 0.0, 0.0}, 0.1, 0.5) ==
            0.5 * cfl_timestep({1.0, 10.0, 0.0, 0.0}, 0.1, 1.0));
    REQUIRE_THROWS_AS(cfl_timestep({1.0, 0.0, 0.0, 0.0}, 0.0, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(cfl_timestep({1.0, 0.0, 0.0, 0.0}, 0.1, 1.5), std::invalid_argument);
}

TEST_CASE("grid spec derives h and snaps dt to divide T") {
    RobinParams p{1.0, 0.0, 0.0, 0.0};
    const GridSpec g = GridSpec::make(p, 12.0, 480, 2.0);
    REQUIRE(g.h == 12.0 / 480);
    REQUIRE(g.dt <= cfl_timestep(p, g.h, 0.9) * (1.0 + 1e-12));
    REQUIRE(static_cast<double>(g.step_count()) * g.dt == Approx(2.0).epsilon(1e-12));
    REQUIRE_THROWS_AS(GridSpec::make(p, 12.0, 8, 1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(GridSpec::make(p, 12.0, 480, 1.0, 1, 0.9, 1.0), std::invalid_argument);
}

TEST_CASE("one explicit step") {
    SECTION("zero field stays zero") {
        RobinParams p{1.0, 0.4, -0.3, 0.6};
        const GridSpec g = GridSpec::make(p, 6.4, 64, 1.0);
        Field z;
        z.samples.assign(65, 0.0);
        const auto out = step_direct(p, g, z);
        for (double v : out.samples) REQUIRE(v == 0.0);
    }
    SECTION("heat stencil spreads an interior spike") {
        RobinParams p{1.0, 0.0, 0.0, 0.0};
        const GridSpec g = GridSpec::make(p, 6.4, 64, 1.0);
        Field f;
        f.samples.assign(65, 0.0);
        f.samples[32] = 1.0;
        const auto out = step_direct(p, g, f);
        const double s = p.alpha * g.dt / (g.h * g.h);
        REQUIRE(out.samples[32] == Approx(1.0 - 2.0 * s).epsilon(1e-14));
        REQUIRE(out.samples[31] == Approx(s).epsilon(1e-14));
        REQUIRE(out.samples[33] == Approx(s).epsilon(1e-14));
    }
    SECTION("boundary closure holds after the step") {
        RobinParams p{1.0, 0.3, 0.1, 0.8};
        const GridSpec g = GridSpec::make(p, 6.4, 64, 1.0);
        Field f = sample_initial_field(p, g, gaussian_bump(1.2, 0.4));
        const auto out = step_direct(p, g, f);
        REQUIRE(out.samples.back() == 0.0);
        REQUIRE(out.samples.front() ==
                Approx(out.samples[1] / (1.0 - p.kappa * g.h)).epsilon(1e-15));
    }
    SECTION("kappa h near one is rejected as degenerate") {
        RobinParams p{1.0, 0.0, 0.0, 10.0};
        const GridSpec g = GridSpec::make(p, 6.4, 64, 1.0);
        Field f = {std::vector<double>(65, 0.0)};
        f.samples[1] = 1.0;
        REQUIRE_THROWS_AS(step_direct(p, g, f), std::invalid_argument);  // kappa*h == 1
    }
    SECTION("large kappa pins the boundary value near zero") {
        RobinParams p{1.0, 0.0, 0.0, 1e3};
        const GridSpec g = GridSpec::make(p, 6.4, 64, 1.0);
        Field f = sample_initial_field(p, g, gaussian_bump(1.2, 0.4));
        const auto out = step_direct(p, g, f);
        REQUIRE(std::fabs(out.samples.front()) <= std::fabs(out.samples[1]) / 90.0);
    }
}

TEST_CASE("solver runs") {
    SECTION("zero data gives the zero run") {
        RobinParams p{1.0, 1.0, 0.5, 0.3};
        const GridSpec g = GridSpec::make(p, 8.0, 64, 0.2, 16);
        const auto run = solve_direct(p, g, [](double) { return 0.0; });
        REQUIRE_FALSE(run.overflow);
        const auto e = energy_trace(run);
        for (double v : e.values) REQUIRE(v == 0.0);
    }
    SECTION("dissipative regime loses energy") {
        RobinParams p{1.0, 0.0, -1.0, 1.0};
        const GridSpec g = GridSpec::make(p, 12.0, 200, 1.0, 1 << 30);
        const auto run = solve_direct(p, g, gaussian_bump(3.0, 0.75));
        const auto e = energy_trace(run);
        REQUIRE(e.values.back() < e.values.front());
    }
    SECTION("reaction blow-up sets the overflow flag, no exception") {
        RobinParams p{1.0, 0.0, 800.0, 0.0};
        const GridSpec g = GridSpec::make(p, 6.0, 64, 4.0, 4);
        const auto run = solve_direct(p, g, gaussian_bump(1.5, 0.5));
        REQUIRE(run.overflow);
        const auto e = energy_trace(run);
        REQUIRE(e.overflow);
        REQUIRE_NOTHROW(e.validate());
    }
    SECTION("truncation contamination raises a warning") {
        RobinParams p{1.0, 0.0, 0.0, 0.2};
        const GridSpec g = GridSpec::make(p, 4.0, 64, 0.05, 1 << 30);
        const auto run = solve_direct(p, g, boundary_layer(0.2));  // e^{-0.8} at x = L
        REQUIRE_FALSE(run.warnings.empty());
    }
    SECTION("conjugation weight out of range is an input error") {
        RobinParams p{1.0, 200.0, 0.0, 0.0};
        const GridSpec g = GridSpec::make(p, 12.0, 64, 0.01);
        REQUIRE_THROWS_AS(solve_conjugated(p, g, gaussian_bump(3.0, 0.5)),
                          std::invalid_argument);
    }
}

TEST_CASE("energy trace of a constant field") {
    Field f;
    const int N = 100;
    const double h = 0.05;
    f.samples.assign(N + 1, 2.0);
    // trapezoid counts half weight at both ends
    REQUIRE(field_energy(f, h) == Approx(2.0 * std::sqrt(h * N)).epsilon(1e-13));
    f.samples.back() = 0.0;  // absorbing end correction
    REQUIRE(field_energy(f, h) ==
            Approx(2.0 * std::sqrt(h * (N - 0.5))).epsilon(1e-13));
}

TEST_CASE("energy identity residual") {
    SECTION("zero run has zero residual") {
        RobinParams p{1.0, 0.5, 0.3, 0.4};
        const GridSpec g = GridSpec::make(p, 6.0, 64, 0.05, 8);
        const auto run = solve_direct(p, g, [](double) { return 0.0; });
        const auto res = energy_identity_residual(run, p);
        for (double v : res.values) REQUIRE(v == 0.0);
    }
    SECTION("needs at least two saved fields") {
        RobinParams p{1.0, 0.0, 0.0, 0.4};
        PdeRun run;
        run.params = p;
        run.grid = GridSpec::make(p, 6.0, 64, 0.05);
        run.times = {0.0};
        run.fields.resize(1);
        run.fields[0].samples.assign(65, 0.0);
        REQUIRE_THROWS_AS(energy_identity_residual(run, p), std::invalid_argument);
    }
    SECTION("eigenmode run separates the two boundary-term signs") {
        RobinParams p{1.0, 0.0, 0.0, 1.0};
        const GridSpec g = GridSpec::make(p, 12.0, 240, 0.5);
        const auto ex = energy_residual_extrema(p, g, eigenmode_data(p));
        REQUIRE(ex.max_minus > 10.0 * ex.max_plus);
    }
    SECTION("near-Dirichlet limit: boundary terms vanish with u(0)") {
        RobinParams p{1.0, 0.0, 0.0, 1e3};
        const GridSpec g = GridSpec::make(p, 6.0, 64, 0.2);
        const auto ex = energy_residual_extrema(p, g, gaussian_bump(1.5, 0.5));
        // with u(0) ~ 0 the sign variants nearly coincide; they are far apart
        // for a boundary-active run at moderate kappa
        REQUIRE(ex.max_minus == Approx(ex.max_plus).epsilon(0.05));
        RobinParams q{1.0, 0.0, 0.0, 1.0};
        const GridSpec gq = GridSpec::make(q, 6.0, 64, 0.2);
        const auto exq = energy_residual_extrema(q, gq, eigenmode_data(q));
        REQUIRE(exq.max_minus > 2.0 * exq.max_plus);
    }
}

TEST_CASE("robin eigenvalue family") {
    const auto m = robin_eigenvalue({1.0, 0.0, 0.0, 1.0});
    REQUIRE(m.has_value());
    REQUIRE(m->lambda == 1.0);
    REQUIRE((*m)(0.0) == 1.0);
    REQUIRE((*m)(2.0) == Approx(std::exp(-2.0)).epsilon(1e-15));

    REQUIRE(robin_eigenvalue({1.0, 2.0, 0.0, 1.0})->lambda == -1.0);
    REQUIRE(robin_eigenvalue({1.0, 2.0, 0.25, 1.0})->lambda ==
            robin_eigenvalue({1.0, 2.0, 0.0, 1.0})->lambda + 0.25);
    REQUIRE_FALSE(robin_eigenvalue({1.0, 0.0, 0.0, 0.0}).has_value());
    REQUIRE_FALSE(robin_eigenvalue({1.0, 0.0, 0.0, -1.0}).has_value());
}

TEST_CASE("effective parameters recompute exactly") {
    RobinParams p{2.0, 3.0, 1.5, 0.4};
    const auto e = effective_params(p);
    REQUIRE(e.eta == -3.0 / 4.0);
    REQUIRE(e.rho == 1.5 - 9.0 / 8.0);
    REQUIRE(e.shifted_kappa == 0.4 + e.eta);
}

TEST_CASE("ghost-node boundary variant stays consistent with the closure") {
    RobinParams p{1.0, 0.0, 0.0, 1.0};
    const GridSpec g1 = GridSpec::make(p, 12.0, 400, 0.5, 1 << 30);
    GridSpec g2 = g1;
    g2.boundary = RobinBoundary::ghost_second_order;
    const auto r1 = solve_direct(p, g1, eigenmode_data(p));
    const auto r2 = solve_direct(p, g2, eigenmode_data(p));
    const double e1 = field_energy(r1.fields.back(), g1.h);
    const double e2 = field_energy(r2.fields.back(), g2.h);
    // same continuum limit; grid-level agreement a few percent at this h
    REQUIRE(e1 == Approx(e2).epsilon(0.05));
}
