#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "semilab/deviation.hpp"
#include "semilab/diagonal_model.hpp"
#include "semilab/matrix_model.hpp"
#include "semilab/robin_pde.hpp"

using namespace semilab;
using Catch::Approx;

TEST_CASE("deviation traces") {
    SECTION("scalar decay against the zero reference") {
        DiagonalModel model(std::vector<std::complex<double>>{{-1.0, 0.0}});
        const auto trace = deviation_trace(model, model.basis_state(0), make_zero_reference(model),
                                           uniform_times(2.0, 1.0));
        REQUIRE(trace.values[0] == 1.0);
        REQUIRE(trace.values[1] == Approx(0.36787944117144233).epsilon(1e-14));
    }
    SECTION("a state measured against itself is identically zero") {
        DiagonalModel model({{-1.0, 0.0}, {0.5, 2.0}});
        const auto u0 = model.evolve(model.basis_state(1), 0.3);
        ReferenceState<DiagonalModel::state_type> self{u0, false};
        const auto trace = deviation_trace(model, u0, self, uniform_times(3.0, 0.5));
        for (double v : trace.values) REQUIRE(v == 0.0);
    }
    SECTION("isometric dynamics keep the deviation constant") {
        const auto model = make_rotation_model({1.0, std::sqrt(2.0), -0.7});
        DiagonalModel::state_type u0 = {{0.3, 0.1}, {-0.5, 0.2}, {0.0, 0.9}};
        const auto trace =
            deviation_trace(model, u0, make_zero_reference(model), uniform_times(30.0, 0.5));
        const double v0 = trace.values.front();
        for (double v : trace.values) REQUIRE(v == Approx(v0).epsilon(1e-12));
    }
    SECTION("overflow truncates the trace") {
        DiagonalModel model(std::vector<std::complex<double>>{{400.0, 0.0}});
        const auto trace = deviation_trace(model, model.basis_state(0),
                                           make_zero_reference(model), uniform_times(10.0, 1.0));
        REQUIRE(trace.overflow);
        REQUIRE(trace.size() < 11);
        REQUIRE_NOTHROW(trace.validate());
    }
}

TEST_CASE("linear reduction identity") {
    SECTION("matrix model with a zero reference is exact") {
        MatrixModel model(Eigen::MatrixXd{{0.1, 0.8}, {-0.8, 0.1}});
        Eigen::VectorXd u0(2);
        u0 << 1.0, 2.0;
        REQUIRE(linear_reduction_check(model, u0, make_zero_reference(model),
                                       uniform_times(5.0, 0.5)) == 0.0);
    }
    SECTION("diagonal model with non-trivial fixed points") {
        DiagonalModel model({{-1.0, 0.0}, {0.0, 0.0}});
        DiagonalModel::state_type ref = {{0.0, 0.0}, {0.7, -0.3}};
        const auto uref = make_checked_reference(model, ref, {0.5, 1.5});
        DiagonalModel::state_type u0 = {{1.0, 0.5}, {0.2, 0.1}};
        const double gap = linear_reduction_check(model, u0, uref, uniform_times(5.0, 0.25));
        REQUIRE(gap <= 1e-12 * model.norm(model.subtract(u0, uref.state)));
    }
    SECTION("a moving reference fails the fixed point check") {
        DiagonalModel model(std::vector<std::complex<double>>{{-1.0, 0.0}});
        REQUIRE_THROWS_AS(make_checked_reference(model, {{1.0, 0.0}}, {1.0}),
                          std::invalid_argument);
    }
    SECTION("pde model: both routes share the linear update") {
        RobinParams p{1.0, 1.0, 0.5, 0.3};
        const GridSpec g = GridSpec::make(p, 8.0, 400, 0.1);
        PdeModel model(p, g);
        Field u0 = sample_initial_field(p, g, gaussian_bump(2.0, 0.5));
        std::vector<double> times;
        for (int k = 0; k <= 10; ++k) times.push_back(k * 16.0 * g.dt);
        const double gap =
            linear_reduction_check(model, u0, make_zero_reference(model), times);
        REQUIRE(gap <= 1e-10 * model.norm(u0));
    }
}

TEST_CASE("cocycle property") {
    DiagonalModel model({{-1.0, 0.0}, {0.3, 1.5}});
    DiagonalModel::state_type u0 = {{1.0, -0.2}, {0.4, 0.8}};
    SECTION("t = 0 composes exactly") {
        REQUIRE(verify_cocycle(model, u0, 0.0, 1.3) == 0.0);
    }
    SECTION("exponent additivity at machine precision") {
        const double scale = model.norm(model.evolve(u0, 2.0));
        REQUIRE(verify_cocycle(model, u0, 0.7, 1.3) <= 1e-12 * scale);
    }
    SECTION("grid-bound model rejects off-grid times") {
        RobinParams p{1.0, 0.0, 0.0, 0.5};
        const GridSpec g = GridSpec::make(p, 6.0, 64, 1.0);
        PdeModel pde(p, g);
        Field u = sample_initial_field(p, g, gaussian_bump(1.5, 0.5));
        REQUIRE_THROWS_AS(verify_cocycle(pde, u, g.dt * 1.5, g.dt), std::invalid_argument);
        REQUIRE(verify_cocycle(pde, u, 8.0 * g.dt, 4.0 * g.dt) == 0.0);
    }
}

TEST_CASE("scaling homogeneity") {
    DiagonalModel model({{-0.5, 1.0}, {0.2, -2.0}});
    DiagonalModel::state_type u0 = {{1.0, 0.0}, {0.0, 1.0}};
    const auto uref = make_zero_reference(model);
    const auto times = uniform_times(4.0, 0.5);
    SECTION("identity and sign flips are exact") {
        REQUIRE(scaling_invariance_check(model, u0, uref, 1.0, times) == 0.0);
        REQUIRE(scaling_invariance_check(model, u0, uref, -1.0, times) <= 1e-15);
    }
    SECTION("generic scale factor") {
        REQUIRE(scaling_invariance_check(model, u0, uref, 3.5, times) <= 1e-12);
    }
    SECTION("zero scale is an input error") {
        REQUIRE_THROWS_AS(scaling_invariance_check(model, u0, uref, 0.0, times),
                          std::invalid_argument);
    }
}
