#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "semilab/bump_spike.hpp"
#include "semilab/classify.hpp"
#include "semilab/spectral.hpp"

using namespace semilab;
using Catch::Approx;

namespace {

TrajectoryTrace exp_trace(double rate, double horizon, double dt = 0.1, double scale = 1.0) {
    TrajectoryTrace t;
    for (double x = 0.0; x <= horizon + 1e-12; x += dt) t.push(x, scale * std::exp(rate * x));
    return t;
}

}  // namespace

TEST_CASE("summarize") {
    SECTION("constant trace") {
        TrajectoryTrace t;
        for (double x = 0.0; x <= 10.0; x += 0.5) t.push(x, 3.0);
        const auto s = summarize(t);
        REQUIRE(s.dip_ratio == 1.0);
        REQUIRE(s.growth_ratio == 1.0);
        REQUIRE(s.alternation_count == 0);
    }
    SECTION("pure decay over a long horizon") {
        const auto s = summarize(exp_trace(-1.0, 50.0));
        REQUIRE(s.dip_ratio < 1e-3);
        REQUIRE(s.growth_ratio == 1.0);
        REQUIRE(s.t_min == Approx(50.0));
    }
    SECTION("bump-spike trace past crossing 20") {
        const auto cfg = default_bump_spike_config();
        TrajectoryTrace t;
        for (std::int64_t m = 0; m <= 300; ++m)
            t.push(static_cast<double>(m), bump_spike_norm(cfg, m));
        const auto s = summarize(t);
        REQUIRE(s.dip_ratio < 1e-3);
        REQUIRE(s.growth_ratio > std::pow(2.0, 10) / bump_spike_norm(cfg, 0));
        REQUIRE(s.alternation_count >= 1);
    }
    SECTION("zero initial value is an input error") {
        TrajectoryTrace t;
        t.push(0.0, 0.0);
        t.push(1.0, 1.0);
        REQUIRE_THROWS_AS(summarize(t), std::invalid_argument);
    }
}

TEST_CASE("classify verdicts") {
    SECTION("constant trace is BOUNDED") {
        TrajectoryTrace t;
        for (double x = 0.0; x <= 10.0; x += 0.5) t.push(x, 2.5);
        REQUIRE(classify(summarize(t)).verdict == Verdict::bounded);
    }
    SECTION("decay is DECAYING") {
        REQUIRE(classify(summarize(exp_trace(-1.0, 50.0))).verdict == Verdict::decaying);
    }
    SECTION("pure growth is GROWING") {
        REQUIRE(classify(summarize(exp_trace(0.5, 50.0))).verdict == Verdict::growing);
    }
    SECTION("dip followed by certified excursions is IRREGULAR_CANDIDATE") {
        const auto cfg = default_bump_spike_config();
        TrajectoryTrace t;
        for (std::int64_t m = 0; m <= 300; ++m)
            t.push(static_cast<double>(m), std::hypot(bump_spike_norm(cfg, m), std::exp(-m)));
        REQUIRE(classify(summarize(t)).verdict == Verdict::irregular_candidate);
    }
    SECTION("deep dip with only a mild recovery stays INCONCLUSIVE") {
        TrajectoryTrace t;
        for (int i = 0; i <= 600; ++i) {
            const double x = 0.1 * i;
            t.push(x, std::max(std::exp(-x), 5.0 * std::exp(-(60.0 - x))));
        }
        const auto s = summarize(t);
        REQUIRE(s.dip_ratio < 1e-3);
        REQUIRE(s.growth_ratio == Approx(5.0));  // far below the excursion threshold
        REQUIRE(classify(s).verdict == Verdict::inconclusive);
    }
    SECTION("overflow substitutes for the growth threshold") {
        TrajectoryTrace t;
        for (double x = 0.0; x <= 40.0; x += 0.5) t.push(x, std::exp(-x) + 1e-9 * x);
        t.push(40.5, 5.0);
        t.push(41.0, 1e-8);
        t.overflow = true;
        const auto s = summarize(t);
        REQUIRE(s.overflow);
        const auto v = classify(s);
        REQUIRE(v.verdict == Verdict::irregular_candidate);
    }
    SECTION("verdict is a pure function of the summary") {
        const auto s = summarize(exp_trace(-1.0, 50.0));
        REQUIRE(classify(s).verdict == classify(s).verdict);
        REQUIRE_FALSE(classify(s).explanation.empty());
    }
    SECTION("scale invariance of the verdict") {
        for (double c : {1e-8, 1.0, 1e8}) {
            REQUIRE(classify(summarize(exp_trace(-1.0, 50.0, 0.1, c))).verdict ==
                    Verdict::decaying);
            REQUIRE(classify(summarize(exp_trace(0.5, 50.0, 0.1, c))).verdict ==
                    Verdict::growing);
        }
    }
    SECTION("threshold validation") {
        ClassifierThresholds bad;
        bad.eps_dip = 2.0;
        REQUIRE_THROWS_AS(classify(summarize(exp_trace(-1.0, 10.0)), bad),
                          std::invalid_argument);
    }
}

TEST_CASE("spectral region membership") {
    SECTION("beta = 0 has a symmetric root pair, never a member") {
        RobinParams p{1.0, 0.0, 0.7, 0.0};
        REQUIRE_FALSE(spectral_region_member(p, {0.0, 0.0}));
        REQUIRE_FALSE(spectral_region_member(p, {-0.5, 1.0}));
    }
    SECTION("both roots strictly decaying") {
        RobinParams p{1.0, 2.0, 0.0, 0.0};
        REQUIRE(spectral_region_member(p, {-0.5, 0.0}));  // roots near -0.293, -1.707
        REQUIRE_FALSE(spectral_region_member(p, {0.0, 0.0}));  // root at 0, boundary excluded
    }
}

TEST_CASE("dsw indicator") {
    SECTION("effective parameters") {
        const auto ind = dsw_indicator({1.0, 2.0, 2.0, 0.3});
        REQUIRE(ind.rho == 1.0);
        REQUIRE(ind.eta == -1.0);
        REQUIRE(ind.rho_positive);
        REQUIRE(ind.lambda_kappa.has_value());
        REQUIRE(*ind.lambda_kappa == Approx(1.0 * 0.09 - 2.0 * 0.3 + 2.0).epsilon(1e-15));
    }
    SECTION("beta = 0 never meets the imaginary axis") {
        REQUIRE_FALSE(dsw_indicator({1.0, 0.0, 5.0, 0.5}).region_meets_imaginary_axis);
    }
    SECTION("negative reaction keeps the region off the axis") {
        REQUIRE_FALSE(dsw_indicator({1.0, 1.5, -0.3, 0.5}).region_meets_imaginary_axis);
    }
    SECTION("positive drift and reaction open the window") {
        REQUIRE(dsw_indicator({1.0, 2.0, 1.0, 0.5}).region_meets_imaginary_axis);
    }
    SECTION("kappa <= 0 leaves lambda_kappa unset") {
        REQUIRE_FALSE(dsw_indicator({1.0, 1.0, 1.0, 0.0}).lambda_kappa.has_value());
    }
}
