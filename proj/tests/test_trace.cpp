#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <filesystem>

#include "semilab/csv.hpp"
#include "semilab/trace.hpp"

using namespace semilab;

TEST_CASE("trace validation enforces the invariants") {
    TrajectoryTrace t;
    t.times = {0.0, 1.0, 2.0};
    t.values = {1.0, 0.5, 0.25};
    REQUIRE_NOTHROW(t.validate());

    TrajectoryTrace bad_start;
    bad_start.times = {1.0, 2.0};
    bad_start.values = {1.0, 1.0};
    REQUIRE_THROWS_AS(bad_start.validate(), std::invalid_argument);

    TrajectoryTrace not_increasing;
    not_increasing.times = {0.0, 1.0, 1.0};
    not_increasing.values = {1.0, 1.0, 1.0};
    REQUIRE_THROWS_AS(not_increasing.validate(), std::invalid_argument);

    TrajectoryTrace negative;
    negative.times = {0.0};
    negative.values = {-1.0};
    REQUIRE_THROWS_AS(negative.validate(), std::invalid_argument);
}

TEST_CASE("push truncates at the first non-finite value and flags overflow") {
    TrajectoryTrace t;
    REQUIRE(t.push(0.0, 1.0));
    REQUIRE(t.push(1.0, 10.0));
    REQUIRE_FALSE(t.push(2.0, std::numeric_limits<double>::infinity()));
    REQUIRE(t.overflow);
    REQUIRE(t.size() == 2);
    REQUIRE_FALSE(t.push(3.0, 1.0));  // closed after overflow
}

TEST_CASE("uniform_times covers the horizon") {
    const auto ts = uniform_times(5.0, 0.5);
    REQUIRE(ts.size() == 11);
    REQUIRE(ts.front() == 0.0);
    REQUIRE(ts.back() == Catch::Approx(5.0));
    const auto odd = uniform_times(1.0, 0.3);
    REQUIRE(odd.back() >= 1.0 - 1e-12);
}

TEST_CASE("growth bound check") {
    TrajectoryTrace decaying;
    for (double t = 0.0; t <= 10.0; t += 0.1) decaying.push(t, std::exp(-t));
    REQUIRE(check_growth_bound(decaying, {1.0, 0.0}, 1.0).satisfied);

    TrajectoryTrace growing;
    for (double t = 0.0; t <= 10.0; t += 0.1) growing.push(t, std::exp(t));
    const auto rep = check_growth_bound(growing, {1.0, 0.5}, 1.0);
    REQUIRE_FALSE(rep.satisfied);
    REQUIRE(rep.first_violation_time == Catch::Approx(0.1));  // first positive sample

    REQUIRE_THROWS_AS(check_growth_bound(decaying, {1.0, 0.0}, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(check_growth_bound(decaying, {0.5, 0.0}, 1.0), std::invalid_argument);
}

TEST_CASE("time shift re-indexes without recomputation") {
    TrajectoryTrace t;
    for (int i = 0; i <= 20; ++i) t.push(0.25 * i, 100.0 - i);

    SECTION("identity shift") {
        const auto s = time_shift(t, 0.0);
        REQUIRE(s.values == t.values);
    }
    SECTION("interior shift") {
        const auto s = time_shift(t, 1.0);
        REQUIRE(s.size() == t.size() - 4);
        REQUIRE(s.values.front() == t.values[4]);
        REQUIRE(s.times.front() == 0.0);
        REQUIRE(s.times[1] == t.times[1]);
    }
    SECTION("boundary shift leaves a single point") {
        const auto s = time_shift(t, t.times.back());
        REQUIRE(s.size() == 1);
        REQUIRE(s.values[0] == t.values.back());
    }
    SECTION("composition is exact index arithmetic") {
        const auto once = time_shift(t, 1.25);
        const auto twice = time_shift(time_shift(t, 0.5), 0.75);
        REQUIRE(once.times == twice.times);
        REQUIRE(once.values == twice.values);
    }
    SECTION("tau beyond horizon is an input error") {
        REQUIRE_THROWS_AS(time_shift(t, 99.0), std::invalid_argument);
        REQUIRE_THROWS_AS(time_shift(t, 0.1), std::invalid_argument);  // off grid
    }
}

TEST_CASE("trace csv round trip keeps 17 significant digits") {
    TrajectoryTrace t;
    t.label = "roundtrip";
    std::mt19937_64 rng(5);
    for (int i = 0; i <= 50; ++i) t.push(0.1 * i, std::exp(uniform_in(rng, -30.0, 30.0)));

    const auto path = std::filesystem::temp_directory_path() / "semilab-trace-roundtrip.csv";
    write_trace_csv(path, t);
    const auto back = read_trace_csv(path);
    std::filesystem::remove(path);

    REQUIRE(back.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        REQUIRE(back.times[i] == t.times[i]);
        REQUIRE(back.values[i] == t.values[i]);
    }
}
