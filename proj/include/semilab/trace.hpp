#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "semilab/util.hpp"

namespace semilab {

/// Sampled norm values along one orbit. Times are absolute, strictly
/// increasing and start at 0; values are finite and non-negative. A trace
/// that hit a non-finite value is truncated at that point and carries the
/// overflow flag instead of the bad sample.
struct TrajectoryTrace {
    std::vector<double> times;
    std::vector<double> values;
    std::string label;
    bool overflow = false;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
    double horizon() const { return times.empty() ? 0.0 : times.back(); }

    void validate() const {
        require(times.size() == values.size(), "trace: times/values length mismatch");
        if (times.empty()) return;
        require(times.front() == 0.0, "trace: times must start at 0");
        for (std::size_t i = 0; i < times.size(); ++i) {
            if (i > 0) require(times[i] > times[i - 1], "trace: times must be strictly increasing");
            require(std::isfinite(values[i]) && values[i] >= 0.0, "trace: values must be finite and >= 0");
        }
    }

    /// Appends a sample, enforcing the truncate-on-overflow policy.
    /// Returns false once the trace is closed by an overflow.
    bool push(double t, double v) {
        if (overflow) return false;
        if (!std::isfinite(v)) {
            overflow = true;
            return false;
        }
        times.push_back(t);
        values.push_back(v);
        return true;
    }
};

/// Uniform sample times 0, dt, 2*dt, ... covering [0, horizon].
inline std::vector<double> uniform_times(double horizon, double dt) {
    require(dt > 0.0 && std::isfinite(dt), "uniform_times: dt must be positive");
    require(horizon >= 0.0 && std::isfinite(horizon), "uniform_times: bad horizon");
    auto n = static_cast<std::size_t>(std::llround(horizon / dt));
    if (static_cast<double>(n) * dt < horizon - 1e-9 * std::max(1.0, horizon)) ++n;
    std::vector<double> ts(n + 1);
    for (std::size_t i = 0; i <= n; ++i) ts[i] = static_cast<double>(i) * dt;
    return ts;
}

struct GrowthBound {
    double M = 1.0;      // >= 1
    double omega = 0.0;  // 1/time
};

struct GrowthBoundReport {
    bool satisfied = true;
    double first_violation_time = std::numeric_limits<double>::quiet_NaN();
};

/// Checks values[i] <= M * exp(omega * t_i) * initial_gap with 1e-9 relative
/// slack; reports the first violating time if any.
inline GrowthBoundReport check_growth_bound(const TrajectoryTrace& trace, GrowthBound bound,
                                            double initial_gap) {
    require(bound.M >= 1.0, "growth bound: M must be >= 1");
    require(std::isfinite(initial_gap) && initial_gap > 0.0, "growth bound: initial gap must be > 0");
    constexpr double slack = 1e-9;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const double cap = bound.M * std::exp(bound.omega * trace.times[i]) * initial_gap;
        if (trace.values[i] > cap * (1.0 + slack)) {
            return {false, trace.times[i]};
        }
    }
    return {};
}

namespace detail {
inline double uniform_step_of(const std::vector<double>& times) {
    require(times.size() >= 2, "time shift: trace too short to infer grid step");
    const double dt = times[1] - times[0];
    for (std::size_t i = 1; i + 1 < times.size(); ++i) {
        require(std::fabs((times[i + 1] - times[i]) - dt) <= 1e-9 * dt,
                "time shift: trace grid is not uniform");
    }
    return dt;
}
}  // namespace detail

/// Re-indexes a uniformly sampled trace so that sample i of the result holds
/// the original value at time t_i + tau. No values are recomputed.
inline TrajectoryTrace time_shift(const TrajectoryTrace& trace, double tau) {
    trace.validate();
    require(tau >= 0.0 && std::isfinite(tau), "time shift: tau must be >= 0");
    if (tau == 0.0) return trace;
    require(!trace.empty() && tau <= trace.horizon() * (1.0 + 1e-12),
            "time shift: tau beyond trace horizon");
    if (trace.size() == 1) {
        require(tau == 0.0, "time shift: tau beyond trace horizon");
        return trace;
    }
    const double dt = detail::uniform_step_of(trace.times);
    const auto k = static_cast<std::size_t>(std::llround(tau / dt));
    require(k < trace.size() && std::fabs(trace.times[k] - tau) <= 1e-9 * std::max(1.0, tau),
            "time shift: tau is not on the trace time grid");
    TrajectoryTrace out;
    out.label = trace.label.empty() ? "shifted" : trace.label + " (shifted)";
    out.overflow = trace.overflow;
    const std::size_t n = trace.size() - k;
    out.times.assign(trace.times.begin(), trace.times.begin() + static_cast<std::ptrdiff_t>(n));
    out.values.assign(trace.values.begin() + static_cast<std::ptrdiff_t>(k), trace.values.end());
    return out;
}

}  // namespace semilab
