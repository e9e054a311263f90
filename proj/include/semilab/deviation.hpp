#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "semilab/trace.hpp"
#include "semilab/util.hpp"

namespace semilab {

/// Every model provides one physical norm and pure evolution:
///   state_type evolve(state, t), norm, subtract, scale, zero_state,
///   grid_step() (0 for continuous time), time_on_grid(t),
///   static constexpr bool is_linear.
/// Models whose evolution is cheapest stepped forward also expose
/// flow(state) returning a cursor with `const state_type& at(double t)`.

template <class Model>
class RecomputeFlow {
public:
    using state_type = typename Model::state_type;

    RecomputeFlow(const Model& model, state_type s0)
        : model_(&model), initial_(std::move(s0)), current_(initial_), t_(0.0) {}

    const state_type& at(double t) {
        if (t != t_) {
            current_ = model_->evolve(initial_, t);
            t_ = t;
        }
        return current_;
    }

private:
    const Model* model_;
    state_type initial_;
    state_type current_;
    double t_;
};

template <class Model>
auto make_flow(const Model& model, typename Model::state_type s0) {
    if constexpr (requires { model.flow(std::move(s0)); }) {
        return model.flow(std::move(s0));
    } else {
        return RecomputeFlow<Model>(model, std::move(s0));
    }
}

/// Reference trajectory: a state intended to be a fixed point of the
/// evolution. Non-trivial references should come through
/// make_checked_reference so the fixed-point property is actually tested.
template <class State>
struct ReferenceState {
    State state;
    bool is_fixed_point = false;
};

template <class Model>
ReferenceState<typename Model::state_type> make_zero_reference(const Model& model) {
    return {model.zero_state(), true};
}

template <class Model>
ReferenceState<typename Model::state_type> make_checked_reference(
    const Model& model, typename Model::state_type state, const std::vector<double>& probe_times,
    double tol = 1e-9) {
    const double scale = std::max(1.0, model.norm(state));
    for (double t : probe_times) {
        const double gap = model.norm(model.subtract(model.evolve(state, t), state));
        require(gap <= tol * scale, "reference state failed the fixed-point check at t=" +
                                        format_double(t));
    }
    return {std::move(state), true};
}

/// Norm of the gap between the orbits of u0 and uref along the given times.
/// Both states are evolved; no linearity is assumed here. A non-finite value
/// truncates the trace and sets the overflow flag.
template <class Model>
TrajectoryTrace deviation_trace(const Model& model, const typename Model::state_type& u0,
                                const ReferenceState<typename Model::state_type>& uref,
                                const std::vector<double>& times,
                                std::string label = "deviation") {
    TrajectoryTrace trace;
    trace.label = std::move(label);
    auto flow0 = make_flow(model, u0);
    auto flow_ref = make_flow(model, uref.state);
    for (double t : times) {
        require(model.time_on_grid(t), "deviation: time sample off the model grid");
        const double d = model.norm(model.subtract(flow0.at(t), flow_ref.at(t)));
        if (!trace.push(t, d)) break;
    }
    trace.validate();
    return trace;
}

/// Max over times of | ||T(t)u0 - uref|| - ||T(t)(u0 - uref)|| | for a fixed
/// reference. Zero up to roundoff for exact models, scheme-level for grids.
template <class Model>
double linear_reduction_check(const Model& model, const typename Model::state_type& u0,
                              const ReferenceState<typename Model::state_type>& uref,
                              const std::vector<double>& times) {
    if constexpr (!Model::is_linear) {
        throw std::logic_error("linear_reduction_check: model is not linear");
    }
    require(uref.is_fixed_point, "linear_reduction_check: reference must be a fixed point");
    auto flow_full = make_flow(model, u0);
    auto flow_diff = make_flow(model, model.subtract(u0, uref.state));
    double worst = 0.0;
    for (double t : times) {
        const double a = model.norm(model.subtract(flow_full.at(t), uref.state));
        const double b = model.norm(flow_diff.at(t));
        worst = std::max(worst, std::fabs(a - b));
    }
    return worst;
}

/// || evolve(u0, t+s) - evolve(evolve(u0, s), t) ||.
template <class Model>
double verify_cocycle(const Model& model, const typename Model::state_type& u0, double t,
                      double s) {
    require(t >= 0.0 && s >= 0.0, "cocycle: t and s must be >= 0");
    require(model.time_on_grid(t) && model.time_on_grid(s) && model.time_on_grid(t + s),
            "cocycle: t, s must be representable on the model time grid");
    const auto direct = model.evolve(u0, t + s);
    const auto composed = model.evolve(model.evolve(u0, s), t);
    return model.norm(model.subtract(direct, composed));
}

/// Max relative error of D_{lambda u0, lambda uref}(t) against
/// |lambda| * D_{u0, uref}(t).
template <class Model>
double scaling_invariance_check(const Model& model, const typename Model::state_type& u0,
                                const ReferenceState<typename Model::state_type>& uref,
                                double lambda_scale, const std::vector<double>& times) {
    require(lambda_scale != 0.0 && std::isfinite(lambda_scale),
            "scaling check: lambda must be non-zero");
    const auto base = deviation_trace(model, u0, uref, times, "scaling-base");
    ReferenceState<typename Model::state_type> scaled_ref{model.scale(uref.state, lambda_scale),
                                                          uref.is_fixed_point};
    const auto scaled = deviation_trace(model, model.scale(u0, lambda_scale), scaled_ref, times,
                                        "scaling-scaled");
    const double mag = std::fabs(lambda_scale);
    double worst = 0.0;
    const std::size_t n = std::min(base.size(), scaled.size());
    for (std::size_t i = 0; i < n; ++i) {
        const double want = mag * base.values[i];
        const double got = scaled.values[i];
        const double denom = std::max({want, got, 1e-300});
        worst = std::max(worst, std::fabs(got - want) / denom);
    }
    return worst;
}

}  // namespace semilab
