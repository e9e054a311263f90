#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semilab/trace.hpp"
#include "semilab/util.hpp"

namespace semilab {

/// Coefficients of u_t = alpha u_xx + beta u_x + gamma u on [0, L] with the
/// flux coupling u_x(0) + kappa u(0) = 0 at the left end and an absorbing
/// right end u(L) = 0.
struct RobinParams {
    double alpha = 1.0;  // diffusion, > 0
    double beta = 0.0;   // drift
    double gamma = 0.0;  // reaction
    double kappa = 0.0;  // boundary coupling

    void validate() const {
        require(std::isfinite(alpha) && alpha > 0.0, "pde: alpha must be > 0");
        require(std::isfinite(beta), "pde: beta must be finite");
        require(std::isfinite(gamma), "pde: gamma must be finite");
        require(std::isfinite(kappa), "pde: kappa must be finite");
    }
};

/// Drift-removed parameters: u(t,x) = e^{eta x} e^{rho t} v(t,x) turns the
/// problem into a pure heat equation for v with boundary coupling
/// kappa + eta.
struct EffectiveParams {
    double eta = 0.0;            // -beta / (2 alpha)
    double rho = 0.0;            // gamma - beta^2 / (4 alpha)
    double shifted_kappa = 0.0;  // kappa + eta
};

inline EffectiveParams effective_params(const RobinParams& p) {
    p.validate();
    EffectiveParams e;
    e.eta = -p.beta / (2.0 * p.alpha);
    e.rho = p.gamma - p.beta * p.beta / (4.0 * p.alpha);
    e.shifted_kappa = p.kappa + e.eta;
    return e;
}

/// Explicit-step bound covering diffusion, transport and reaction.
inline double cfl_timestep(const RobinParams& p, double h, double safety) {
    p.validate();
    require(h > 0.0 && std::isfinite(h), "cfl: h must be > 0");
    require(safety > 0.0 && safety <= 1.0, "cfl: safety must be in (0, 1]");
    return safety / (2.0 * p.alpha / (h * h) + std::fabs(p.beta) / h + std::fabs(p.gamma));
}

enum class RobinBoundary {
    one_sided_first_order,  // boundary value slaved to the first interior node
    ghost_second_order,     // ghost-node closure, boundary node evolves
};

struct GridSpec {
    double L = 1.0;
    int N = 16;
    double h = 0.0;   // L / N
    double dt = 0.0;  // <= CFL bound, adjusted to divide T exactly
    double T = 1.0;
    int save_every = 1;
    double safety = 0.9;
    RobinBoundary boundary = RobinBoundary::one_sided_first_order;

    std::int64_t step_count() const { return static_cast<std::int64_t>(std::llround(T / dt)); }

    static GridSpec make(const RobinParams& params, double L, int N, double T,
                         int save_every = 1, double safety = 0.9,
                         std::optional<double> dt_request = std::nullopt,
                         RobinBoundary boundary = RobinBoundary::one_sided_first_order) {
        require(std::isfinite(L) && L > 0.0, "grid: L must be > 0");
        require(N >= 16, "grid: N must be >= 16");
        require(std::isfinite(T) && T > 0.0, "grid: T must be > 0");
        require(save_every >= 1, "grid: save_every must be >= 1");
        GridSpec g;
        g.L = L;
        g.N = N;
        g.h = L / N;
        g.T = T;
        g.save_every = save_every;
        g.safety = safety;
        g.boundary = boundary;
        const double bound = cfl_timestep(params, g.h, safety);
        double dt = bound;
        if (dt_request) {
            require(*dt_request > 0.0, "grid: dt must be > 0");
            require(*dt_request <= bound * (1.0 + 1e-12), "grid: dt exceeds the CFL bound");
            dt = std::min(*dt_request, bound);
        }
        const auto steps = static_cast<std::int64_t>(std::ceil(T / dt - 1e-9));
        g.dt = T / static_cast<double>(std::max<std::int64_t>(steps, 1));
        return g;
    }
};

/// Grid samples u_i ~ u(t, i h), i = 0..N. After every step the right end is
/// absorbing (u_N = 0) and the left end satisfies the discrete coupling
/// (u_1 - u_0)/h + kappa u_0 = 0, i.e. u_0 = u_1 / (1 - kappa h).
struct Field {
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    bool all_finite() const {
        for (double v : samples)
            if (!std::isfinite(v)) return false;
        return true;
    }
};

namespace detail {
inline double robin_closure_factor(double kappa, double h) {
    const double denom = 1.0 - kappa * h;
    require(std::fabs(denom) > 1e-9, "pde: kappa*h too close to 1, boundary closure degenerate");
    return 1.0 / denom;
}
}  // namespace detail

inline void apply_boundary(Field& f, const RobinParams& p, const GridSpec& g) {
    f.samples.back() = 0.0;
    if (g.boundary == RobinBoundary::one_sided_first_order) {
        f.samples.front() = f.samples[1] * detail::robin_closure_factor(p.kappa, g.h);
    }
    // ghost variant: node 0 is dynamic, nothing to slave here
}

inline void step_direct_into(const RobinParams& p, const GridSpec& g, const Field& in,
                             Field& out) {
    const int N = g.N;
    const double h = g.h;
    const double dt = g.dt;
    const double idh2 = p.alpha * dt / (h * h);
    const double cdr = p.beta * dt / (2.0 * h);
    const double rdt = p.gamma * dt;
    out.samples.resize(in.samples.size());
    const double* u = in.samples.data();
    double* v = out.samples.data();
    for (int i = 1; i < N; ++i) {
        v[i] = u[i] + idh2 * (u[i + 1] - 2.0 * u[i] + u[i - 1]) + cdr * (u[i + 1] - u[i - 1]) +
               rdt * u[i];
    }
    v[N] = 0.0;
    if (g.boundary == RobinBoundary::one_sided_first_order) {
        v[0] = v[1] * detail::robin_closure_factor(p.kappa, g.h);
    } else {
        // ghost node u_{-1} = u_1 + 2 kappa h u_0 from the centered coupling
        v[0] = u[0] + dt * (2.0 * p.alpha * (u[1] - (1.0 - p.kappa * h) * u[0]) / (h * h) -
                            p.beta * p.kappa * u[0] + p.gamma * u[0]);
    }
}

inline Field step_direct(const RobinParams& p, const GridSpec& g, const Field& in) {
    require(in.size() == static_cast<std::size_t>(g.N + 1), "pde: field size mismatch");
    Field out;
    step_direct_into(p, g, in, out);
    return out;
}

struct PdeRun {
    RobinParams params;
    GridSpec grid;
    std::vector<double> times;
    std::vector<Field> fields;
    bool overflow = false;
    std::vector<std::string> warnings;
};

inline Field sample_initial_field(const RobinParams& p, const GridSpec& g,
                                  const std::function<double(double)>& u0) {
    Field f;
    f.samples.resize(static_cast<std::size_t>(g.N) + 1);
    for (int i = 0; i <= g.N; ++i) {
        const double v = u0(static_cast<double>(i) * g.h);
        require(std::isfinite(v), "pde: initial data must be finite on [0, L]");
        f.samples[static_cast<std::size_t>(i)] = v;
    }
    apply_boundary(f, p, g);
    return f;
}

namespace detail {
inline void check_truncation(const Field& f, double t, std::vector<std::string>& warnings) {
    if (!warnings.empty()) return;  // one warning per run is enough
    double peak = 0.0;
    for (double v : f.samples) peak = std::max(peak, std::fabs(v));
    const double edge = std::fabs(f.samples[f.samples.size() - 2]);
    if (peak > 0.0 && edge > 1e-6 * peak) {
        warnings.push_back("truncation contamination: |u(L-h)| = " + format_double(edge) +
                           " exceeds 1e-6 * max|u| at t = " + format_double(t));
    }
}
}  // namespace detail

/// Explicit run of the discretized problem; saves every `save_every` steps
/// plus the final state. A non-finite field truncates the run and raises the
/// overflow flag instead of throwing.
inline PdeRun solve_direct(const RobinParams& p, const GridSpec& g,
                           const std::function<double(double)>& u0) {
    p.validate();
    PdeRun run{p, g, {}, {}, false, {}};
    Field cur = sample_initial_field(p, g, u0);
    detail::check_truncation(cur, 0.0, run.warnings);
    run.times.push_back(0.0);
    run.fields.push_back(cur);
    Field next;
    const std::int64_t steps = g.step_count();
    for (std::int64_t n = 1; n <= steps; ++n) {
        step_direct_into(p, g, cur, next);
        std::swap(cur, next);
        if (n % g.save_every == 0 || n == steps) {
            if (!cur.all_finite()) {
                run.overflow = true;
                break;
            }
            const double t = static_cast<double>(n) * g.dt;
            detail::check_truncation(cur, t, run.warnings);
            run.times.push_back(t);
            run.fields.push_back(cur);
        }
    }
    return run;
}

/// Drift-removed route: v_0 = e^{-eta x} u_0 evolves by the pure heat stencil
/// with boundary coupling kappa + eta, then u = e^{eta x} e^{rho t} v. Shares
/// the stepping kernel with solve_direct only through the degenerate heat
/// parameters, so the transport and reaction terms follow a genuinely
/// different route.
inline PdeRun solve_conjugated(const RobinParams& p, const GridSpec& g,
                               const std::function<double(double)>& u0) {
    p.validate();
    const EffectiveParams eff = effective_params(p);
    require(std::fabs(eff.eta) * g.L <= 700.0,
            "pde: |eta * L| > 700, conjugation weight exceeds double range");
    RobinParams heat{p.alpha, 0.0, 0.0, eff.shifted_kappa};
    GridSpec gv = g;  // same h, dt, stride; CFL for heat is implied by the direct bound
    PdeRun vrun = solve_direct(heat, gv, [&](double x) { return std::exp(-eff.eta * x) * u0(x); });
    PdeRun run{p, g, vrun.times, {}, vrun.overflow, vrun.warnings};
    run.fields.reserve(vrun.fields.size());
    for (std::size_t s = 0; s < vrun.fields.size(); ++s) {
        Field f;
        f.samples.resize(vrun.fields[s].samples.size());
        const double growth = std::exp(eff.rho * vrun.times[s]);
        bool finite = true;
        for (int i = 0; i <= g.N; ++i) {
            const double x = static_cast<double>(i) * g.h;
            const double v = std::exp(eff.eta * x) * growth * vrun.fields[s].samples[static_cast<std::size_t>(i)];
            if (!std::isfinite(v)) finite = false;
            f.samples[static_cast<std::size_t>(i)] = v;
        }
        if (!finite) {
            run.overflow = true;
            run.times.resize(s);
            break;
        }
        run.fields.push_back(std::move(f));
    }
    return run;
}

/// Trapezoid L^2 norm on the grid.
inline double field_energy(const Field& f, double h) {
    double s = 0.5 * f.samples.front() * f.samples.front() +
               0.5 * f.samples.back() * f.samples.back();
    for (std::size_t i = 1; i + 1 < f.samples.size(); ++i) s += f.samples[i] * f.samples[i];
    return std::sqrt(h * s);
}

inline TrajectoryTrace energy_trace(const PdeRun& run, std::string label = "energy") {
    TrajectoryTrace trace;
    trace.label = std::move(label);
    for (std::size_t s = 0; s < run.fields.size(); ++s) {
        if (!trace.push(run.times[s], field_energy(run.fields[s], run.grid.h))) break;
    }
    trace.overflow = trace.overflow || run.overflow;
    trace.validate();
    return trace;
}

/// Residual of the discrete energy balance between consecutive saved fields:
///   [E^2(t+dt) - E^2(t)] / (2 dt)
///     - [ -alpha ||D+ u||^2 + sign * alpha kappa u(0)^2
///         - (beta/2) u(0)^2 + gamma E^2 ].
/// Summation by parts of the interior stencil with the discrete coupling
/// produces the boundary term with the + sign; the - sign variant is kept
/// reportable because the two appear both ways in the literature and the
/// eigenmode run arbitrates between them.
inline TrajectoryTrace energy_identity_residual(const PdeRun& run, const RobinParams& p,
                                                double sign_convention = +1.0) {
    require(run.fields.size() >= 2, "energy identity: need at least two saved fields");
    const double h = run.grid.h;
    TrajectoryTrace trace;
    trace.label = "energy-identity-residual";
    for (std::size_t s = 0; s + 1 < run.fields.size(); ++s) {
        const Field& f = run.fields[s];
        const double e0 = field_energy(f, h);
        const double e1 = field_energy(run.fields[s + 1], h);
        const double dtau = run.times[s + 1] - run.times[s];
        const double dE = 0.5 * (e1 * e1 - e0 * e0) / dtau;
        double grad = 0.0;
        for (std::size_t i = 0; i + 1 < f.samples.size(); ++i) {
            const double d = (f.samples[i + 1] - f.samples[i]) / h;
            grad += d * d;
        }
        grad *= h;
        const double u0 = f.samples.front();
        const double rhs = -p.alpha * grad + sign_convention * p.alpha * p.kappa * u0 * u0 -
                           0.5 * p.beta * u0 * u0 + p.gamma * e0 * e0;
        if (!trace.push(run.times[s], std::fabs(dE - rhs))) break;
    }
    trace.overflow = trace.overflow || run.overflow;
    trace.validate();
    return trace;
}

struct EnergyResidualReport {
    TrajectoryTrace plus_variant;
    TrajectoryTrace minus_variant;
    double max_plus = 0.0;
    double max_minus = 0.0;
};

/// Streaming variant over every step pair (no field storage); returns the
/// max-norm of the residual for both boundary-term signs.
struct EnergyResidualExtrema {
    double max_plus = 0.0;
    double max_minus = 0.0;
};

inline EnergyResidualExtrema energy_residual_extrema(const RobinParams& p, const GridSpec& g,
                                                     const std::function<double(double)>& u0) {
    p.validate();
    EnergyResidualExtrema ex;
    Field cur = sample_initial_field(p, g, u0);
    Field next;
    const std::int64_t steps = g.step_count();
    const double h = g.h;
    for (std::int64_t n = 0; n < steps; ++n) {
        step_direct_into(p, g, cur, next);
        if (!next.all_finite()) break;
        const double e0 = field_energy(cur, h);
        const double e1 = field_energy(next, h);
        const double dE = 0.5 * (e1 * e1 - e0 * e0) / g.dt;
        double grad = 0.0;
        for (std::size_t i = 0; i + 1 < cur.samples.size(); ++i) {
            const double d = (cur.samples[i + 1] - cur.samples[i]) / h;
            grad += d * d;
        }
        grad *= h;
        const double b = cur.samples.front() * cur.samples.front();
        const double common = -p.alpha * grad - 0.5 * p.beta * b + p.gamma * e0 * e0;
        ex.max_plus = std::max(ex.max_plus, std::fabs(dE - (common + p.alpha * p.kappa * b)));
        ex.max_minus = std::max(ex.max_minus, std::fabs(dE - (common - p.alpha * p.kappa * b)));
        std::swap(cur, next);
    }
    return ex;
}

inline EnergyResidualReport energy_identity_report(const PdeRun& run, const RobinParams& p) {
    EnergyResidualReport rep;
    rep.plus_variant = energy_identity_residual(run, p, +1.0);
    rep.minus_variant = energy_identity_residual(run, p, -1.0);
    for (double v : rep.plus_variant.values) rep.max_plus = std::max(rep.max_plus, v);
    for (double v : rep.minus_variant.values) rep.max_minus = std::max(rep.max_minus, v);
    return rep;
}

/// Boundary-layer eigenpair of the continuum problem: mode e^{-kappa x} with
/// rate alpha kappa^2 - beta kappa + gamma. Only decaying modes (kappa > 0)
/// belong to the state space, otherwise there is no mode of this family.
struct RobinEigenmode {
    double lambda = 0.0;
    double kappa = 0.0;
    double operator()(double x) const { return std::exp(-kappa * x); }
};

inline std::optional<RobinEigenmode> robin_eigenvalue(const RobinParams& p) {
    p.validate();
    if (p.kappa <= 0.0) return std::nullopt;
    RobinEigenmode mode;
    mode.kappa = p.kappa;
    mode.lambda = p.alpha * p.kappa * p.kappa - p.beta * p.kappa + p.gamma;
    return mode;
}

/// The truncated grid problem as a model with the trapezoid L^2 norm; time
/// samples must be multiples of the run step.
class PdeModel {
public:
    using state_type = Field;
    static constexpr bool is_linear = true;

    PdeModel(RobinParams params, GridSpec grid) : params_(params), grid_(grid) {
        params_.validate();
    }

    const RobinParams& params() const { return params_; }
    const GridSpec& grid() const { return grid_; }

    double grid_step() const { return grid_.dt; }

    bool time_on_grid(double t) const {
        if (t < 0.0 || !std::isfinite(t)) return false;
        const double steps = t / grid_.dt;
        return std::fabs(steps - std::llround(steps)) <= 1e-6;
    }

    state_type evolve(const state_type& u, double t) const {
        require(time_on_grid(t), "pde model: t must be a multiple of dt");
        check_state(u);
        Field cur = u;
        apply_boundary(cur, params_, grid_);
        Field next;
        const auto steps = static_cast<std::int64_t>(std::llround(t / grid_.dt));
        for (std::int64_t n = 0; n < steps; ++n) {
            step_direct_into(params_, grid_, cur, next);
            std::swap(cur, next);
        }
        return cur;
    }

    double norm(const state_type& u) const {
        check_state(u);
        return field_energy(u, grid_.h);
    }

    state_type subtract(const state_type& a, const state_type& b) const {
        check_state(a);
        check_state(b);
        Field out;
        out.samples.resize(a.samples.size());
        for (std::size_t i = 0; i < a.samples.size(); ++i)
            out.samples[i] = a.samples[i] - b.samples[i];
        return out;
    }

    state_type scale(const state_type& u, double lambda) const {
        Field out = u;
        for (double& v : out.samples) v *= lambda;
        return out;
    }

    state_type zero_state() const {
        Field f;
        f.samples.assign(static_cast<std::size_t>(grid_.N) + 1, 0.0);
        return f;
    }

    class Flow {
    public:
        Flow(const PdeModel& model, Field s0) : model_(&model), state_(std::move(s0)), steps_(0) {
            apply_boundary(state_, model_->params_, model_->grid_);
        }

        const Field& at(double t) {
            require(model_->time_on_grid(t), "pde flow: t off grid");
            const auto target = static_cast<std::int64_t>(std::llround(t / model_->grid_.dt));
            require(target >= steps_, "pde flow: times must be non-decreasing");
            while (steps_ < target) {
                step_direct_into(model_->params_, model_->grid_, state_, scratch_);
                std::swap(state_, scratch_);
                ++steps_;
            }
            return state_;
        }

    private:
        const PdeModel* model_;
        Field state_;
        Field scratch_;
        std::int64_t steps_;
    };

    Flow flow(Field s0) const {
        check_state(s0);
        return Flow(*this, std::move(s0));
    }

private:
    void check_state(const Field& u) const {
        require(u.size() == static_cast<std::size_t>(grid_.N) + 1, "pde model: field size mismatch");
    }

    RobinParams params_;
    GridSpec grid_;
};

// --- initial data library ------------------------------------------------

inline std::function<double(double)> gaussian_bump(double center, double width,
                                                   double amplitude = 1.0) {
    require(width > 0.0, "gaussian: width must be > 0");
    return [=](double x) {
        const double z = (x - center) / width;
        return amplitude * std::exp(-0.5 * z * z);
    };
}

inline std::function<double(double)> boundary_layer(double rate, double amplitude = 1.0) {
    require(rate > 0.0, "boundary layer: rate must be > 0");
    return [=](double x) { return amplitude * std::exp(-rate * x); };
}

inline std::function<double(double)> eigenmode_data(const RobinParams& p) {
    const auto mode = robin_eigenvalue(p);
    require(mode.has_value(), "eigenmode initial data needs kappa > 0");
    return [m = *mode](double x) { return m(x); };
}

/// Seeded band-limited noise sum_{m=1..modes} xi_m sin(m pi x / L); vanishes
/// at both ends of the box.
inline std::function<double(double)> band_limited_noise(double L, int modes, double amplitude,
                                                        std::uint64_t seed) {
    require(modes >= 1 && modes <= 4096, "noise: modes must be in [1, 4096]");
    std::mt19937_64 rng(seed);
    std::vector<double> xi(static_cast<std::size_t>(modes));
    for (auto& v : xi) v = uniform_in(rng, -1.0, 1.0);
    const double norm = amplitude / std::sqrt(static_cast<double>(modes));
    return [=](double x) {
        double s = 0.0;
        for (int m = 1; m <= modes; ++m)
            s += xi[static_cast<std::size_t>(m - 1)] *
                 std::sin(static_cast<double>(m) * M_PI * x / L);
        return norm * s;
    };
}

}  // namespace semilab
