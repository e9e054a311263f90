#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "semilab/bump_spike.hpp"
#include "semilab/util.hpp"

namespace semilab {

/// Stable/unstable direct sum: a diagonal block that is uniformly
/// exponentially stable (every rate <= -omega_s) paired with a bump-spike
/// block whose orbit norm blows up along the crossing sequence. M_u/omega_u
/// describe the uniform-instability variant of the splitting; they are
/// carried in the config but the dynamics realizes growth along a sequence
/// only, which is all the mixed-orbit behavior needs.
struct SplittingModelConfig {
    std::vector<double> stable_rates;
    double omega_s = 1.0;  // > 0, rates <= -omega_s
    double M_s = 1.0;
    double M_u = 1.0;
    double omega_u = 0.0;
    BumpSpikeConfig unstable;

    void validate() const {
        require(omega_s > 0.0 && std::isfinite(omega_s), "splitting: omega_s must be > 0");
        require(M_s >= 1.0, "splitting: M_s must be >= 1");
        require(!stable_rates.empty(), "splitting: needs at least one stable rate");
        for (double r : stable_rates)
            require(std::isfinite(r) && r <= -omega_s, "splitting: stable rates must be <= -omega_s");
        unstable.validate();
        crossing_certificate(unstable);  // must have at least one crossing event
    }
};

inline SplittingModelConfig default_splitting_config() {
    SplittingModelConfig cfg;
    cfg.stable_rates = {-1.0};
    cfg.omega_s = 1.0;
    cfg.unstable = default_bump_spike_config();
    cfg.validate();
    return cfg;
}

struct SplittingState {
    std::vector<double> stable;
    BumpSpikeState unstable;
};

class SplittingModel {
public:
    using state_type = SplittingState;
    static constexpr bool is_linear = true;

    explicit SplittingModel(SplittingModelConfig cfg)
        : cfg_(std::move(cfg)), unstable_(cfg_.unstable) {
        cfg_.validate();
    }

    const SplittingModelConfig& config() const { return cfg_; }
    const BumpSpikeModel& unstable_block() const { return unstable_; }

    state_type initial_state(std::vector<double> stable_coeffs) const {
        require(stable_coeffs.size() == cfg_.stable_rates.size(),
                "splitting: stable coefficient count mismatch");
        return {std::move(stable_coeffs), unstable_.initial_state()};
    }

    double grid_step() const { return unstable_.grid_step(); }
    bool time_on_grid(double t) const { return unstable_.time_on_grid(t); }

    state_type evolve(const state_type& u, double t) const {
        require(time_on_grid(t), "splitting: t must be a multiple of the unstable grid step");
        check_state(u);
        state_type out;
        out.stable.resize(u.stable.size());
        for (std::size_t k = 0; k < u.stable.size(); ++k)
            out.stable[k] = u.stable[k] * std::exp(cfg_.stable_rates[k] * t);
        out.unstable = unstable_.evolve(u.unstable, t);
        return out;
    }

    double stable_norm(const state_type& u) const {
        double s = 0.0;
        for (double c : u.stable) s += c * c;
        return std::sqrt(s);
    }

    double norm(const state_type& u) const {
        check_state(u);
        const double s = stable_norm(u);
        const double w = unstable_.norm(u.unstable);
        return std::sqrt(s * s + w * w);
    }

    state_type subtract(const state_type& a, const state_type& b) const {
        check_state(a);
        check_state(b);
        state_type out;
        out.stable.resize(a.stable.size());
        for (std::size_t k = 0; k < a.stable.size(); ++k) out.stable[k] = a.stable[k] - b.stable[k];
        out.unstable = unstable_.subtract(a.unstable, b.unstable);
        return out;
    }

    state_type scale(const state_type& u, double lambda) const {
        state_type out = u;
        for (auto& c : out.stable) c *= lambda;
        out.unstable = unstable_.scale(out.unstable, lambda);
        return out;
    }

    state_type zero_state() const {
        return {std::vector<double>(cfg_.stable_rates.size(), 0.0), {}};
    }

private:
    void check_state(const state_type& u) const {
        require(u.stable.size() == cfg_.stable_rates.size(), "splitting: state dimension mismatch");
    }

    SplittingModelConfig cfg_;
    BumpSpikeModel unstable_;
};

struct PerturbResult {
    SplittingState state;
    double gap = 0.0;  // norm of the applied perturbation, < epsilon
};

/// Approximates u0 within epsilon by a state with a non-zero unstable
/// component, whose orbit then inherits the certified dip/peak pattern. The
/// injected bump is placed at the latest spike-free start cell so the gap is
/// exactly amplitude * sqrt(h).
inline PerturbResult perturb_to_chaotic(const SplittingModel& model, SplittingState u0,
                                        double epsilon) {
    require(epsilon > 0.0 && std::isfinite(epsilon), "perturb: epsilon must be > 0");
    for (double amp : u0.unstable.amplitudes) {
        if (amp != 0.0) return {std::move(u0), 0.0};
    }
    const BumpSpikeConfig& cfg = model.unstable_block().config();
    std::size_t pick = cfg.bump_count() - 1;
    while (pick > 0 && bump_spike_weight(cfg, cfg.bump_positions[pick]) != 1.0) --pick;
    const double weight = bump_spike_weight(cfg, cfg.bump_positions[pick]);
    const double amp = epsilon / (2.0 * std::sqrt(cfg.h * weight));
    SplittingState out = std::move(u0);
    out.unstable = {{cfg.bump_positions[pick]}, {amp}};  // prior amplitudes were all zero
    return {std::move(out), amp * std::sqrt(cfg.h * weight)};
}

}  // namespace semilab
