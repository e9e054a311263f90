#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "semilab/util.hpp"

namespace semilab {

/// Weighted left-translation model on an integer grid.
///
/// The state is a sparse family of unit-width bumps: bump k starts at cell
/// a_k with amplitude c_k and moves one cell toward the origin per time unit,
/// dropping out once it passes cell 0. The line carries unit weight plus a
/// spike of weight H_j at each cell s_j, so the squared norm of a state is
///
///     sum_k  amp_k^2 * h * (1 + H_j  if pos_k == s_j).
///
/// With the default constants (s_j = 3j^2, H_j = 8^j, c_j = 2^-j,
/// a_j = s_j + j) bump k meets spike k at time k with peak contribution
/// c_k^2 (1 + H_k) >= 2^k, while the off-spike baseline decays like 4^-k.
/// One orbit therefore produces arbitrarily large excursions at the crossing
/// times and returns arbitrarily close to zero in between, and every norm
/// value has the exact closed form above.
struct BumpSpikeConfig {
    double h = 1.0;                              // cell width
    std::vector<std::int64_t> bump_positions;    // a_k, strictly increasing, >= 0
    std::vector<double> bump_amplitudes;         // c_k > 0
    std::vector<std::int64_t> spike_positions;   // s_j, strictly increasing, >= 0
    std::vector<double> spike_heights;           // H_j > 0

    std::size_t bump_count() const { return bump_positions.size(); }
    std::size_t spike_count() const { return spike_positions.size(); }

    void validate() const {
        require(h > 0.0 && std::isfinite(h), "bump-spike: h must be > 0");
        require(!bump_positions.empty(), "bump-spike: needs at least one bump");
        require(bump_positions.size() == bump_amplitudes.size(),
                "bump-spike: bump positions/amplitudes length mismatch");
        require(spike_positions.size() == spike_heights.size(),
                "bump-spike: spike positions/heights length mismatch");
        for (std::size_t k = 0; k < bump_positions.size(); ++k) {
            require(bump_positions[k] >= 0, "bump-spike: bump positions must be >= 0");
            if (k > 0)
                require(bump_positions[k] > bump_positions[k - 1],
                        "bump-spike: bump positions must be strictly increasing");
            require(bump_amplitudes[k] > 0.0 && std::isfinite(bump_amplitudes[k]),
                    "bump-spike: bump amplitudes must be > 0");
        }
        for (std::size_t j = 0; j < spike_positions.size(); ++j) {
            require(spike_positions[j] >= 0, "bump-spike: spike positions must be >= 0");
            if (j > 0)
                require(spike_positions[j] > spike_positions[j - 1],
                        "bump-spike: spike positions must be strictly increasing");
            require(spike_heights[j] > 0.0 && std::isfinite(spike_heights[j]),
                    "bump-spike: spike heights must be > 0");
        }
    }
};

/// Default certified construction. K = 24 keeps every weight 8^k and every
/// amplitude 2^-k exactly representable with wide headroom in double.
inline BumpSpikeConfig default_bump_spike_config(int K = 24) {
    require(K >= 1 && K <= 300, "bump-spike: K out of range");
    BumpSpikeConfig cfg;
    for (int j = 0; j < K; ++j) {
        const std::int64_t sj = 3 * static_cast<std::int64_t>(j) * j;
        cfg.spike_positions.push_back(sj);
        cfg.spike_heights.push_back(std::pow(8.0, j));
        cfg.bump_positions.push_back(sj + j);
        cfg.bump_amplitudes.push_back(std::pow(2.0, -j));
    }
    cfg.validate();
    return cfg;
}

/// Spike weight at a cell: 1 plus the spike height if one sits there.
inline double bump_spike_weight(const BumpSpikeConfig& cfg, std::int64_t pos) {
    const auto it = std::lower_bound(cfg.spike_positions.begin(), cfg.spike_positions.end(), pos);
    if (it != cfg.spike_positions.end() && *it == pos) {
        return 1.0 + cfg.spike_heights[static_cast<std::size_t>(it - cfg.spike_positions.begin())];
    }
    return 1.0;
}

/// Closed-form squared norm of the orbit at integer time m, evaluated
/// directly from the construction constants (independent of any simulated
/// state).
inline double bump_spike_norm_sq(const BumpSpikeConfig& cfg, std::int64_t m) {
    require(m >= 0, "bump-spike norm: m must be >= 0");
    double total = 0.0;
    for (std::size_t k = 0; k < cfg.bump_count(); ++k) {
        if (cfg.bump_positions[k] < m) continue;  // bump already exited
        const std::int64_t pos = cfg.bump_positions[k] - m;
        const double c = cfg.bump_amplitudes[k];
        total += c * c * cfg.h * bump_spike_weight(cfg, pos);
    }
    return total;
}

inline double bump_spike_norm(const BumpSpikeConfig& cfg, std::int64_t m) {
    return std::sqrt(bump_spike_norm_sq(cfg, m));
}

/// Crossing certificate row: bump k reaches spike k at t_k with a guaranteed
/// peak norm of at least amplitude * sqrt(h * (1 + H_k)).
struct CrossingCertificate {
    int k = 0;
    std::int64_t t_k = 0;
    double peak_lower_bound = 0.0;
};

inline std::vector<CrossingCertificate> crossing_certificate(const BumpSpikeConfig& cfg) {
    std::vector<CrossingCertificate> rows;
    const std::size_t n = std::min(cfg.bump_count(), cfg.spike_count());
    for (std::size_t k = 0; k < n; ++k) {
        const std::int64_t tk = cfg.bump_positions[k] - cfg.spike_positions[k];
        if (tk < 0) continue;  // bump starts past its spike, never crosses
        const double c = cfg.bump_amplitudes[k];
        rows.push_back({static_cast<int>(k), tk,
                        std::sqrt(c * c * cfg.h * (1.0 + cfg.spike_heights[k]))});
    }
    require(!rows.empty(), "bump-spike: certificate is empty (no crossing events)");
    return rows;
}

/// Sparse interval state: distinct cell positions with amplitudes.
struct BumpSpikeState {
    std::vector<std::int64_t> positions;
    std::vector<double> amplitudes;

    std::size_t size() const { return positions.size(); }
};

/// Simulated route for the same dynamics: the state is shifted one cell per
/// step. Kept deliberately separate from the closed-form norm so the two can
/// cross-check each other.
class BumpSpikeModel {
public:
    using state_type = BumpSpikeState;
    static constexpr bool is_linear = true;

    explicit BumpSpikeModel(BumpSpikeConfig cfg) : cfg_(std::move(cfg)) { cfg_.validate(); }

    const BumpSpikeConfig& config() const { return cfg_; }

    state_type initial_state() const {
        return {cfg_.bump_positions, cfg_.bump_amplitudes};
    }

    double grid_step() const { return cfg_.h; }

    bool time_on_grid(double t) const {
        if (t < 0.0 || !std::isfinite(t)) return false;
        const double steps = t / cfg_.h;
        return std::fabs(steps - std::llround(steps)) <= 1e-9 * std::max(1.0, steps);
    }

    state_type evolve(const state_type& u, double t) const {
        require(time_on_grid(t), "bump-spike: t must be a multiple of the grid step");
        state_type cur = u;
        const auto steps = static_cast<std::int64_t>(std::llround(t / cfg_.h));
        for (std::int64_t n = 0; n < steps; ++n) shift_once(cur);
        return cur;
    }

    double norm(const state_type& u) const {
        double total = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            total += u.amplitudes[i] * u.amplitudes[i] * cfg_.h *
                     bump_spike_weight(cfg_, u.positions[i]);
        }
        return std::sqrt(total);
    }

    state_type subtract(const state_type& a, const state_type& b) const {
        state_type out;
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j >= b.size() || (i < a.size() && a.positions[i] < b.positions[j])) {
                out.positions.push_back(a.positions[i]);
                out.amplitudes.push_back(a.amplitudes[i]);
                ++i;
            } else if (i >= a.size() || b.positions[j] < a.positions[i]) {
                out.positions.push_back(b.positions[j]);
                out.amplitudes.push_back(-b.amplitudes[j]);
                ++j;
            } else {
                const double amp = a.amplitudes[i] - b.amplitudes[j];
                if (amp != 0.0) {
                    out.positions.push_back(a.positions[i]);
                    out.amplitudes.push_back(amp);
                }
                ++i;
                ++j;
            }
        }
        return out;
    }

    state_type scale(const state_type& u, double lambda) const {
        state_type out = u;
        for (auto& amp : out.amplitudes) amp *= lambda;
        return out;
    }

    state_type zero_state() const { return {}; }

    class Flow {
    public:
        Flow(const BumpSpikeModel& model, state_type s0)
            : model_(&model), state_(std::move(s0)), steps_done_(0) {}

        const state_type& at(double t) {
            require(model_->time_on_grid(t), "bump-spike flow: t off grid");
            const auto target = static_cast<std::int64_t>(std::llround(t / model_->cfg_.h));
            require(target >= steps_done_, "bump-spike flow: times must be non-decreasing");
            while (steps_done_ < target) {
                model_->shift_once(state_);
                ++steps_done_;
            }
            return state_;
        }

    private:
        const BumpSpikeModel* model_;
        state_type state_;
        std::int64_t steps_done_;
    };

    Flow flow(state_type s0) const { return Flow(*this, std::move(s0)); }

private:
    void shift_once(state_type& u) const {
        std::size_t w = 0;
        for (std::size_t i = 0; i < u.size(); ++i) {
            const std::int64_t p = u.positions[i] - 1;
            if (p < 0) continue;  // translated past the origin
            u.positions[w] = p;
            u.amplitudes[w] = u.amplitudes[i];
            ++w;
        }
        u.positions.resize(w);
        u.amplitudes.resize(w);
    }

    BumpSpikeConfig cfg_;
};

}  // namespace semilab
