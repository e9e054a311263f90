#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <unsupported/Eigen/MatrixFunctions>

#include "semilab/util.hpp"

namespace semilab {

/// Finite-dimensional semigroup u(t) = exp(G t) u0 for a dense generator G.
/// The exponential is evaluated by Eigen's scaling-and-squaring Pade scheme;
/// matrix_evolve_selfcheck provides the step-halved accuracy probe used by
/// the verification suite.
template <typename Scalar>
class MatrixModelT {
public:
    using matrix_type = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using state_type = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
    static constexpr bool is_linear = true;
    static constexpr int kMaxDim = 64;

    explicit MatrixModelT(matrix_type generator) : generator_(std::move(generator)) {
        require(generator_.rows() == generator_.cols(), "matrix model: generator must be square");
        require(generator_.rows() >= 1 && generator_.rows() <= kMaxDim,
                "matrix model: dimension must be in [1,64]");
        require(generator_.allFinite(), "matrix model: generator entries must be finite");
    }

    Eigen::Index dimension() const { return generator_.rows(); }
    const matrix_type& generator() const { return generator_; }

    double grid_step() const { return 0.0; }
    bool time_on_grid(double t) const { return t >= 0.0 && std::isfinite(t); }

    state_type evolve(const state_type& u, double t) const {
        require(t >= 0.0 && std::isfinite(t), "matrix model: t must be >= 0");
        check_state(u);
        if (t == 0.0) return u;
        matrix_type p = (generator_ * Scalar(t)).exp();
        return p * u;
    }

    double norm(const state_type& u) const {
        check_state(u);
        return u.norm();
    }

    state_type subtract(const state_type& a, const state_type& b) const {
        check_state(a);
        check_state(b);
        return a - b;
    }

    state_type scale(const state_type& u, double lambda) const {
        check_state(u);
        return u * Scalar(lambda);
    }

    state_type zero_state() const { return state_type::Zero(dimension()); }

    /// Orbit cursor with a cached one-step propagator; on a uniform time grid
    /// each advance is a single mat-vec.
    class Flow {
    public:
        Flow(const MatrixModelT& model, state_type s0)
            : model_(&model), state_(std::move(s0)), t_(0.0) {}

        const state_type& at(double t) {
            require(t >= t_ - 1e-15, "matrix flow: times must be non-decreasing");
            const double dt = t - t_;
            if (dt <= 0.0) return state_;
            if (!have_step_ || std::fabs(dt - step_dt_) > 1e-12 * std::max(1.0, std::fabs(step_dt_))) {
                step_ = (model_->generator_ * Scalar(dt)).exp();
                step_dt_ = dt;
                have_step_ = true;
            }
            state_ = step_ * state_;
            t_ = t;
            return state_;
        }

    private:
        const MatrixModelT* model_;
        state_type state_;
        double t_;
        matrix_type step_;
        double step_dt_ = 0.0;
        bool have_step_ = false;
    };

    Flow flow(state_type s0) const {
        check_state(s0);
        return Flow(*this, std::move(s0));
    }

private:
    void check_state(const state_type& u) const {
        require(u.size() == dimension(), "matrix model: state dimension mismatch");
    }

    matrix_type generator_;
};

using MatrixModel = MatrixModelT<double>;
using ComplexMatrixModel = MatrixModelT<std::complex<double>>;

/// Relative gap between exp(G t) u and exp(G t/2) applied twice; verifies
/// the exponential to the 1e-10 accuracy target on concrete inputs.
template <typename Scalar>
double matrix_evolve_selfcheck(const MatrixModelT<Scalar>& model,
                               const typename MatrixModelT<Scalar>::state_type& u0, double t) {
    const auto full = model.evolve(u0, t);
    const auto halved = model.evolve(model.evolve(u0, t / 2.0), t / 2.0);
    const double scale = std::max({model.norm(full), model.norm(halved), 1e-300});
    return model.norm(model.subtract(full, halved)) / scale;
}

}  // namespace semilab
