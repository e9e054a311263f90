#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "semilab/util.hpp"

namespace semilab {

/// Multiplication semigroup on a truncated complex sequence space: coordinate
/// k evolves as exp(lambda_k t). Purely imaginary rates give the isometric
/// rotation group.
class DiagonalModel {
public:
    using state_type = std::vector<std::complex<double>>;
    static constexpr bool is_linear = true;

    explicit DiagonalModel(std::vector<std::complex<double>> rates) : rates_(std::move(rates)) {
        require(!rates_.empty(), "diagonal model: needs at least one rate");
        for (const auto& r : rates_)
            require(std::isfinite(r.real()) && std::isfinite(r.imag()),
                    "diagonal model: rates must be finite");
    }

    std::size_t dimension() const { return rates_.size(); }
    const std::vector<std::complex<double>>& rates() const { return rates_; }

    double grid_step() const { return 0.0; }  // continuous time
    bool time_on_grid(double t) const { return t >= 0.0 && std::isfinite(t); }

    state_type evolve(const state_type& u, double t) const {
        require(t >= 0.0 && std::isfinite(t), "diagonal model: t must be >= 0");
        check_state(u);
        state_type out(u.size());
        for (std::size_t k = 0; k < u.size(); ++k) out[k] = u[k] * std::exp(rates_[k] * t);
        return out;
    }

    double norm(const state_type& u) const {
        check_state(u);
        double s = 0.0;
        for (const auto& c : u) s += std::norm(c);
        return std::sqrt(s);
    }

    state_type subtract(const state_type& a, const state_type& b) const {
        check_state(a);
        check_state(b);
        state_type out(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] - b[k];
        return out;
    }

    state_type scale(const state_type& u, double lambda) const {
        check_state(u);
        state_type out(u.size());
        for (std::size_t k = 0; k < u.size(); ++k) out[k] = u[k] * lambda;
        return out;
    }

    state_type zero_state() const { return state_type(rates_.size(), 0.0); }

    state_type basis_state(std::size_t k) const {
        require(k < rates_.size(), "diagonal model: basis index out of range");
        state_type u = zero_state();
        u[k] = 1.0;
        return u;
    }

    double max_real_rate() const {
        double m = rates_.front().real();
        for (const auto& r : rates_) m = std::max(m, r.real());
        return m;
    }

    bool is_isometric(double tol = 0.0) const {
        for (const auto& r : rates_)
            if (std::fabs(r.real()) > tol) return false;
        return true;
    }

private:
    void check_state(const state_type& u) const {
        require(u.size() == rates_.size(), "diagonal model: state dimension mismatch");
    }

    std::vector<std::complex<double>> rates_;
};

/// Isometric rotation group: rates i*omega_k.
inline DiagonalModel make_rotation_model(const std::vector<double>& frequencies) {
    std::vector<std::complex<double>> rates;
    rates.reserve(frequencies.size());
    for (double w : frequencies) rates.emplace_back(0.0, w);
    return DiagonalModel(std::move(rates));
}

}  // namespace semilab
