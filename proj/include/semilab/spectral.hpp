#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "semilab/robin_pde.hpp"
#include "semilab/util.hpp"

namespace semilab {

/// Membership of lambda in the open region where both characteristic roots
/// mu of alpha mu^2 + beta mu + (gamma - lambda) = 0 decay, i.e. Re mu < 0
/// strictly. Points within 1e-12 of the boundary are excluded.
inline bool spectral_region_member(const RobinParams& p, std::complex<double> lambda) {
    p.validate();
    const std::complex<double> c = p.gamma - lambda;
    const std::complex<double> disc = std::sqrt(std::complex<double>(p.beta * p.beta, 0.0) -
                                                4.0 * p.alpha * c);
    // pick the larger-magnitude numerator, recover the mate via the root product
    const std::complex<double> u1 = -p.beta + disc;
    const std::complex<double> u2 = -p.beta - disc;
    const std::complex<double> big = std::abs(u1) >= std::abs(u2) ? u1 : u2;
    std::complex<double> r1, r2;
    if (std::abs(big) == 0.0) {
        r1 = r2 = 0.0;  // double root at the origin
    } else {
        r1 = big / (2.0 * p.alpha);
        r2 = c / (p.alpha * r1);
    }
    const double margin = 1e-12 * std::max({1.0, std::abs(r1), std::abs(r2)});
    return r1.real() < -margin && r2.real() < -margin;
}

struct SpectralIndicators {
    double rho = 0.0;
    double eta = 0.0;
    bool rho_positive = false;
    bool region_meets_imaginary_axis = false;
    std::optional<double> lambda_kappa;
    std::optional<bool> lambda_kappa_positive;
};

/// Effective reaction rate plus the imaginary-axis test for the decaying-root
/// region. The region crosses i R exactly when beta > 0 and gamma > 0 (the
/// window is |tau| < beta sqrt(gamma/alpha)); the scan over a geometric
/// ladder of lambda = i tau covers the same window and must agree with that
/// closed form.
inline SpectralIndicators dsw_indicator(const RobinParams& p) {
    p.validate();
    SpectralIndicators ind;
    ind.rho = p.gamma - p.beta * p.beta / (4.0 * p.alpha);
    ind.eta = -p.beta / (2.0 * p.alpha);
    ind.rho_positive = ind.rho > 0.0;

    bool meets = false;
    if (p.beta != 0.0) {  // beta = 0 forces a symmetric root pair, no membership
        const double scale =
            p.gamma > 0.0 ? std::max(1.0, std::fabs(p.beta) * std::sqrt(p.gamma / p.alpha)) : 1.0;
        meets = spectral_region_member(p, {0.0, 0.0});
        const int points = 512;
        const double tau_min = 1e-6 * scale;
        const double tau_max = 10.0 * scale;
        const double step = std::pow(tau_max / tau_min, 1.0 / (points - 1));
        double tau = tau_min;
        for (int i = 0; i < points && !meets; ++i, tau *= step) {
            meets = spectral_region_member(p, {0.0, tau}) ||
                    spectral_region_member(p, {0.0, -tau});
        }
    }
    ind.region_meets_imaginary_axis = meets;

    if (p.kappa > 0.0) {
        const auto mode = robin_eigenvalue(p);
        ind.lambda_kappa = mode->lambda;
        ind.lambda_kappa_positive = mode->lambda > 0.0;
    }
    return ind;
}

}  // namespace semilab
