#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <string>

namespace semilab {

/// Formats a double with 17 significant digits (round-trip safe).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Uniform double in [0,1) built from the top 53 bits of the engine output,
/// so streams are identical across standard library implementations.
inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

/// Marsaglia polar method would branch on the engine; a 12-sum is branch-free
/// and deterministic enough for test corpora.
inline double gaussian01(std::mt19937_64& rng) {
    double s = 0.0;
    for (int i = 0; i < 12; ++i) s += uniform01(rng);
    return s - 6.0;
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

inline bool nearly_equal(double a, double b, double rel, double abs = 0.0) {
    const double diff = std::fabs(a - b);
    return diff <= abs || diff <= rel * std::max(std::fabs(a), std::fabs(b));
}

}  // namespace semilab
