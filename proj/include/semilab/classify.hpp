#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "semilab/trace.hpp"
#include "semilab/util.hpp"

namespace semilab {

struct ClassifierThresholds {
    double burn_in_fraction = 0.05;  // fraction of the horizon dropped before the min
    double eps_dip = 1e-3;           // dip ratio below this counts as a return
    double big_growth = 1e3;         // growth ratio above this counts as an excursion
    double band_lo = 0.1;            // bounded band, relative to the initial value
    double band_hi = 10.0;

    void validate() const {
        require(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0,
                "thresholds: burn_in_fraction must be in [0, 1)");
        require(eps_dip > 0.0 && eps_dip < 1.0, "thresholds: eps_dip must be in (0, 1)");
        require(big_growth > 1.0, "thresholds: big_growth must be > 1");
        require(band_lo > 0.0 && band_hi > band_lo, "thresholds: bad bounded band");
    }
};

/// Finite-horizon stand-ins for the asymptotic dip/excursion pattern:
/// post-burn-in minimum against the global maximum, plus the number of
/// crossings of the geometric mid-level between them.
struct DeviationSummary {
    double initial = 0.0;
    double min_after_burn = 0.0;
    double min_overall = 0.0;
    double max_overall = 0.0;
    double dip_ratio = 0.0;     // min_after_burn / initial
    double growth_ratio = 0.0;  // max_overall / initial
    double t_min = 0.0;
    double t_max = 0.0;
    double final_window_median = 0.0;  // median of the last 10% of samples
    int alternation_count = 0;
    bool overflow = false;
};

enum class Verdict { decaying, bounded, growing, irregular_candidate, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::decaying: return "DECAYING";
        case Verdict::bounded: return "BOUNDED";
        case Verdict::growing: return "GROWING";
        case Verdict::irregular_candidate: return "IRREGULAR_CANDIDATE";
        case Verdict::inconclusive: return "INCONCLUSIVE";
    }
    return "INCONCLUSIVE";
}

struct VerdictRecord {
    Verdict verdict = Verdict::inconclusive;
    ClassifierThresholds thresholds;
    std::string explanation;
};

inline DeviationSummary summarize(const TrajectoryTrace& trace,
                                  const ClassifierThresholds& thr = {}) {
    trace.validate();
    thr.validate();
    require(!trace.empty(), "summarize: trace is empty");
    require(trace.values.front() > 0.0, "summarize: initial deviation must be > 0");

    DeviationSummary s;
    s.initial = trace.values.front();
    s.overflow = trace.overflow;

    const double t0 = trace.times.front();
    const double burn_t = t0 + thr.burn_in_fraction * (trace.times.back() - t0);

    s.max_overall = trace.values.front();
    s.min_overall = trace.values.front();
    s.t_max = trace.times.front();
    bool have_min = false;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        s.min_overall = std::min(s.min_overall, trace.values[i]);
        if (trace.values[i] > s.max_overall) {
            s.max_overall = trace.values[i];
            s.t_max = trace.times[i];
        }
        if (trace.times[i] >= burn_t && (!have_min || trace.values[i] < s.min_after_burn)) {
            s.min_after_burn = trace.values[i];
            s.t_min = trace.times[i];
            have_min = true;
        }
    }
    if (!have_min) {  // burn-in swallowed everything; fall back to the last sample
        s.min_after_burn = trace.values.back();
        s.t_min = trace.times.back();
    }
    s.dip_ratio = s.min_after_burn / s.initial;
    s.growth_ratio = s.max_overall / s.initial;

    const double mid = std::sqrt(s.min_after_burn * s.max_overall);
    int flips = 0;
    int last_sign = 0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trace.times[i] < burn_t) continue;
        const double d = trace.values[i] - mid;
        const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++flips;
        last_sign = sign;
    }
    s.alternation_count = flips;

    const std::size_t window =
        std::max<std::size_t>(3, static_cast<std::size_t>(std::ceil(0.1 * trace.size())));
    const std::size_t start = trace.size() > window ? trace.size() - window : 0;
    std::vector<double> tail(trace.values.begin() + static_cast<std::ptrdiff_t>(start),
                             trace.values.end());
    std::sort(tail.begin(), tail.end());
    s.final_window_median = tail[tail.size() / 2];
    return s;
}

/// Decision rule over the summary only; every quantity involved is a ratio
/// against the initial value, so rescaling a trace cannot change the verdict.
inline VerdictRecord classify(const DeviationSummary& s, const ClassifierThresholds& thr = {}) {
    thr.validate();
    VerdictRecord rec;
    rec.thresholds = thr;
    const bool big = s.growth_ratio > thr.big_growth || s.overflow;

    if (s.dip_ratio < thr.eps_dip && big && s.alternation_count >= 1) {
        rec.verdict = Verdict::irregular_candidate;
        rec.explanation = "dip_ratio " + format_double(s.dip_ratio) + " < " +
                          format_double(thr.eps_dip) + ", growth_ratio " +
                          format_double(s.growth_ratio) + (s.overflow ? " (overflow)" : "") +
                          ", alternations " + std::to_string(s.alternation_count);
        return rec;
    }
    if (s.growth_ratio <= thr.band_hi && s.final_window_median < thr.eps_dip * s.initial) {
        rec.verdict = Verdict::decaying;
        rec.explanation = "bounded by " + format_double(thr.band_hi) +
                          " x initial with final-window median " +
                          format_double(s.final_window_median / s.initial) + " x initial";
        return rec;
    }
    if (s.dip_ratio >= thr.band_lo && big) {
        rec.verdict = Verdict::growing;
        rec.explanation = "growth_ratio " + format_double(s.growth_ratio) +
                          (s.overflow ? " (overflow)" : "") + " with dip_ratio " +
                          format_double(s.dip_ratio) + " >= " + format_double(thr.band_lo);
        return rec;
    }
    if (!s.overflow && s.min_overall >= thr.band_lo * s.initial &&
        s.max_overall <= thr.band_hi * s.initial) {
        rec.verdict = Verdict::bounded;
        rec.explanation = "whole trace inside [" + format_double(thr.band_lo) + ", " +
                          format_double(thr.band_hi) + "] x initial";
        return rec;
    }
    rec.verdict = Verdict::inconclusive;
    rec.explanation = "dip_ratio " + format_double(s.dip_ratio) + ", growth_ratio " +
                      format_double(s.growth_ratio) + ", alternations " +
                      std::to_string(s.alternation_count) +
                      (s.overflow ? ", overflow" : "");
    return rec;
}

}  // namespace semilab
