#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "presto/core.hpp"
#include "presto/errors.hpp"

namespace presto {

// Target quality: relative error epsilon with failure probability at most eta.
struct ApproximationGoal {
    double epsilon;
    double eta;

    void validate() const {
        if (!(epsilon > 0) || !std::isfinite(epsilon))
            throw Error(Errc::invalid_goal, "epsilon must be a positive real");
        if (!(eta > 0) || !(eta < 1))
            throw Error(Errc::invalid_goal, "eta must lie in (0, 1)");
    }
};

namespace detail {

// h(x) = (1+x) ln(1+x) - x, the rate function in Bennett's inequality.
inline double bennett_h(double x) { return (1 + x) * std::log1p(x) - x; }

inline std::int64_t ceil_to_count(double raw) {
    if (std::isnan(raw) || raw < 0)
        throw Error(Errc::invalid_goal, "sample size expression is not a non-negative real");
    // 2^53: beyond this, doubles no longer hold integers exactly, and any such
    // sample budget is unusable anyway.
    if (raw > 9007199254740992.0)
        throw Error(Errc::infeasible_budget,
                    "required sample size exceeds 2^53 (" + std::to_string(raw) + ")");
    const auto s = static_cast<std::int64_t>(std::ceil(raw));
    return s < 1 ? 1 : s;
}

inline double checked_ratio(double delta_T1, double c, double delta) {
    if (!(c > 1)) throw Error(Errc::invalid_goal, "c must exceed 1");
    if (!(delta > 0)) throw Error(Errc::invalid_goal, "delta must be positive");
    if (!(delta_T1 > 0)) throw Error(Errc::invalid_goal, "delta_T1 must be positive");
    return delta_T1 / ((c - 1) * delta);
}

}  // namespace detail

// Samples sufficient for an (epsilon, eta) guarantee with variant A, from the
// Hoeffding-style bound: quadratic in delta_T1/((c-1)delta).
inline std::int64_t hoeffding_sample_size_a(const ApproximationGoal& goal, double delta_T1,
                                            double c, double delta) {
    goal.validate();
    const double ratio = detail::checked_ratio(delta_T1, c, delta);
    return detail::ceil_to_count(ratio * ratio / (2 * goal.epsilon * goal.epsilon) *
                                 std::log(2 / goal.eta));
}

// Bennett-style bound for variant A: linear in delta_T1/((c-1)delta).
inline std::int64_t bennett_sample_size_a(const ApproximationGoal& goal, double delta_T1,
                                          double c, double delta) {
    goal.validate();
    const double ratio = detail::checked_ratio(delta_T1, c, delta);
    if (!(ratio > 1))
        throw Error(Errc::invalid_goal,
                    "delta_T1/((c-1)delta) must exceed 1 for the Bennett bound");
    return detail::ceil_to_count((ratio - 1) * std::log(2 / goal.eta) /
                                 detail::bennett_h(goal.epsilon));
}

// Bennett-style bound for variant E: linear in delta_T2 - 1. delta_T2 == 1
// means the single window is deterministic, so one sample suffices.
inline std::int64_t bennett_sample_size_e(const ApproximationGoal& goal,
                                          std::int64_t delta_T2) {
    goal.validate();
    if (delta_T2 < 1) throw Error(Errc::invalid_goal, "delta_T2 must be at least 1");
    return detail::ceil_to_count(static_cast<double>(delta_T2 - 1) * std::log(2 / goal.eta) /
                                 detail::bennett_h(goal.epsilon));
}

// Multiplier of C_M^2 bounding Var(estimate): (ratio-1)/s for A,
// (delta_T2-1)/s for E. `dt` is delta_T1 for A and delta_T2 for E; c and
// delta are ignored for E.
inline double variance_bound_factor(Variant variant, double dt, double c, double delta,
                                    std::int64_t s) {
    if (s < 1) throw Error(Errc::invalid_goal, "sample count must be at least 1");
    if (variant == Variant::A) {
        const double ratio = detail::checked_ratio(dt, c, delta);
        if (!(ratio >= 1))
            throw Error(Errc::invalid_goal, "delta_T1/((c-1)delta) below 1");
        return (ratio - 1) / static_cast<double>(s);
    }
    if (!(dt >= 1)) throw Error(Errc::invalid_goal, "delta_T2 must be at least 1");
    return (dt - 1) / static_cast<double>(s);
}

// Two-sided Bennett tail for the mean of s iid samples with per-sample
// variance at most v_hat and centered range at most range_b:
// P(|mean - mu| > deviation_t) <= 2 exp(-s (v_hat/B^2) h(t B / v_hat)).
// Non-increasing in s and deviation_t, non-decreasing in v_hat; the latter is
// what justifies plugging in an upper bound for the unknown true variance.
inline double bennett_tail(std::int64_t s, double v_hat, double range_b, double deviation_t) {
    if (s < 1) throw Error(Errc::invalid_goal, "sample count must be at least 1");
    if (!(v_hat > 0)) throw Error(Errc::invalid_goal, "variance bound must be positive");
    if (!(range_b > 0)) throw Error(Errc::invalid_goal, "range bound must be positive");
    if (!(deviation_t >= 0)) throw Error(Errc::invalid_goal, "deviation must be non-negative");
    const double exponent = static_cast<double>(s) * (v_hat / (range_b * range_b)) *
                            detail::bennett_h(deviation_t * range_b / v_hat);
    return 2 * std::exp(-exponent);
}

}  // namespace presto
