#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "presto/core.hpp"
#include "presto/errors.hpp"
#include "presto/exact.hpp"
#include "presto/parallel.hpp"
#include "presto/rng.hpp"

namespace presto {

struct EstimatorConfig {
    Variant variant = Variant::E;
    double c = 1.25;
    double delta = 0;
    std::int64_t s = 0;  // iteration count; with a time budget, an upper cap
    std::uint64_t seed = 1;
    int workers = 1;

    void validate() const {
        if (!(c > 1) || !std::isfinite(c))
            throw Error(Errc::invalid_config, "window multiplier c must exceed 1");
        if (!(delta > 0) || !std::isfinite(delta))
            throw Error(Errc::invalid_config, "delta must be positive");
        if (s < 1) throw Error(Errc::invalid_config, "sample count must be at least 1");
        if (workers < 1) throw Error(Errc::invalid_config, "worker count must be at least 1");
    }
};

struct EstimateResult {
    double estimate = 0;
    std::vector<double> per_iteration;
    double empirical_variance = 0;  // sample variance of per_iteration (n-1 denominator)
    std::int64_t iterations = 0;
    double elapsed = 0;  // wall-clock seconds
    EstimatorConfig config;
};

// Window starts for variant A are drawn uniformly from this interval:
// [t_ell - c*delta, t_{m-ell}] (1-based positions in the sorted edge array).
// Its length equals delta_T1.
struct SamplingIntervalA {
    double lo;
    double hi;
    double length() const { return hi - lo; }
};

inline SamplingIntervalA sampling_interval_a(const TemporalNetwork& net, int motif_ell,
                                             double c, double delta) {
    const EdgeIdx m = net.edge_count();
    const EdgeIdx ell = motif_ell;
    if (m == 0) throw Error(Errc::empty_network, "cannot sample an empty network");
    if (m < ell + 1)
        throw Error(Errc::network_too_small,
                    "variant A needs at least " + std::to_string(ell + 1) + " edges, have " +
                        std::to_string(m));
    const SamplingIntervalA interval{net.time_at(ell - 1) - c * delta,
                                     net.time_at(m - ell - 1)};
    if (!(interval.hi > interval.lo))
        throw Error(Errc::degenerate_interval,
                    "variant A sampling interval has non-positive length " +
                        std::to_string(interval.length()));
    return interval;
}

inline Time window_start_a(const SamplingIntervalA& interval, IterationRng& rng) {
    return rng.uniform_real(interval.lo, interval.hi);
}

inline Time window_start_a(const TemporalNetwork& net, int motif_ell, double c, double delta,
                           IterationRng& rng) {
    return window_start_a(sampling_interval_a(net, motif_ell, c, delta), rng);
}

// Variant E draws the window start from edge timestamps not exceeding
// t_last = min{t : t >= t_m - c*delta}. With ties the draw is uniform over
// edge positions, so P(t_r = t) stays proportional to t's multiplicity;
// delta_T2 counts those positions.
struct StartLawE {
    Time t_last;
    EdgeIdx delta_T2;
};

inline StartLawE start_law_e(const TemporalNetwork& net, double c, double delta) {
    if (net.edge_count() == 0) throw Error(Errc::empty_network, "cannot sample an empty network");
    const Time t_last = net.time_at(net.first_at_or_after(net.max_time() - c * delta));
    return {t_last, net.first_after(t_last)};
}

inline Time window_start_e(const TemporalNetwork& net, const StartLawE& law,
                           IterationRng& rng) {
    return net.time_at(static_cast<EdgeIdx>(rng.uniform_index(
        static_cast<std::uint64_t>(law.delta_T2))));
}

inline Time window_start_e(const TemporalNetwork& net, double c, double delta,
                           IterationRng& rng) {
    const StartLawE law = start_law_e(net, c, delta);
    return window_start_e(net, law, rng);
}

// Edges with timestamp in [t_r, t_r + window_length], both endpoints
// inclusive, located by two bisections.
inline EdgeSlice slice_window(const TemporalNetwork& net, Time t_r, double window_length) {
    return {&net, net.first_at_or_after(t_r), net.first_after(t_r + window_length) - 1};
}

// Inverse-probability weight, variant A. The capture interval of u is
// [t_last - c*delta, t_first]; p_u is the fraction of the sampling interval
// it covers, clamped to the intersection so instances overhanging either end
// keep exact weights. For interior instances this is the plain
// delta_T1 / (c*delta - span) ratio.
inline double weight_a(const DeltaInstance& u, double c, double delta,
                       const SamplingIntervalA& interval) {
    const double cap_lo = u.t_last_inst - c * delta;
    const double cap_hi = u.t_first;
    const double overlap = std::min(cap_hi, interval.hi) - std::max(cap_lo, interval.lo);
    if (!(overlap > 0))
        throw Error(Errc::zero_capture_probability,
                    "instance capture interval misses the sampling interval");
    return interval.length() / overlap;
}

// Inverse-probability weight, variant E: delta_T2 / r_u where r_u counts edge
// positions whose timestamp is a start capturing u. Two bisections, O(log m).
inline double weight_e(const DeltaInstance& u, const TemporalNetwork& net, double c,
                       double delta, Time t_last, EdgeIdx delta_T2) {
    const Time lo = std::max(net.min_time(), u.t_last_inst - c * delta);
    const Time hi = std::min(t_last, u.t_first);
    const EdgeIdx r = hi >= lo ? net.first_after(hi) - net.first_at_or_after(lo) : 0;
    if (r < 1)
        throw Error(Errc::zero_capture_probability,
                    "no admissible start timestamp captures the instance");
    return static_cast<double>(delta_T2) / static_cast<double>(r);
}

namespace detail {

// Neumaier-compensated total; exact enough for s up to ~10^8 iteration values.
inline double compensated_total(const std::vector<double>& xs) {
    double sum = 0, comp = 0;
    for (double x : xs) {
        const double t = sum + x;
        comp += std::fabs(sum) >= std::fabs(x) ? (sum - t) + x : (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

// Per-iteration output slots, allocated in blocks on demand so a time-budget
// run with an enormous iteration cap does not preallocate the cap. Writers
// only touch their own slot; block bookkeeping is mutex-protected.
class ChunkedSlots {
  public:
    static constexpr std::int64_t kBlock = 1 << 16;

    double* slot(std::int64_t i) {
        const auto block = static_cast<std::size_t>(i / kBlock);
        std::lock_guard<std::mutex> lock(mu_);
        if (blocks_.size() <= block) blocks_.resize(block + 1);
        if (!blocks_[block]) blocks_[block] = std::make_unique<double[]>(kBlock);
        return &blocks_[block][i % kBlock];
    }

    // Single-threaded once workers have joined.
    std::vector<double> take_prefix(std::int64_t n) const {
        std::vector<double> out;
        out.reserve(static_cast<std::size_t>(n));
        for (std::int64_t i = 0; i < n; ++i)
            out.push_back(blocks_[static_cast<std::size_t>(i / kBlock)][i % kBlock]);
        return out;
    }

  private:
    std::vector<std::unique_ptr<double[]>> blocks_;
    std::mutex mu_;
};

}  // namespace detail

// One pass of the estimator: s iterations, each drawing a window start by the
// variant's law, slicing [t_r, t_r + c*delta], enumerating delta-instances
// inside it and summing their weights into X_i; the estimate is mean(X_i).
//
// Iteration i's randomness comes solely from (seed, i), and its result lands
// in slot i, so the per_iteration vector is identical for every worker count.
// With a time budget, workers stop claiming once the deadline passes and the
// mean is over the completed prefix; `iterations` reports its length.
inline EstimateResult run_estimate(const TemporalNetwork& net, const TemporalMotif& motif,
                                   const EstimatorConfig& config,
                                   std::optional<double> budget_seconds = std::nullopt) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    Deadline deadline;
    if (budget_seconds) {
        if (!(*budget_seconds > 0))
            throw Error(Errc::invalid_config, "time budget must be positive");
        deadline = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                 std::chrono::duration<double>(*budget_seconds));
    }

    const double window_length = config.c * config.delta;
    SamplingIntervalA interval{0, 0};
    StartLawE law{0, 0};
    if (config.variant == Variant::A)
        interval = sampling_interval_a(net, motif.edge_count(), config.c, config.delta);
    else
        law = start_law_e(net, config.c, config.delta);

    std::vector<InstanceMatcher> matchers;
    matchers.reserve(static_cast<std::size_t>(config.workers));
    for (int w = 0; w < config.workers; ++w) matchers.emplace_back(net, motif);

    detail::ChunkedSlots slots;
    const std::int64_t completed = parallel_for(
        config.s, config.workers, /*grain=*/1,
        [&](int worker_id, std::int64_t i) {
            IterationRng rng(config.seed, static_cast<std::uint64_t>(i));
            Time t_r;
            if (config.variant == Variant::A)
                t_r = window_start_a(interval, rng);
            else
                t_r = window_start_e(net, law, rng);
            const EdgeSlice window = slice_window(net, t_r, window_length);
            double x = 0;
            auto& matcher = matchers[static_cast<std::size_t>(worker_id)];
            matcher.enumerate(window, config.delta, [&](const DeltaInstance& u) {
                x += config.variant == Variant::A
                         ? weight_a(u, config.c, config.delta, interval)
                         : weight_e(u, net, config.c, config.delta, law.t_last, law.delta_T2);
            });
            *slots.slot(i) = x;
        },
        deadline);

    if (completed == 0)
        throw Error(Errc::infeasible_budget,
                    "time budget elapsed before any iteration completed");

    EstimateResult result;
    result.per_iteration = slots.take_prefix(completed);
    result.iterations = completed;
    result.estimate = detail::compensated_total(result.per_iteration) /
                      static_cast<double>(completed);
    if (completed >= 2) {
        double ss = 0;
        for (double x : result.per_iteration) {
            const double d = x - result.estimate;
            ss += d * d;
        }
        result.empirical_variance = ss / static_cast<double>(completed - 1);
    }
    result.config = config;
    result.config.s = completed;
    result.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                         .count();
    return result;
}

// Test oracle, variant E: evaluates the estimator's expectation by direct
// total enumeration of all delta_T2 start positions (grouped by distinct
// timestamp and weighted by multiplicity).
inline double exhaustive_expectation_e(const TemporalNetwork& net, const TemporalMotif& motif,
                                       double delta, double c) {
    const StartLawE law = start_law_e(net, c, delta);
    InstanceMatcher matcher(net, motif);
    const double window_length = c * delta;
    double total = 0;
    EdgeIdx p = 0;
    while (p < law.delta_T2) {
        const Time t = net.time_at(p);
        const EdgeIdx q = net.first_after(t);
        double x = 0;
        matcher.enumerate(slice_window(net, t, window_length), delta,
                          [&](const DeltaInstance& u) {
                              x += weight_e(u, net, c, delta, law.t_last, law.delta_T2);
                          });
        total += x * static_cast<double>(q - p);
        p = q;
    }
    return total / static_cast<double>(law.delta_T2);
}

// Test oracle, variant A: X(t_r) is piecewise constant with breakpoints where
// an edge enters or leaves the window, i.e. at {t_i} and {t_i - c*delta}.
// Integrates X exactly (segment length times the value at the segment's
// midpoint) over the sampling interval and divides by its length.
inline double exhaustive_expectation_a(const TemporalNetwork& net, const TemporalMotif& motif,
                                       double delta, double c) {
    const SamplingIntervalA interval =
        sampling_interval_a(net, motif.edge_count(), c, delta);
    std::vector<double> cuts{interval.lo, interval.hi};
    for (EdgeIdx i = 0; i < net.edge_count(); ++i) {
        for (const double t : {net.time_at(i), net.time_at(i) - c * delta}) {
            if (t > interval.lo && t < interval.hi) cuts.push_back(t);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    InstanceMatcher matcher(net, motif);
    const double window_length = c * delta;
    double total = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double len = cuts[i + 1] - cuts[i];
        if (!(len > 0)) continue;
        const double mid = cuts[i] + len / 2;
        double x = 0;
        matcher.enumerate(slice_window(net, mid, window_length), delta,
                          [&](const DeltaInstance& u) { x += weight_a(u, c, delta, interval); });
        total += x * len;
    }
    return total / interval.length();
}

}  // namespace presto
