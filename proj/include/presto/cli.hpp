#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "presto/bounds.hpp"
#include "presto/core.hpp"
#include "presto/errors.hpp"
#include "presto/exact.hpp"
#include "presto/ingest.hpp"
#include "presto/sampler.hpp"
#include "presto/serialize.hpp"

namespace presto::cli {

// One command execution, serializable as one JSON object or one CSV row.
// Optional fields appear only for the command they apply to.
struct RunRecord {
    std::string command;
    std::string network;
    std::string motif;
    double delta = 0;
    std::optional<double> c;
    std::optional<Variant> variant;
    std::optional<std::int64_t> s;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> count;
    std::optional<double> estimate;
    double elapsed = 0;
    int workers = 1;
};

struct MapeReport {
    double exact = 0;
    std::vector<double> estimates;  // every run, pre-trim
    double mape = 0;                // percent
    double stddev = 0;              // percent, sample std dev of the same errors
    bool trimming = false;
};

inline void to_json(Json& j, const RunRecord& r) {
    j = Json{{"command", r.command}, {"network", r.network}, {"motif", r.motif},
             {"delta", r.delta}};
    if (r.c) j["c"] = *r.c;
    if (r.variant) j["variant"] = std::string(1, variant_letter(*r.variant));
    if (r.s) j["s"] = *r.s;
    if (r.seed) j["seed"] = *r.seed;
    if (r.count) j["count"] = *r.count;
    if (r.estimate) j["estimate"] = *r.estimate;
    j["elapsed"] = r.elapsed;
    j["workers"] = r.workers;
}

inline void to_json(Json& j, const MapeReport& r) {
    j = Json{{"exact", r.exact},
             {"estimates", r.estimates},
             {"mape", r.mape},
             {"stddev", r.stddev},
             {"trimming", r.trimming}};
}

namespace detail {

inline std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char ch : field) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    return quoted + '"';
}

// Numbers go through the JSON dumper: shortest round-trip representation,
// identical to what the JSON output prints.
template <class T>
std::string csv_cell(const T& v) {
    return Json(v).dump();
}

inline std::string csv_of(const RunRecord& r) {
    std::string row = "command,network,motif,delta,c,variant,s,seed,count,estimate,elapsed,workers\n";
    row += csv_escape(r.command) + ',' + csv_escape(r.network) + ',' + csv_escape(r.motif) +
           ',' + csv_cell(r.delta) + ',';
    row += (r.c ? csv_cell(*r.c) : "") + ',';
    row += (r.variant ? std::string(1, variant_letter(*r.variant)) : "") + ',';
    row += (r.s ? csv_cell(*r.s) : "") + ',';
    row += (r.seed ? csv_cell(*r.seed) : "") + ',';
    row += (r.count ? csv_cell(*r.count) : "") + ',';
    row += (r.estimate ? csv_cell(*r.estimate) : "") + ',';
    row += csv_cell(r.elapsed) + ',' + std::to_string(r.workers) + '\n';
    return row;
}

inline std::string csv_of(const MapeReport& r) {
    std::string row = "exact,mape,stddev,trimming,estimates\n";
    row += csv_cell(r.exact) + ',' + csv_cell(r.mape) + ',' + csv_cell(r.stddev) + ',' +
           (r.trimming ? "true" : "false") + ',';
    std::string joined;
    for (std::size_t i = 0; i < r.estimates.size(); ++i) {
        if (i) joined += ';';
        joined += csv_cell(r.estimates[i]);
    }
    row += csv_escape(joined) + '\n';
    return row;
}

inline ParsedNetwork load_network(const std::string& path, std::ostream* warn) {
    ParsedNetwork parsed = parse_network_file(path, ParseMode::strict);
    if (warn && parsed.report.self_loops_dropped > 0)
        *warn << "warning: dropped " << parsed.report.self_loops_dropped
              << " self-loop edge(s) from " << path << "\n";
    return parsed;
}

inline double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace detail

inline RunRecord cmd_count(const std::string& network_path, const std::string& motif_path,
                           double delta, int workers, std::ostream* warn = nullptr) {
    const auto parsed = detail::load_network(network_path, warn);
    const TemporalMotif motif = parse_motif_file(motif_path);
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t count =
        count_instances_parallel(parsed.network, motif, delta, workers);
    RunRecord rec;
    rec.command = "count";
    rec.network = network_path;
    rec.motif = motif_path;
    rec.delta = delta;
    rec.count = count;
    rec.elapsed = detail::elapsed_since(t0);
    rec.workers = workers;
    return rec;
}

inline RunRecord cmd_estimate(const std::string& network_path, const std::string& motif_path,
                              double delta, double c, Variant variant,
                              std::optional<std::int64_t> samples,
                              std::optional<ApproximationGoal> goal,
                              std::optional<double> budget_seconds, std::uint64_t seed,
                              int workers, std::ostream* warn = nullptr) {
    const auto parsed = detail::load_network(network_path, warn);
    const TemporalMotif motif = parse_motif_file(motif_path);

    std::int64_t s;
    if (goal) {
        const NetworkStats stats =
            compute_stats(parsed.network, motif.edge_count(), c, delta);
        s = variant == Variant::A
                ? bennett_sample_size_a(*goal, stats.delta_T1, c, delta)
                : bennett_sample_size_e(*goal, stats.delta_T2);
        if (samples) s = std::min(s, *samples);
    } else if (samples) {
        s = *samples;
    } else {
        // Budget-only mode: iterate until the deadline.
        s = std::numeric_limits<std::int64_t>::max();
    }

    EstimatorConfig config;
    config.variant = variant;
    config.c = c;
    config.delta = delta;
    config.s = s;
    config.seed = seed;
    config.workers = workers;
    const EstimateResult result = run_estimate(parsed.network, motif, config, budget_seconds);

    RunRecord rec;
    rec.command = "estimate";
    rec.network = network_path;
    rec.motif = motif_path;
    rec.delta = delta;
    rec.c = c;
    rec.variant = variant;
    rec.s = result.iterations;
    rec.seed = seed;
    rec.estimate = result.estimate;
    rec.elapsed = result.elapsed;
    rec.workers = workers;
    return rec;
}

// Relative errors of the runs to keep: with trimming, the single best and
// single worst runs (by error; ties broken by run order) are dropped.
inline std::vector<double> kept_relative_errors(const std::vector<double>& estimates,
                                                double exact, bool trim) {
    std::vector<double> errors;
    errors.reserve(estimates.size());
    for (double e : estimates) errors.push_back(std::fabs(e - exact) / exact);
    if (!trim) return errors;
    std::size_t best = 0, worst = 0;
    for (std::size_t i = 1; i < errors.size(); ++i) {
        if (errors[i] < errors[best]) best = i;
        if (errors[i] > errors[worst]) worst = i;
    }
    if (best == worst) worst = best == 0 ? 1 : 0;  // all equal: drop any two
    std::vector<double> kept;
    for (std::size_t i = 0; i < errors.size(); ++i)
        if (i != best && i != worst) kept.push_back(errors[i]);
    return kept;
}

inline MapeReport cmd_evaluate(const std::string& network_path, const std::string& motif_path,
                               double delta, double c, Variant variant, std::int64_t samples,
                               int runs, bool trim, std::uint64_t seed, int workers,
                               std::ostream* warn = nullptr) {
    const auto parsed = detail::load_network(network_path, warn);
    const TemporalMotif motif = parse_motif_file(motif_path);

    const std::uint64_t exact =
        count_instances_parallel(parsed.network, motif, delta, workers);
    if (exact == 0)
        throw Error(Errc::invalid_config,
                    "exact count is zero; relative error is undefined");

    EstimatorConfig config;
    config.variant = variant;
    config.c = c;
    config.delta = delta;
    config.s = samples;
    config.workers = workers;

    MapeReport report;
    report.exact = static_cast<double>(exact);
    report.trimming = trim;
    report.estimates.reserve(static_cast<std::size_t>(runs));
    for (int i = 0; i < runs; ++i) {
        config.seed = seed + static_cast<std::uint64_t>(i);
        report.estimates.push_back(run_estimate(parsed.network, motif, config).estimate);
    }

    const std::vector<double> errors = kept_relative_errors(report.estimates, report.exact, trim);
    const double mean = std::accumulate(errors.begin(), errors.end(), 0.0) /
                        static_cast<double>(errors.size());
    double ss = 0;
    for (double e : errors) ss += (e - mean) * (e - mean);
    report.mape = 100 * mean;
    report.stddev =
        errors.size() > 1 ? 100 * std::sqrt(ss / static_cast<double>(errors.size() - 1)) : 0;
    return report;
}

inline NetworkStats cmd_stats(const std::string& network_path, int motif_ell, double c,
                              double delta, std::ostream* warn = nullptr) {
    const auto parsed = detail::load_network(network_path, warn);
    return compute_stats(parsed.network, motif_ell, c, delta);
}

namespace detail {

inline void emit(const Json& j, const std::string& csv, const std::string& format,
                 const std::string& output_path, std::ostream& out) {
    std::ofstream file;
    std::ostream* dest = &out;
    if (!output_path.empty()) {
        file.open(output_path);
        if (!file) throw Error(Errc::io_error, "cannot open output file `" + output_path + "`");
        dest = &file;
    }
    if (format == "csv")
        *dest << csv;
    else
        *dest << j.dump(2) << '\n';
}

inline void require(bool cond, const std::string& message) {
    if (!cond) throw Error(Errc::usage_error, message);
}

}  // namespace detail

// Full command-line front end. Returns the process exit code: 0 success,
// 2 usage errors, 3 ingestion errors, 4 runtime errors.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"count or estimate delta-instances of temporal motifs"};
    app.name("presto");
    app.require_subcommand(1);

    std::string network_path, motif_path, variant_str = "e", format = "json", output_path;
    double delta = 0, c = 1.25, epsilon = 0, eta = 0, budget_seconds = 0;
    std::int64_t samples = 0;
    std::uint64_t seed = 1;
    int workers = 1, runs = 0, ell = 0;
    bool trim = false;

    const auto add_common = [&](CLI::App* sub, bool with_motif) {
        sub->add_option("--network", network_path, "temporal network edge list")->required();
        if (with_motif)
            sub->add_option("--motif", motif_path, "motif edge list in order")->required();
        sub->add_option("--delta", delta, "time span bound for an instance")->required();
        sub->add_option("--workers", workers, "parallel worker count")
            ->envname("PRESTO_WORKERS");
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output", output_path, "write the record to this file");
    };
    const auto add_sampling = [&](CLI::App* sub) {
        sub->add_option("--c", c, "window length multiplier (> 1)");
        sub->add_option("--variant", variant_str, "estimator variant")
            ->check(CLI::IsMember({"a", "e"}));
        sub->add_option("--seed", seed, "base random seed");
    };

    CLI::App* sc_count = app.add_subcommand("count", "exact delta-instance count");
    add_common(sc_count, true);

    CLI::App* sc_estimate = app.add_subcommand("estimate", "sampling estimate of the count");
    add_common(sc_estimate, true);
    add_sampling(sc_estimate);
    sc_estimate->add_option("--samples", samples, "iteration count s");
    sc_estimate->add_option("--epsilon", epsilon, "relative error target");
    sc_estimate->add_option("--eta", eta, "failure probability target");
    sc_estimate->add_option("--budget-seconds", budget_seconds,
                            "stop claiming iterations after this much wall time");

    CLI::App* sc_evaluate =
        app.add_subcommand("evaluate", "repeated-run MAPE against the exact count");
    add_common(sc_evaluate, true);
    add_sampling(sc_evaluate);
    sc_evaluate->add_option("--samples", samples, "iteration count s per run")->required();
    sc_evaluate->add_option("--runs", runs, "number of estimate runs")->required();
    sc_evaluate->add_flag("--trim", trim, "drop the best and worst run");

    CLI::App* sc_stats = app.add_subcommand("stats", "window statistics of a network");
    sc_stats->add_option("--network", network_path, "temporal network edge list")->required();
    sc_stats->add_option("--ell", ell, "motif edge count the stats are for")->required();
    sc_stats->add_option("--c", c, "window length multiplier (> 1)");
    sc_stats->add_option("--delta", delta, "time span bound for an instance")->required();
    sc_stats->add_option("--output", output_path, "write the record to this file");

    try {
        app.parse(argc, argv);

        using detail::require;
        if (sc_count->parsed()) {
            require(delta >= 0, "--delta must be non-negative");
            require(workers >= 1, "--workers must be at least 1");
            const RunRecord rec = cmd_count(network_path, motif_path, delta, workers, &err);
            detail::emit(Json(rec), detail::csv_of(rec), format, output_path, out);
            return 0;
        }
        if (sc_estimate->parsed()) {
            require(delta > 0, "--delta must be positive");
            require(c > 1, "--c must exceed 1");
            require(workers >= 1, "--workers must be at least 1");
            const bool has_s = sc_estimate->count("--samples") > 0;
            const bool has_eps = sc_estimate->count("--epsilon") > 0;
            const bool has_eta = sc_estimate->count("--eta") > 0;
            const bool has_budget = sc_estimate->count("--budget-seconds") > 0;
            require(has_eps == has_eta, "--epsilon and --eta must be given together");
            require(!(has_s && has_eps), "--samples and --epsilon/--eta are mutually exclusive");
            require(has_s || has_eps || has_budget,
                    "need --samples, --epsilon/--eta, or --budget-seconds");
            if (has_s) require(samples >= 1, "--samples must be at least 1");
            if (has_budget) require(budget_seconds > 0, "--budget-seconds must be positive");
            if (has_eps) {
                require(epsilon > 0, "--epsilon must be positive");
                require(eta > 0 && eta < 1, "--eta must lie in (0, 1)");
            }
            const Variant variant = variant_str == "a" ? Variant::A : Variant::E;
            const RunRecord rec = cmd_estimate(
                network_path, motif_path, delta, c, variant,
                has_s ? std::optional<std::int64_t>(samples) : std::nullopt,
                has_eps ? std::optional<ApproximationGoal>(ApproximationGoal{epsilon, eta})
                        : std::nullopt,
                has_budget ? std::optional<double>(budget_seconds) : std::nullopt, seed,
                workers, &err);
            detail::emit(Json(rec), detail::csv_of(rec), format, output_path, out);
            return 0;
        }
        if (sc_evaluate->parsed()) {
            require(delta > 0, "--delta must be positive");
            require(c > 1, "--c must exceed 1");
            require(workers >= 1, "--workers must be at least 1");
            require(samples >= 1, "--samples must be at least 1");
            require(runs >= 1, "--runs must be at least 1");
            require(!trim || runs >= 3, "--trim needs at least 3 runs");
            const Variant variant = variant_str == "a" ? Variant::A : Variant::E;
            const MapeReport report = cmd_evaluate(network_path, motif_path, delta, c, variant,
                                                   samples, runs, trim, seed, workers, &err);
            detail::emit(Json(report), detail::csv_of(report), format, output_path, out);
            return 0;
        }
        // stats
        require(delta >= 0, "--delta must be non-negative");
        require(c > 1, "--c must exceed 1");
        require(ell >= 1, "--ell must be at least 1");
        const NetworkStats stats = cmd_stats(network_path, ell, c, delta, &err);
        detail::emit(Json(stats), "", "json", output_path, out);
        return 0;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return 2;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return ex.exit_code();
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 4;
    }
}

}  // namespace presto::cli
