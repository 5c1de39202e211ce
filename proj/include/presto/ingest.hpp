#pragma once

#include <cctype>
#include <cerrno>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "presto/core.hpp"
#include "presto/errors.hpp"

namespace presto {

enum class ParseMode { strict, lenient };

struct IngestReport {
    std::int64_t lines_read = 0;  // data lines; blanks and comments excluded
    std::int64_t edges_kept = 0;
    std::int64_t self_loops_dropped = 0;
    std::int64_t malformed_lines = 0;
    std::int64_t distinct_nodes = 0;
};

struct ParsedNetwork {
    TemporalNetwork network;
    IngestReport report;
};

namespace detail {

// Largest integer magnitude a double stores exactly.
inline constexpr long long max_exact_int = 9007199254740992LL;  // 2^53

inline bool blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (std::isspace(static_cast<unsigned char>(ch))) continue;
        return ch == '#' || ch == '%';
    }
    return true;
}

// Splits on whitespace and commas.
inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
            if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

inline bool integer_like(const std::string& tok) {
    std::size_t i = (tok[0] == '+' || tok[0] == '-') ? 1 : 0;
    if (i == tok.size()) return false;
    for (; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    return true;
}

// was_integer reports which grammar matched, so strict mode can reject files
// mixing integer and real timestamps.
inline bool parse_time(const std::string& tok, Time& out, bool& was_integer) {
    errno = 0;
    char* end = nullptr;
    if (integer_like(tok)) {
        const long long v = std::strtoll(tok.c_str(), &end, 10);
        if (errno == ERANGE || *end != '\0') return false;
        if (v > max_exact_int || v < -max_exact_int) return false;
        out = static_cast<Time>(v);
        was_integer = true;
        return true;
    }
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0' || !std::isfinite(v)) return false;
    out = v;
    was_integer = false;
    return true;
}

}  // namespace detail

// Reads `src dst timestamp` lines (whitespace or comma separated; `#`/`%`
// start comment lines). Self-loops are dropped and counted in both modes.
// strict aborts on the first malformed line; lenient skips and counts them.
inline ParsedNetwork parse_network(std::istream& in, ParseMode mode) {
    std::vector<TemporalNetwork::Event> events;
    std::vector<std::string> labels;
    std::unordered_map<std::string, NodeId> ids;
    IngestReport report;

    auto dense_id = [&](const std::string& label) {
        auto [it, inserted] = ids.try_emplace(label, static_cast<NodeId>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    std::string line;
    std::int64_t line_no = 0;
    bool saw_integer = false, saw_real = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::blank_or_comment(line)) continue;
        ++report.lines_read;

        const auto fail = [&](const std::string& why) {
            if (mode == ParseMode::strict) throw Error(Errc::malformed_line, why, line_no);
            ++report.malformed_lines;
        };

        const auto tokens = detail::tokenize(line);
        if (tokens.size() != 3) {
            fail("expected `src dst timestamp`, got " + std::to_string(tokens.size()) +
                 " fields");
            continue;
        }
        Time t;
        bool is_int;
        if (!detail::parse_time(tokens[2], t, is_int)) {
            fail("unparsable timestamp `" + tokens[2] + "`");
            continue;
        }
        (is_int ? saw_integer : saw_real) = true;
        if (mode == ParseMode::strict && saw_integer && saw_real) {
            throw Error(Errc::malformed_line, "file mixes integer and real timestamps",
                        line_no);
        }
        if (tokens[0] == tokens[1]) {
            ++report.self_loops_dropped;
            continue;
        }
        events.push_back({dense_id(tokens[0]), dense_id(tokens[1]), t});
        ++report.edges_kept;
    }
    if (in.bad()) throw Error(Errc::io_error, "stream failure while reading network");
    if (events.empty())
        throw Error(Errc::empty_network,
                    "no usable edges (" + std::to_string(report.lines_read) + " data lines, " +
                        std::to_string(report.self_loops_dropped) + " self-loops, " +
                        std::to_string(report.malformed_lines) + " malformed)");
    report.distinct_nodes = static_cast<std::int64_t>(labels.size());
    return {TemporalNetwork::from_events(std::move(events), std::move(labels)), report};
}

inline ParsedNetwork parse_network_file(const std::string& path, ParseMode mode) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open network file `" + path + "`");
    return parse_network(in, mode);
}

// Reads `x y` lines in motif-order; labels are arbitrary strings. Validation
// (self-loops, connectivity, non-emptiness) happens in TemporalMotif.
inline TemporalMotif parse_motif(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::string> labels;
    auto dense_id = [&labels](const std::string& label) {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        labels.push_back(label);
        return static_cast<int>(labels.size() - 1);
    };
    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::blank_or_comment(line)) continue;
        const auto tokens = detail::tokenize(line);
        if (tokens.size() != 2)
            throw Error(Errc::malformed_line,
                        "expected `x y`, got " + std::to_string(tokens.size()) + " fields",
                        line_no);
        edges.emplace_back(dense_id(tokens[0]), dense_id(tokens[1]));
    }
    if (in.bad()) throw Error(Errc::io_error, "stream failure while reading motif");
    return TemporalMotif::from_edges(edges);
}

inline TemporalMotif parse_motif_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::io_error, "cannot open motif file `" + path + "`");
    return parse_motif(in);
}

// Inverse of parse_network, used for round-trip checks and fixture dumps.
// Integral timestamps print as integers so they re-parse in the same grammar.
inline void write_network(const TemporalNetwork& net, std::ostream& out) {
    char buf[64];
    for (EdgeIdx i = 0; i < net.edge_count(); ++i) {
        const TemporalEdge& e = net.edge(i);
        const double t = e.time;
        if (t == std::floor(t) && std::fabs(t) <= static_cast<double>(detail::max_exact_int)) {
            std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(t));
        } else {
            std::snprintf(buf, sizeof buf, "%.17g", t);
        }
        out << net.label(e.src) << ' ' << net.label(e.dst) << ' ' << buf << '\n';
    }
}

}  // namespace presto
