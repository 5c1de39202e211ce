#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "presto/errors.hpp"

namespace presto {

using NodeId = std::int32_t;
using EdgeIdx = std::int64_t;
// Timestamps are doubles; integer timestamps are exact up to 2^53, which
// covers epoch seconds and microseconds. Ingestion rejects integers beyond
// that range instead of rounding silently.
using Time = double;

enum class Variant { A, E };

inline char variant_letter(Variant v) { return v == Variant::A ? 'a' : 'e'; }

struct TemporalEdge {
    NodeId src;
    NodeId dst;
    Time time;
};

// Sorted immutable edge array plus the node-label table. Edges are ordered by
// (timestamp, original input position); the index order is the authoritative
// total order everywhere else in the library.
class TemporalNetwork {
  public:
    struct Event {
        NodeId src;
        NodeId dst;
        Time time;
    };

    TemporalNetwork() = default;

    // `labels` maps dense id -> original label; pass empty to synthesize
    // decimal labels (synthetic networks built in tests and generators).
    static TemporalNetwork from_events(std::vector<Event> events,
                                       std::vector<std::string> labels = {}) {
        TemporalNetwork net;
        NodeId max_id = -1;
        for (const Event& e : events) {
            if (e.src < 0 || e.dst < 0)
                throw Error(Errc::invalid_config, "negative node id in event list");
            if (e.src == e.dst)
                throw Error(Errc::self_loop_edge,
                            "network edge with equal endpoints (node " +
                                std::to_string(e.src) + ")");
            max_id = std::max({max_id, e.src, e.dst});
        }
        if (!labels.empty() && max_id >= static_cast<NodeId>(labels.size()))
            throw Error(Errc::invalid_config, "node id outside label table");
        std::stable_sort(events.begin(), events.end(),
                         [](const Event& a, const Event& b) { return a.time < b.time; });
        net.edges_.reserve(events.size());
        for (const Event& e : events) net.edges_.push_back({e.src, e.dst, e.time});
        if (labels.empty()) {
            labels.reserve(static_cast<std::size_t>(max_id + 1));
            for (NodeId i = 0; i <= max_id; ++i) labels.push_back(std::to_string(i));
        }
        net.labels_ = std::move(labels);
        return net;
    }

    EdgeIdx edge_count() const { return static_cast<EdgeIdx>(edges_.size()); }
    NodeId node_count() const { return static_cast<NodeId>(labels_.size()); }

    const TemporalEdge& edge(EdgeIdx i) const { return edges_[static_cast<std::size_t>(i)]; }
    const std::vector<TemporalEdge>& edges() const { return edges_; }

    Time time_at(EdgeIdx i) const { return edges_[static_cast<std::size_t>(i)].time; }
    Time min_time() const { return edges_.front().time; }
    Time max_time() const { return edges_.back().time; }

    const std::string& label(NodeId id) const { return labels_[static_cast<std::size_t>(id)]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // Smallest index with timestamp >= t; edge_count() if none.
    EdgeIdx first_at_or_after(Time t) const {
        auto it = std::lower_bound(edges_.begin(), edges_.end(), t,
                                   [](const TemporalEdge& e, Time v) { return e.time < v; });
        return it - edges_.begin();
    }

    // Smallest index with timestamp > t; edge_count() if none.
    EdgeIdx first_after(Time t) const {
        auto it = std::upper_bound(edges_.begin(), edges_.end(), t,
                                   [](Time v, const TemporalEdge& e) { return v < e.time; });
        return it - edges_.begin();
    }

  private:
    std::vector<TemporalEdge> edges_;
    std::vector<std::string> labels_;
};

// Contiguous window of network edges, endpoints inclusive; lo > hi means
// empty. Holds a pointer, not ownership: the network must outlive the slice.
struct EdgeSlice {
    const TemporalNetwork* network = nullptr;
    EdgeIdx lo = 0;
    EdgeIdx hi = -1;

    static EdgeSlice whole(const TemporalNetwork& net) {
        return {&net, 0, net.edge_count() - 1};
    }

    bool empty() const { return lo > hi; }
    EdgeIdx size() const { return empty() ? 0 : hi - lo + 1; }
};

// Motif: directed multigraph on k nodes labeled [0, k) with a total order on
// its ell edges (the order in `edges_`). Construction validates everything,
// so a live TemporalMotif always satisfies the invariants.
class TemporalMotif {
  public:
    struct Edge {
        int src;
        int dst;
    };

    // Accepts arbitrary non-negative labels; compacts them to [0, k) by first
    // appearance. Rejects self-loops, empty edge lists, and multigraphs whose
    // undirected projection is not connected.
    static TemporalMotif from_edges(const std::vector<std::pair<int, int>>& raw) {
        if (raw.empty()) throw Error(Errc::empty_motif, "motif has no edges");
        TemporalMotif motif;
        std::vector<int> seen;  // original label per dense id
        auto dense = [&seen](int label) {
            for (std::size_t i = 0; i < seen.size(); ++i)
                if (seen[i] == label) return static_cast<int>(i);
            seen.push_back(label);
            return static_cast<int>(seen.size() - 1);
        };
        for (const auto& [a, b] : raw) {
            if (a < 0 || b < 0)
                throw Error(Errc::invalid_config, "negative motif node label");
            if (a == b)
                throw Error(Errc::self_loop_edge,
                            "motif edge with equal endpoints (label " + std::to_string(a) + ")");
            motif.edges_.push_back({dense(a), dense(b)});
        }
        motif.k_ = static_cast<int>(seen.size());
        if (!motif.weakly_connected())
            throw Error(Errc::disconnected_motif,
                        "motif multigraph is not weakly connected");
        return motif;
    }

    int node_count() const { return k_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const Edge& edge(int i) const { return edges_[static_cast<std::size_t>(i)]; }

  private:
    bool weakly_connected() const {
        std::vector<char> reached(static_cast<std::size_t>(k_), 0);
        std::vector<int> stack{edges_[0].src};
        reached[static_cast<std::size_t>(edges_[0].src)] = 1;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            for (const Edge& e : edges_) {
                const int other = e.src == v ? e.dst : (e.dst == v ? e.src : -1);
                if (other >= 0 && !reached[static_cast<std::size_t>(other)]) {
                    reached[static_cast<std::size_t>(other)] = 1;
                    stack.push_back(other);
                }
            }
        }
        for (char r : reached)
            if (!r) return false;
        return true;
    }

    int k_ = 0;
    std::vector<Edge> edges_;
};

// One matched occurrence: ell strictly increasing edge indices whose edges
// realize the motif in order under a node bijection, spanning at most delta.
struct DeltaInstance {
    std::vector<EdgeIdx> edge_indices;
    Time t_first = 0;
    Time t_last_inst = 0;
};

struct NetworkStats {
    double timespan = 0;
    EdgeIdx kappa_hat = 0;   // max edges in a window [t, t+delta], t an edge time
    EdgeIdx m_hat = 0;       // same with window length c*delta
    double delta_T1 = 0;     // t_{m-ell} - t_ell + c*delta, 1-based positions
    EdgeIdx delta_T2 = 0;    // edge positions with timestamp <= t_last_start
    double t_last_start = 0; // min edge timestamp >= t_m - c*delta
};

// Largest number of edges in any closed window [t_i, t_i + length] anchored
// at an edge timestamp. Two-pointer sweep, O(m).
inline EdgeIdx max_window_edges(const TemporalNetwork& net, double length) {
    const EdgeIdx m = net.edge_count();
    EdgeIdx best = 0;
    EdgeIdx j = 0;
    for (EdgeIdx i = 0; i < m; ++i) {
        if (j < i) j = i;
        const Time limit = net.time_at(i) + length;
        while (j < m && net.time_at(j) <= limit) ++j;
        best = std::max(best, j - i);
    }
    return best;
}

inline NetworkStats compute_stats(const TemporalNetwork& net, int motif_ell, double c,
                                  double delta) {
    if (motif_ell < 1) throw Error(Errc::empty_motif, "motif_ell must be at least 1");
    if (c <= 1) throw Error(Errc::invalid_config, "c must exceed 1");
    if (delta < 0) throw Error(Errc::invalid_config, "delta must be non-negative");
    const EdgeIdx m = net.edge_count();
    const EdgeIdx ell = motif_ell;
    if (m < 2 * ell)
        throw Error(Errc::network_too_small,
                    "need at least " + std::to_string(2 * ell) + " edges, have " +
                        std::to_string(m));
    NetworkStats st;
    st.timespan = net.max_time() - net.min_time();
    st.kappa_hat = max_window_edges(net, delta);
    st.m_hat = max_window_edges(net, c * delta);
    st.delta_T1 = net.time_at(m - ell - 1) - net.time_at(ell - 1) + c * delta;
    st.t_last_start = net.time_at(net.first_at_or_after(net.max_time() - c * delta));
    st.delta_T2 = net.first_after(st.t_last_start);
    return st;
}

}  // namespace presto
