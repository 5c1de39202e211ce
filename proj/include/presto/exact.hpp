#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

#include "presto/core.hpp"
#include "presto/errors.hpp"
#include "presto/parallel.hpp"

namespace presto {

// Chronological backtracking matcher.
// Scans slice edges in index order, assigning them to motif edges 0..ell-1
// while growing a partial node bijection; a partial match dies as soon as the
// candidate edge's timestamp exceeds t_first + delta. Edge indices in a match
// are strictly increasing, so with tied timestamps index order is what
// defines instance identity.
//
// One matcher holds reusable scratch sized by the motif; construct one per
// thread. count/enumerate are then read-only over the network.
class InstanceMatcher {
  public:
    InstanceMatcher(const TemporalNetwork& net, const TemporalMotif& motif)
        : net_(&net), k_(motif.node_count()), ell_(motif.edge_count()) {
        motif_src_.reserve(static_cast<std::size_t>(ell_));
        motif_dst_.reserve(static_cast<std::size_t>(ell_));
        for (int i = 0; i < ell_; ++i) {
            motif_src_.push_back(motif.edge(i).src);
            motif_dst_.push_back(motif.edge(i).dst);
        }
        node_of_.assign(static_cast<std::size_t>(k_), -1);
        match_.assign(static_cast<std::size_t>(ell_), 0);
        instance_.edge_indices.resize(static_cast<std::size_t>(ell_));
    }

    std::uint64_t count(EdgeSlice slice, Time delta) {
        NoSink sink;
        return run<false>(slice, delta, slice.lo, sink);
    }

    // Counts only matches whose first edge is exactly `first`. Used to
    // partition exact counting across workers.
    std::uint64_t count_first_anchored(EdgeSlice slice, Time delta, EdgeIdx first) {
        NoSink sink;
        return run<false>(slice, delta, first, sink, /*single_first=*/true);
    }

    // sink(const DeltaInstance&) fires once per instance; the passed object
    // is scratch reused across calls, so copy what you keep.
    template <class Sink>
    std::uint64_t enumerate(EdgeSlice slice, Time delta, Sink&& sink) {
        return run<true>(slice, delta, slice.lo, sink);
    }

  private:
    struct NoSink {
        void operator()(const DeltaInstance&) const {}
    };

    template <bool Emit, class Sink>
    std::uint64_t run(EdgeSlice slice, Time delta, EdgeIdx first_lo, Sink& sink,
                      bool single_first = false) {
        count_ = 0;
        if (slice.empty() || slice.hi - slice.lo + 1 < ell_) return 0;
        hi_ = slice.hi;
        delta_ = delta;
        const EdgeIdx first_hi = single_first ? first_lo : hi_;
        const auto& edges = net_->edges();
        const int mx = motif_src_[0], my = motif_dst_[0];
        for (EdgeIdx e = first_lo; e <= first_hi; ++e) {
            const TemporalEdge& te = edges[static_cast<std::size_t>(e)];
            node_of_[static_cast<std::size_t>(mx)] = te.src;
            node_of_[static_cast<std::size_t>(my)] = te.dst;
            match_[0] = e;
            if (ell_ == 1) {
                emit_match<Emit>(sink);
            } else {
                extend<Emit>(1, e + 1, te.time + delta_, sink);
            }
            node_of_[static_cast<std::size_t>(mx)] = -1;
            node_of_[static_cast<std::size_t>(my)] = -1;
        }
        return count_;
    }

    template <bool Emit, class Sink>
    void extend(int depth, EdgeIdx from, Time deadline, Sink& sink) {
        const int mx = motif_src_[static_cast<std::size_t>(depth)];
        const int my = motif_dst_[static_cast<std::size_t>(depth)];
        const NodeId fx = node_of_[static_cast<std::size_t>(mx)];
        const NodeId fy = node_of_[static_cast<std::size_t>(my)];
        const auto& edges = net_->edges();
        for (EdgeIdx e = from; e <= hi_; ++e) {
            const TemporalEdge& te = edges[static_cast<std::size_t>(e)];
            if (te.time > deadline) break;
            if (fx >= 0) {
                if (te.src != fx) continue;
            } else if (is_mapped(te.src)) {
                continue;
            }
            if (fy >= 0) {
                if (te.dst != fy) continue;
            } else if (is_mapped(te.dst)) {
                continue;
            }
            if (fx < 0) node_of_[static_cast<std::size_t>(mx)] = te.src;
            if (fy < 0) node_of_[static_cast<std::size_t>(my)] = te.dst;
            match_[static_cast<std::size_t>(depth)] = e;
            if (depth + 1 == ell_) {
                emit_match<Emit>(sink);
            } else {
                extend<Emit>(depth + 1, e + 1, deadline, sink);
            }
            if (fx < 0) node_of_[static_cast<std::size_t>(mx)] = -1;
            if (fy < 0) node_of_[static_cast<std::size_t>(my)] = -1;
        }
    }

    template <bool Emit, class Sink>
    void emit_match(Sink& sink) {
        if (count_ == std::numeric_limits<std::uint64_t>::max())
            throw Error(Errc::count_overflow, "instance count exceeds 64 bits");
        ++count_;
        if constexpr (Emit) {
            for (int i = 0; i < ell_; ++i)
                instance_.edge_indices[static_cast<std::size_t>(i)] = match_[static_cast<std::size_t>(i)];
            instance_.t_first = net_->time_at(match_[0]);
            instance_.t_last_inst = net_->time_at(match_[static_cast<std::size_t>(ell_ - 1)]);
            sink(static_cast<const DeltaInstance&>(instance_));
        }
    }

    bool is_mapped(NodeId v) const {
        for (NodeId u : node_of_)
            if (u == v) return true;
        return false;
    }

    const TemporalNetwork* net_;
    int k_;
    int ell_;
    std::vector<int> motif_src_;
    std::vector<int> motif_dst_;
    std::vector<NodeId> node_of_;  // motif node -> network node, -1 unbound
    std::vector<EdgeIdx> match_;
    DeltaInstance instance_;
    EdgeIdx hi_ = -1;
    Time delta_ = 0;
    std::uint64_t count_ = 0;
};

inline std::uint64_t count_instances(EdgeSlice slice, const TemporalMotif& motif, Time delta) {
    if (slice.empty()) return 0;
    InstanceMatcher matcher(*slice.network, motif);
    return matcher.count(slice, delta);
}

template <class Sink>
std::uint64_t enumerate_instances(EdgeSlice slice, const TemporalMotif& motif, Time delta,
                                  Sink&& sink) {
    if (slice.empty()) return 0;
    InstanceMatcher matcher(*slice.network, motif);
    return matcher.enumerate(slice, delta, sink);
}

inline std::uint64_t count_instances(const TemporalNetwork& net, const TemporalMotif& motif,
                                     Time delta) {
    return count_instances(EdgeSlice::whole(net), motif, delta);
}

template <class Sink>
std::uint64_t enumerate_instances(const TemporalNetwork& net, const TemporalMotif& motif,
                                  Time delta, Sink&& sink) {
    return enumerate_instances(EdgeSlice::whole(net), motif, delta,
                               std::forward<Sink>(sink));
}

// Exact count over the whole network; the outer loop over first-edge
// candidates is partitioned across workers. Chunked claiming keeps the
// atomic-counter traffic negligible; the total is order-independent.
inline std::uint64_t count_instances_parallel(const TemporalNetwork& net,
                                              const TemporalMotif& motif, Time delta,
                                              int workers) {
    const EdgeIdx m = net.edge_count();
    if (m == 0) return 0;
    if (workers <= 1) return count_instances(EdgeSlice::whole(net), motif, delta);

    std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
    std::vector<InstanceMatcher> matchers;
    matchers.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) matchers.emplace_back(net, motif);

    const EdgeSlice whole = EdgeSlice::whole(net);
    parallel_for(m, workers, /*grain=*/256, [&](int worker_id, std::int64_t first) {
        partial[static_cast<std::size_t>(worker_id)] +=
            matchers[static_cast<std::size_t>(worker_id)].count_first_anchored(whole, delta,
                                                                               first);
    });

    std::uint64_t total = 0;
    for (std::uint64_t p : partial) {
        if (total + p < total) throw Error(Errc::count_overflow, "instance count exceeds 64 bits");
        total += p;
    }
    return total;
}

// Test oracle: enumerate every strictly increasing ell-tuple of edge indices
// and check Def-style conditions directly (span, then a node bijection
// mapping the i-th tuple edge onto the i-th motif edge). Deliberately shares
// no code with InstanceMatcher.
inline std::uint64_t brute_force_count(const TemporalNetwork& net, const TemporalMotif& motif,
                                       Time delta) {
    const EdgeIdx m = net.edge_count();
    const int ell = motif.edge_count();
    const int k = motif.node_count();
    if (m < ell) return 0;

    std::vector<EdgeIdx> tuple(static_cast<std::size_t>(ell));
    for (int i = 0; i < ell; ++i) tuple[static_cast<std::size_t>(i)] = i;
    std::vector<NodeId> fwd(static_cast<std::size_t>(k));
    std::uint64_t count = 0;

    while (true) {
        const Time span = net.time_at(tuple[static_cast<std::size_t>(ell - 1)]) -
                          net.time_at(tuple[0]);
        if (span <= delta) {
            std::fill(fwd.begin(), fwd.end(), -1);
            bool ok = true;
            for (int i = 0; ok && i < ell; ++i) {
                const TemporalEdge& te = net.edge(tuple[static_cast<std::size_t>(i)]);
                const auto& me = motif.edge(i);
                NodeId& fs = fwd[static_cast<std::size_t>(me.src)];
                NodeId& fd = fwd[static_cast<std::size_t>(me.dst)];
                if (fs < 0) fs = te.src;
                if (fd < 0) fd = te.dst;
                ok = fs == te.src && fd == te.dst;
            }
            if (ok) {  // injectivity: distinct motif nodes to distinct network nodes
                for (int a = 0; ok && a < k; ++a)
                    for (int b = a + 1; ok && b < k; ++b)
                        ok = fwd[static_cast<std::size_t>(a)] != fwd[static_cast<std::size_t>(b)];
                if (ok) ++count;
            }
        }
        int pos = ell - 1;
        while (pos >= 0 && tuple[static_cast<std::size_t>(pos)] == m - ell + pos) --pos;
        if (pos < 0) break;
        ++tuple[static_cast<std::size_t>(pos)];
        for (int j = pos + 1; j < ell; ++j)
            tuple[static_cast<std::size_t>(j)] = tuple[static_cast<std::size_t>(j - 1)] + 1;
    }
    return count;
}

}  // namespace presto
