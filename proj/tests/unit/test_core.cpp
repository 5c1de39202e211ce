#include <catch2/catch_amalgamated.hpp>

#include "presto/presto.hpp"
#include "support/generators.hpp"

using namespace presto;
using testsupport::TestRng;

namespace {

TemporalNetwork six_edge_example() {
    return TemporalNetwork::from_events(
        {{0, 1, 1}, {1, 2, 2}, {2, 0, 3}, {0, 1, 10}, {1, 2, 11}, {2, 0, 20}});
}

Errc code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return Errc::usage_error;
}

}  // namespace

TEST_CASE("motif validation accepts a triangle") {
    const TemporalMotif m = TemporalMotif::from_edges({{0, 1}, {1, 2}, {2, 0}});
    CHECK(m.node_count() == 3);
    CHECK(m.edge_count() == 3);
    CHECK(m.edge(1).src == 1);
    CHECK(m.edge(1).dst == 2);
}

TEST_CASE("motif validation rejects bad inputs") {
    CHECK(code_of([] { TemporalMotif::from_edges({{0, 1}, {2, 3}}); }) ==
          Errc::disconnected_motif);
    CHECK(code_of([] { TemporalMotif::from_edges({{0, 0}}); }) == Errc::self_loop_edge);
    CHECK(code_of([] { TemporalMotif::from_edges({}); }) == Errc::empty_motif);
}

TEST_CASE("motif labels compact to a contiguous range by first appearance") {
    const TemporalMotif m = TemporalMotif::from_edges({{7, 3}, {3, 9}});
    CHECK(m.node_count() == 3);
    CHECK(m.edge(0).src == 0);  // 7
    CHECK(m.edge(0).dst == 1);  // 3
    CHECK(m.edge(1).src == 1);
    CHECK(m.edge(1).dst == 2);  // 9
}

TEST_CASE("multigraph motifs are allowed and stay connected through parallels") {
    const TemporalMotif m = TemporalMotif::from_edges({{0, 1}, {0, 1}, {1, 0}});
    CHECK(m.node_count() == 2);
    CHECK(m.edge_count() == 3);
}

TEST_CASE("network edges sort by timestamp, stable under ties") {
    const TemporalNetwork net = TemporalNetwork::from_events(
        {{3, 4, 5}, {0, 1, 2}, {1, 2, 5}, {2, 3, 5}});
    REQUIRE(net.edge_count() == 4);
    CHECK(net.edge(0).src == 0);
    // ties at t=5 keep input order: (3,4) then (1,2) then (2,3)
    CHECK(net.edge(1).src == 3);
    CHECK(net.edge(2).src == 1);
    CHECK(net.edge(3).src == 2);
    for (EdgeIdx i = 0; i + 1 < net.edge_count(); ++i)
        CHECK(net.time_at(i) <= net.time_at(i + 1));
}

TEST_CASE("network construction rejects self-loops and negative ids") {
    CHECK(code_of([] { TemporalNetwork::from_events({{2, 2, 1}}); }) == Errc::self_loop_edge);
    CHECK(code_of([] { TemporalNetwork::from_events({{-1, 2, 1}}); }) == Errc::invalid_config);
}

TEST_CASE("timestamp bisection helpers") {
    const TemporalNetwork net = six_edge_example();
    CHECK(net.first_at_or_after(3) == 2);
    CHECK(net.first_at_or_after(3.5) == 3);
    CHECK(net.first_at_or_after(21) == 6);
    CHECK(net.first_after(3) == 3);
    CHECK(net.first_after(0) == 0);
    CHECK(net.first_after(20) == 6);
}

TEST_CASE("edge slices") {
    const TemporalNetwork net = six_edge_example();
    const EdgeSlice whole = EdgeSlice::whole(net);
    CHECK(whole.size() == 6);
    CHECK_FALSE(whole.empty());
    const EdgeSlice empty{&net, 4, 3};
    CHECK(empty.empty());
    CHECK(empty.size() == 0);
}

TEST_CASE("compute_stats on the six-edge example") {
    const TemporalNetwork net = six_edge_example();
    const NetworkStats st = compute_stats(net, 3, 5, 2);  // window length 10
    CHECK(st.timespan == 19);
    CHECK(st.kappa_hat == 3);  // [1,3] holds three edges
    CHECK(st.m_hat == 5);      // [1,11] holds five
    CHECK(st.t_last_start == 10);
    CHECK(st.delta_T2 == 4);  // starts 1,2,3,10
    CHECK(st.delta_T1 == 10);  // t_3 - t_3 + 10
}

TEST_CASE("compute_stats window sweep handles degenerate lengths") {
    const TemporalNetwork tied =
        TemporalNetwork::from_events({{0, 1, 7}, {1, 2, 7}, {2, 3, 7}, {3, 4, 7}});
    const NetworkStats st = compute_stats(tied, 2, 1.5, 0);
    CHECK(st.kappa_hat == 4);  // single timestamp: every window holds all edges
    CHECK(st.m_hat == 4);
    CHECK(st.delta_T2 == 4);

    // delta = 0 on mixed timestamps: kappa_hat is the max multiplicity
    const TemporalNetwork mixed = TemporalNetwork::from_events(
        {{0, 1, 1}, {1, 2, 2}, {2, 3, 2}, {3, 4, 2}, {4, 5, 9}});
    CHECK(compute_stats(mixed, 2, 2, 0).kappa_hat == 3);
}

TEST_CASE("compute_stats rejects networks below 2*ell edges") {
    const TemporalNetwork net = six_edge_example();
    CHECK(code_of([&] { compute_stats(net, 4, 1.25, 1); }) == Errc::network_too_small);
}

TEST_CASE("window maximum is consistent across window lengths and a brute sweep") {
    TestRng rng(20260815);
    for (int trial = 0; trial < 50; ++trial) {
        const TemporalNetwork net = testsupport::random_network(rng, 6, 4, 25);
        for (const double len : {0.0, 1.0, 3.0, 10.0}) {
            EdgeIdx want = 0;
            for (EdgeIdx i = 0; i < net.edge_count(); ++i) {
                EdgeIdx got = 0;
                for (EdgeIdx j = 0; j < net.edge_count(); ++j)
                    if (net.time_at(j) >= net.time_at(i) &&
                        net.time_at(j) <= net.time_at(i) + len)
                        ++got;
                want = std::max(want, got);
            }
            CHECK(max_window_edges(net, len) == want);
        }
    }
}

TEST_CASE("stats invariants hold on random networks") {
    TestRng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        const TemporalNetwork net = testsupport::random_network(rng, 8, 8, 30);
        const double delta = static_cast<double>(rng.range(0, 5));
        const double c = 1 + 0.25 * static_cast<double>(rng.range(1, 12));
        const NetworkStats st = compute_stats(net, 2, c, delta);
        CHECK(st.kappa_hat <= st.m_hat);
        CHECK(st.m_hat <= net.edge_count());
        CHECK(st.delta_T2 >= 1);
        CHECK(st.delta_T2 <= net.edge_count());
        CHECK(st.t_last_start >= net.min_time());
        CHECK(st.t_last_start <= net.max_time());
    }
}
