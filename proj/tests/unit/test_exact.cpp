#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "presto/presto.hpp"
#include "support/generators.hpp"

using namespace presto;
using testsupport::inf;

namespace {

TemporalNetwork six_edge_example() {
    return TemporalNetwork::from_events({
        {0, 1, 1}, {1, 2, 2}, {2, 0, 3}, {0, 1, 10}, {1, 2, 11}, {2, 0, 20},
    });
}

TemporalMotif triangle() {
    return TemporalMotif::from_edges({{0, 1}, {1, 2}, {2, 0}});
}

}  // namespace

TEST_CASE("triangle on the six-edge network") {
    const TemporalNetwork net = six_edge_example();
    const TemporalMotif m = triangle();
    CHECK(count_instances(net, m, 2.0) == 1);

    std::vector<DeltaInstance> found;
    enumerate_instances(net, m, 2.0,
                        [&](const DeltaInstance& inst) { found.push_back(inst); });
    REQUIRE(found.size() == 1);
    CHECK(found[0].edge_indices == std::vector<EdgeIdx>{0, 1, 2});
    CHECK(found[0].t_first == 1.0);
    CHECK(found[0].t_last_inst == 3.0);

    CHECK(count_instances(net, m, 1.0) == 0);
    // wider windows admit the rotations {1,2,3} and {2,3,4}, then {3,4,5}
    CHECK(count_instances(net, m, 9.0) == 3);
    CHECK(count_instances(net, m, 10.0) == 4);
}

TEST_CASE("single-edge motif counts every temporal edge") {
    const TemporalNetwork net = six_edge_example();
    const TemporalMotif m = TemporalMotif::from_edges({{0, 1}});
    CHECK(count_instances(net, m, 0.0) == net.edge_count());
    EdgeSlice part{&net, 2, 4};
    CHECK(count_instances(part, m, 0.0) == 3);
}

TEST_CASE("motif longer than the slice yields zero") {
    const TemporalNetwork net = six_edge_example();
    const TemporalMotif m = triangle();
    EdgeSlice two{&net, 0, 1};
    CHECK(count_instances(two, m, inf()) == 0);
    EdgeSlice empty{&net, 3, 2};
    CHECK(count_instances(empty, m, inf()) == 0);
}

TEST_CASE("repeated motif edges bind to parallel temporal edges") {
    const TemporalNetwork net = TemporalNetwork::from_events({{0, 1, 1}, {0, 1, 2}});
    const TemporalMotif m = TemporalMotif::from_edges({{0, 1}, {0, 1}});
    CHECK(count_instances(net, m, 1.0) == 1);
    CHECK(count_instances(net, m, 0.5) == 0);
}

TEST_CASE("zero span needs tied timestamps") {
    const TemporalNetwork net = TemporalNetwork::from_events({{0, 1, 1}, {1, 2, 2}});
    const TemporalMotif path2 = TemporalMotif::from_edges({{0, 1}, {1, 2}});
    CHECK(count_instances(net, path2, 0.0) == 0);
    CHECK(count_instances(net, path2, 1.0) == 1);
}

TEST_CASE("tied timestamps keep input order, so order decides matches") {
    const TemporalMotif path2 = TemporalMotif::from_edges({{0, 1}, {1, 2}});
    const TemporalNetwork forward = TemporalNetwork::from_events({{0, 1, 5}, {1, 2, 5}});
    CHECK(count_instances(forward, path2, 0.0) == 1);
    const TemporalNetwork backward = TemporalNetwork::from_events({{1, 2, 5}, {0, 1, 5}});
    CHECK(count_instances(backward, path2, 0.0) == 0);
}

TEST_CASE("matches agree with an independent brute force over random worlds") {
    testsupport::TestRng rng(20260815);
    const auto motifs = testsupport::motif_family();
    const double deltas[] = {0.0, 1.0, 3.0, inf()};
    for (int trial = 0; trial < 100; ++trial) {
        const TemporalNetwork net = testsupport::random_network(rng, 8, 1, 22);
        const auto& [name, m] = motifs[trial % motifs.size()];
        for (const double delta : deltas) {
            const uint64_t fast = count_instances(net, m, delta);
            const uint64_t slow = brute_force_count(net, m, delta);
            INFO("motif " << name << " delta " << delta);
            REQUIRE(fast == slow);
        }
    }
}

TEST_CASE("every enumerated instance independently verifies") {
    testsupport::TestRng rng(99);
    const auto motifs = testsupport::motif_family();
    for (int trial = 0; trial < 60; ++trial) {
        const TemporalNetwork net = testsupport::random_network(rng, 7, 2, 20);
        const auto& [name, m] = motifs[trial % motifs.size()];
        const double delta = rng.real(0.0, 8.0);
        uint64_t seen = 0;
        enumerate_instances(net, m, delta, [&](const DeltaInstance& inst) {
            ++seen;
            INFO("motif " << name);
            CHECK(testsupport::verify_instance(net, m, delta, inst));
        });
        CHECK(seen == count_instances(net, m, delta));
    }
}

TEST_CASE("counts grow with the window and with the slice") {
    testsupport::TestRng rng(7);
    const auto motifs = testsupport::motif_family();
    for (int trial = 0; trial < 40; ++trial) {
        const TemporalNetwork net = testsupport::random_network(rng, 8, 4, 24);
        const auto& m = motifs[trial % motifs.size()].second;
        uint64_t prev = 0;
        for (const double delta : {0.0, 0.5, 2.0, 5.0, inf()}) {
            const uint64_t cur = count_instances(net, m, delta);
            CHECK(cur >= prev);
            prev = cur;
        }
        // a sub-slice can only lose instances
        const EdgeIdx hi = net.edge_count() - 1;
        EdgeSlice whole{&net, 0, hi};
        EdgeSlice inner{&net, std::min<EdgeIdx>(1, hi), hi};
        CHECK(count_instances(inner, m, 3.0) <= count_instances(whole, m, 3.0));
    }
}

TEST_CASE("first-edge anchored counts partition the total") {
    testsupport::TestRng rng(55);
    const auto motifs = testsupport::motif_family();
    for (int trial = 0; trial < 30; ++trial) {
        const TemporalNetwork net = testsupport::random_network(rng, 8, 3, 20);
        const auto& m = motifs[trial % motifs.size()].second;
        const double delta = rng.real(0.0, 6.0);
        InstanceMatcher matcher(net, m);
        EdgeSlice whole = EdgeSlice::whole(net);
        uint64_t sum = 0;
        for (EdgeIdx first = 0; first < net.edge_count(); ++first)
            sum += matcher.count_first_anchored(whole, delta, first);
        CHECK(sum == count_instances(net, m, delta));
    }
}

TEST_CASE("parallel counting matches serial for any worker count") {
    testsupport::TestRng rng(333);
    for (int trial = 0; trial < 10; ++trial) {
        const TemporalNetwork net = testsupport::random_network(rng, 10, 50, 120);
        const TemporalMotif m = triangle();
        const double delta = 4.0;
        const uint64_t serial = count_instances(net, m, delta);
        for (const int workers : {1, 2, 3, 4, 8}) {
            CHECK(count_instances_parallel(net, m, delta, workers) == serial);
        }
    }
}
