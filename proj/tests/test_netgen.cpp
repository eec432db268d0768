#include <doctest.h>

#include <cmath>
#include <map>

#include "bnpre/netgen.hpp"
#include "test_util.hpp"

using namespace bnpre;
using namespace bnpre::testutil;

TEST_CASE("type A functions are uniform over tables") {
    SeededRng rng(1);
    std::map<uint64_t, int> counts;
    int n = 100000;
    for (int rep = 0; rep < n; ++rep) {
        counts[random_function_type_a(1, rng).words()[0]]++;
    }
    CHECK(counts.size() == 4);
    double sigma = std::sqrt(n * 0.25 * 0.75);
    for (auto& [table, c] : counts) {
        CHECK(std::abs(c - n / 4.0) < 3 * sigma);
    }

    // per-bit bias at k = 2
    int bit_counts[4] = {0, 0, 0, 0};
    for (int rep = 0; rep < n; ++rep) {
        uint64_t w = random_function_type_a(2, rng).words()[0];
        for (int b = 0; b < 4; ++b) bit_counts[b] += (w >> b) & 1;
    }
    for (int b = 0; b < 4; ++b) {
        CHECK(std::abs(bit_counts[b] - n / 2.0) < 3 * std::sqrt(n * 0.25));
    }
}

TEST_CASE("type A determinism") {
    SeededRng r1(42), r2(42);
    for (int rep = 0; rep < 100; ++rep) {
        CHECK(random_function_type_a(5, r1) == random_function_type_a(5, r2));
    }
}

TEST_CASE("type B functions are always unate") {
    SeededRng rng(2);
    for (int rep = 0; rep < 10000; ++rep) {
        int k = rng.uniform_int(1, 8);
        CHECK(is_unate(random_function_type_b(k, rng)));
    }
}

TEST_CASE("type B at k=1 is never XOR-like") {
    SeededRng rng(3);
    for (int rep = 0; rep < 1000; ++rep) {
        auto f = random_function_type_b(1, rng);
        uint64_t w = f.words()[0];
        CHECK((w == 0b01 || w == 0b10));  // wire or NOT; terms are nonempty
    }
}

TEST_CASE("random_network produces valid desk networks") {
    SeededRng rng(4);
    EnsembleConfig cfg = EnsembleConfig::desk();
    for (int rep = 0; rep < 3; ++rep) {
        Network net = random_network(cfg, rng);
        CHECK(net.size() == 240);
        CHECK(net.num_inputs() == 20);
        CHECK(net.num_outputs() == 120);
        // every non-out node has a consumer
        for (int id = 0; id < net.size(); ++id) {
            bool is_out = std::find(net.out_nodes().begin(), net.out_nodes().end(), id) !=
                          net.out_nodes().end();
            if (!is_out) CHECK(!net.fanout()[id].empty());
        }
        // round trip
        CHECK(parse_network(serialize_network(net)) == net);
    }
}

TEST_CASE("longest path respects the layer bound") {
    SeededRng rng(5);
    EnsembleConfig cfg = EnsembleConfig::desk();  // depth 7
    Network net = random_network(cfg, rng);
    std::vector<int> longest(net.size(), 0);
    int best = 0;
    for (int id = 0; id < net.size(); ++id) {
        for (int src : net.node(id).inputs) {
            longest[id] = std::max(longest[id], longest[src] + 1);
        }
        best = std::max(best, longest[id]);
    }
    CHECK(best <= cfg.depth + 1);
}

TEST_CASE("fixed seed gives a bit-identical serialized network") {
    EnsembleConfig cfg = EnsembleConfig::desk();
    cfg.function_type = FunctionType::B;
    SeededRng r1(77), r2(77);
    CHECK(serialize_network(random_network(cfg, r1)) ==
          serialize_network(random_network(cfg, r2)));
}

TEST_CASE("paper preset has 1000 interior nodes") {
    SeededRng rng(6);
    Network net = random_network(EnsembleConfig::paper(), rng);
    int interior = 0;
    for (const Node& nd : net.nodes()) interior += nd.kind == NodeKind::interior;
    CHECK(interior == 1000);
    CHECK(net.size() == 2400);
}

TEST_CASE("infeasible configs are rejected") {
    SeededRng rng(7);
    EnsembleConfig cfg = EnsembleConfig::desk();
    cfg.k_max = 25;  // above K_MAX
    CHECK_THROWS_AS(random_network(cfg, rng), BnError);
    cfg = EnsembleConfig::desk();
    cfg.n_in = 3;
    cfg.k_max = 5;  // above the first-layer pool
    CHECK_THROWS_AS(random_network(cfg, rng), BnError);
    cfg = EnsembleConfig::desk();
    cfg.n_total = 100;  // smaller than N + M
    CHECK_THROWS_AS(random_network(cfg, rng), BnError);
}
