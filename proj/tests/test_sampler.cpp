#include <doctest.h>

#include <cmath>

#include "bnpre/oracle.hpp"
#include "bnpre/sampler.hpp"
#include "bnpre/netgen.hpp"
#include "test_util.hpp"

using namespace bnpre;
using namespace bnpre::testutil;

TEST_CASE("sample_input follows the marginals") {
    Network net = identity_net(2);
    MarginalSet m;
    m.llr.assign(net.size(), 0.0);

    SUBCASE("clamped marginals are deterministic in practice") {
        m.llr[0] = 50.0;
        m.llr[1] = -50.0;
        SeededRng rng(1);
        for (int rep = 0; rep < 1000; ++rep) {
            CHECK(sample_input(m, net, rng) == bits_of({0, 1}));
        }
    }

    SUBCASE("uniform and biased empirical frequencies") {
        m.llr[0] = std::log(3.0);  // p(x0 = 0) = 3/4
        m.llr[1] = 0.0;
        SeededRng rng(2);
        int n = 100000;
        int zeros0 = 0, zeros1 = 0;
        for (int rep = 0; rep < n; ++rep) {
            Bits x = sample_input(m, net, rng);
            zeros0 += x[0] == 0;
            zeros1 += x[1] == 0;
        }
        double sigma = std::sqrt(0.25 * n);
        CHECK(std::abs(zeros0 - 0.75 * n) < 3 * std::sqrt(0.75 * 0.25 * n));
        CHECK(std::abs(zeros1 - 0.5 * n) < 3 * sigma);
    }
}

TEST_CASE("collect_preimages on the XOR gate") {
    Network net = gate_net(BooleanFunction::xor2());
    MarginalSet m;
    m.llr.assign(net.size(), 0.0);
    SeededRng rng(5);
    auto report = collect_preimages(net, bits_of({1}), m, 1000, rng);
    CHECK(report.samples_drawn == 1000);
    CHECK(report.solved);
    CHECK(std::abs(static_cast<double>(report.valid_count) - 500.0) < 3 * std::sqrt(250.0));
    CHECK(report.unique_preimages == std::set<Bits>{bits_of({0, 1}), bits_of({1, 0})});
}

TEST_CASE("unsatisfiable target yields an empty report") {
    Network net = gate_net(BooleanFunction::constant(2, 0));
    MarginalSet m;
    m.llr.assign(net.size(), 0.0);
    SeededRng rng(6);
    auto report = collect_preimages(net, bits_of({1}), m, 500, rng);
    CHECK(report.valid_count == 0);
    CHECK_FALSE(report.solved);
    CHECK(report.unique_preimages.empty());
}

TEST_CASE("inference-guided sampling on the AND gate") {
    Network net = gate_net(BooleanFunction::and2());
    MarginalSet m = run_inference(net, bits_of({1}), InferenceParams{});
    SeededRng rng(7);
    auto report = collect_preimages(net, bits_of({1}), m, 1000, rng);
    CHECK(report.solved);
    CHECK(report.unique_preimages == std::set<Bits>{bits_of({1, 1})});
    // expected rate = p(x0=1) * p(x1=1) from the converged marginals
    double p1a = llr_to_probs(m.llr[0]).second;
    double p1b = llr_to_probs(m.llr[1]).second;
    double expect = 1000 * p1a * p1b;
    CHECK(std::abs(static_cast<double>(report.valid_count) - expect) <
          3 * std::sqrt(expect * (1 - p1a * p1b)) + 1);
}

TEST_CASE("uniform marginals estimate |preimage set| / 2^N") {
    SeededRng rng(8);
    EnsembleConfig cfg;
    cfg.n_total = 28;
    cfg.n_in = 7;
    cfg.n_out = 8;
    cfg.depth = 2;
    cfg.k_max = 3;
    for (int rep = 0; rep < 5; ++rep) {
        Network net = random_network(cfg, rng);
        Bits y = net.eval(random_bits(7, rng));
        double truth =
            static_cast<double>(enumerate_preimages(net, y).cardinality) / std::pow(2.0, 7);
        MarginalSet uniform;
        uniform.llr.assign(net.size(), 0.0);
        uint64_t n = 20000;
        auto report = collect_preimages(net, y, uniform, n, rng);
        double rate = static_cast<double>(report.valid_count) / static_cast<double>(n);
        double sigma = std::sqrt(truth * (1 - truth) / static_cast<double>(n));
        CHECK(std::abs(rate - truth) <= 3 * sigma + 1e-12);
    }
}

TEST_CASE("fixed seed gives a bit-identical report") {
    Network net = gate_net(BooleanFunction::or2());
    MarginalSet m = run_inference(net, bits_of({0}), InferenceParams{});
    SeededRng r1(99), r2(99);
    auto a = collect_preimages(net, bits_of({0}), m, 2000, r1);
    auto b = collect_preimages(net, bits_of({0}), m, 2000, r2);
    CHECK(a.valid_count == b.valid_count);
    CHECK(a.unique_preimages == b.unique_preimages);
    // every reported preimage re-validates
    for (const Bits& x : a.unique_preimages) CHECK(net.eval(x) == bits_of({0}));
}
