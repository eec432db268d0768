// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "bnpre/experiments.hpp"
#include "test_util.hpp"

using namespace bnpre;
using namespace bnpre::testutil;

namespace {

int g_failures = 0;

void report(int index, const char* name, bool ok) {
    std::printf("criterion %d (%s): %s\n", index, name, ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double now_ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

EnsembleConfig oracle_scale_ensemble() {
    EnsembleConfig e;
    e.n_total = 40;
    e.n_in = 8;
    e.n_out = 16;
    e.depth = 3;
    e.k_max = 3;
    e.function_type = FunctionType::A;
    return e;
}

// criteria 1 and 6 share one pass over the small-oracle ensemble
void criterion_1_and_6() {
    auto start = std::chrono::steady_clock::now();
    EnsembleConfig ens = oracle_scale_ensemble();
    InferenceParams params;
    params.t_max = 2 * ens.depth;

    bool all_members = true;
    double guided_sum = 0.0, uniform_sum = 0.0;
    int restricted = 0;
    SeededRng master(20260823);

    for (int i = 0; i < 50; ++i) {
        SeededRng rng = master.derive(static_cast<uint64_t>(i));
        Network net = random_network(ens, rng);
        Bits y = net.eval(random_bits(net.num_inputs(), rng));
        MarginalSet m = run_inference(net, y, params);
        PreimageReport rep = collect_preimages(net, y, m, 1000, rng);
        ExactPreimageSet exact = enumerate_preimages(net, y);
        for (const Bits& x : rep.unique_preimages) {
            if (std::find(exact.members.begin(), exact.members.end(), x) == exact.members.end()) {
                all_members = false;
            }
        }
        double total = std::pow(2.0, net.num_inputs());
        if (exact.cardinality >= 1 && static_cast<double>(exact.cardinality) < total / 2) {
            ++restricted;
            guided_sum += static_cast<double>(rep.valid_count) / 1000.0;
            uniform_sum += static_cast<double>(exact.cardinality) / total;
        }
    }
    double elapsed = now_ms_since(start);
    report(1, "oracle equivalence, zero false positives, < 10 s",
           all_members && elapsed < 10000.0);
    report(6, "guided sampling beats the uniform baseline",
           restricted > 0 && guided_sum / restricted > uniform_sum / restricted);
}

void criterion_2() {
    const double kLn3 = 1.0986122886681098;
    Network and_net = gate_net(BooleanFunction::and2());
    InferenceParams one;
    one.t_max = 1;
    MarginalSet m = run_inference(and_net, bits_of({1}), one);
    bool ok = std::abs(m.llr[0] + kLn3) < 1e-6 && std::abs(m.llr[1] + kLn3) < 1e-6;

    Network xor_net = gate_net(BooleanFunction::xor2());
    for (int target = 0; target <= 1; ++target) {
        MarginalSet mx = run_inference(xor_net, bits_of({target}), InferenceParams{});
        ok = ok && std::abs(mx.llr[0]) < 1e-9 && std::abs(mx.llr[1]) < 1e-9;
    }
    report(2, "single-gate ground truth", ok);
}

void criterion_3() {
    SeededRng master(3001);
    bool ok = true;
    for (int rep = 0; rep < 100 && ok; ++rep) {
        SeededRng rng = master.derive(static_cast<uint64_t>(rep));
        int n_chains = rng.uniform_int(1, 4);
        int max_depth = 1;
        std::vector<std::vector<BooleanFunction>> chains(n_chains);
        for (auto& c : chains) {
            int d = rng.uniform_int(1, 8);
            max_depth = std::max(max_depth, d);
            for (int i = 0; i < d; ++i) {
                c.push_back(rng.random_bit() ? BooleanFunction::not1() : BooleanFunction::wire1());
            }
        }
        Network net = multi_chain_net(chains);
        InferenceParams params;
        params.t_max = 2 * max_depth;
        for (uint32_t ymask = 0; ymask < (1u << n_chains); ++ymask) {
            Bits y = bits_from_mask(ymask, n_chains);
            Bits x = hard_decision(run_inference(net, y, params), net);
            if (net.eval(x) != y) ok = false;
        }
    }
    report(3, "invertible-tree recovery", ok);
}

void criterion_4() {
    auto start = std::chrono::steady_clock::now();
    bool ok = true;
    for (FunctionType type : {FunctionType::A, FunctionType::B}) {
        SweepConfig cfg;
        cfg.ens = EnsembleConfig::desk();  // 240 nodes, depth 7
        cfg.ens.function_type = type;
        cfg.t_list = {1, 14, 28};
        cfg.num_networks = 100;
        cfg.ys_per_net = 100;
        cfg.seed = 4001;
        cfg.threads = 4;
        SweepResult r = run_sweep(cfg);
        double at1 = r.mean_similarity_by_t.at(1);
        double at14 = r.mean_similarity_by_t.at(14);
        double at28 = r.mean_similarity_by_t.at(28);
        std::printf("  sweep type %s: mean similarity t=1 %.4f, t=14 %.4f, t=28 %.4f\n",
                    function_type_name(type).c_str(), at1, at14, at28);
        if (std::abs(at14 - at28) > 0.01 || at14 - at1 < 0.05) ok = false;
    }
    double elapsed = now_ms_since(start);
    report(4, "similarity plateau at t = 2*depth, < 10 min", ok && elapsed < 600000.0);
}

void criterion_5() {
    TableConfig cfg;
    EnsembleConfig a = EnsembleConfig::desk();
    a.function_type = FunctionType::A;
    EnsembleConfig b = EnsembleConfig::desk();
    b.function_type = FunctionType::B;
    cfg.ensembles = {a, b};
    cfg.num_networks = 100;
    cfg.ys_per_net = 5;
    cfg.n_samples = 1000;
    cfg.seed = 5001;
    cfg.threads = 4;
    TableResult r = run_table(cfg);
    const TableAggregate& agg_a = r.aggregates[0];
    const TableAggregate& agg_b = r.aggregates[1];
    std::printf("  table type A: solved %.3f, valid %.2f, unique %.2f\n", agg_a.solved_fraction,
                agg_a.mean_valid, agg_a.mean_unique);
    std::printf("  table type B: solved %.3f, valid %.2f, unique %.2f\n", agg_b.solved_fraction,
                agg_b.mean_valid, agg_b.mean_unique);
    report(5, "type B >= type A on solved fraction and unique count",
           agg_b.solved_fraction >= agg_a.solved_fraction &&
               agg_b.mean_unique >= agg_a.mean_unique);
}

void criterion_7() {
    std::vector<double> medians;
    for (int scale : {1, 2, 4}) {
        EnsembleConfig ens;
        ens.n_total = 240 * scale;
        ens.n_in = 20 * scale;
        ens.n_out = 120 * scale;
        ens.depth = 7;
        ens.k_max = 5;
        SeededRng rng(7001 + static_cast<uint64_t>(scale));
        Network net = random_network(ens, rng);
        Bits y = net.eval(random_bits(net.num_inputs(), rng));
        InferenceParams params;
        params.t_max = 14;
        std::vector<double> times;
        for (int run = 0; run < 10; ++run) {
            auto start = std::chrono::steady_clock::now();
            run_inference(net, y, params);
            times.push_back(now_ms_since(start));
        }
        std::sort(times.begin(), times.end());
        medians.push_back(times[times.size() / 2]);
    }
    std::printf("  run_inference median ms at n=240/480/960: %.2f / %.2f / %.2f\n", medians[0],
                medians[1], medians[2]);
    report(7, "linear scaling, <= 2.5x per doubling",
           medians[1] <= 2.5 * medians[0] && medians[2] <= 2.5 * medians[1]);
}

void criterion_8() {
    SweepConfig sc;
    sc.ens = oracle_scale_ensemble();
    sc.t_list = {1, 3, 6};
    sc.num_networks = 8;
    sc.ys_per_net = 4;
    sc.seed = 8001;
    sc.threads = 1;
    std::string sweep_a = run_sweep(sc).csv;
    std::string sweep_b = run_sweep(sc).csv;
    sc.threads = 4;
    std::string sweep_c = run_sweep(sc).csv;

    TableConfig tc;
    EnsembleConfig ea = oracle_scale_ensemble();
    EnsembleConfig eb = ea;
    eb.function_type = FunctionType::B;
    tc.ensembles = {ea, eb};
    tc.num_networks = 8;
    tc.ys_per_net = 3;
    tc.n_samples = 500;
    tc.seed = 8002;
    tc.threads = 1;
    std::string table_a = run_table(tc).csv;
    std::string table_b = run_table(tc).csv;
    tc.threads = 4;
    std::string table_c = run_table(tc).csv;

    report(8, "sweep and table CSVs byte-identical across runs and thread counts",
           sweep_a == sweep_b && sweep_a == sweep_c && table_a == table_b && table_a == table_c);
}

}  // namespace

int main() {
    criterion_1_and_6();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_7();
    criterion_8();
    std::printf("%s\n", g_failures == 0 ? "all criteria passed" : "FAILURES present");
    return g_failures;
}
