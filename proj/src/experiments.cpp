#include "bnpre/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

namespace bnpre {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

Bits random_bits(int n, SeededRng& rng) {
    Bits b(n);
    for (auto& v : b) v = static_cast<uint8_t>(rng.random_bit());
    return b;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

}  // namespace

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

std::string function_type_name(FunctionType t) { return t == FunctionType::A ? "A" : "B"; }

SweepResult run_sweep(const SweepConfig& cfg) {
    std::vector<int> ts = cfg.t_list;
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    if (ts.empty() || ts.front() < 1) {
        throw BnError(BnErrc::infeasible_config, "sweep needs iteration checkpoints >= 1");
    }

    SweepResult result;
    int rows_per_net = cfg.ys_per_net * static_cast<int>(ts.size());
    result.rows.resize(static_cast<size_t>(cfg.num_networks) * rows_per_net);
    SeededRng master(cfg.seed);

    parallel_for(cfg.num_networks, cfg.threads, [&](int net_idx) {
        SeededRng rng = master.derive(static_cast<uint64_t>(net_idx));
        Network net = random_network(cfg.ens, rng);
        InferenceParams params;
        params.t_max = ts.back();
        for (int y_idx = 0; y_idx < cfg.ys_per_net; ++y_idx) {
            Bits x = random_bits(net.num_inputs(), rng);
            Bits y = net.eval(x);
            auto start = std::chrono::steady_clock::now();
            InferenceEngine engine(net, y, params);
            size_t next_t = 0;
            size_t row = static_cast<size_t>(net_idx) * rows_per_net +
                         static_cast<size_t>(y_idx) * ts.size();
            while (next_t < ts.size()) {
                engine.step();
                if (engine.iteration() != ts[next_t]) continue;
                MarginalSet m = engine.marginals();
                Bits y_hat = net.eval(hard_decision(m, net));
                SweepRow& r = result.rows[row + next_t];
                r.net = net_idx;
                r.y = y_idx;
                r.t = ts[next_t];
                r.similarity = similarity(y, y_hat);
                r.wall_ms = cfg.timing ? elapsed_ms(start) : 0.0;
                ++next_t;
            }
        }
    });

    std::ostringstream csv;
    csv << "record,type,net,y,t,similarity,wall_ms\n";
    std::string type = function_type_name(cfg.ens.function_type);
    for (const SweepRow& r : result.rows) {
        csv << "run," << type << ',' << r.net << ',' << r.y << ',' << r.t << ','
            << fmt(r.similarity) << ',';
        if (cfg.timing) csv << fmt(r.wall_ms);
        csv << '\n';
    }
    for (int t : ts) {
        double sum = 0.0;
        size_t count = 0;
        for (const SweepRow& r : result.rows) {
            if (r.t == t) {
                sum += r.similarity;
                ++count;
            }
        }
        double mean = count ? sum / static_cast<double>(count) : 0.0;
        result.mean_similarity_by_t[t] = mean;
        csv << "mean," << type << ",,," << t << ',' << fmt(mean) << ",\n";
    }
    result.csv = csv.str();
    return result;
}

TableResult run_table(const TableConfig& cfg) {
    if (cfg.ensembles.empty()) {
        throw BnError(BnErrc::infeasible_config, "table needs at least one ensemble");
    }
    TableResult result;
    int runs_per_ens = cfg.num_networks * cfg.ys_per_net;
    result.rows.resize(static_cast<size_t>(cfg.ensembles.size()) * runs_per_ens);
    SeededRng master(cfg.seed);

    for (size_t e = 0; e < cfg.ensembles.size(); ++e) {
        const EnsembleConfig& ens = cfg.ensembles[e];
        int t_max = cfg.t_max > 0 ? cfg.t_max : 2 * ens.depth;
        parallel_for(cfg.num_networks, cfg.threads, [&, e, t_max](int net_idx) {
            SeededRng rng = master.derive(e * 0x10000ull + static_cast<uint64_t>(net_idx));
            Network net = random_network(ens, rng);
            InferenceParams params;
            params.t_max = t_max;
            for (int y_idx = 0; y_idx < cfg.ys_per_net; ++y_idx) {
                Bits x = random_bits(net.num_inputs(), rng);
                Bits y = net.eval(x);
                auto start = std::chrono::steady_clock::now();
                MarginalSet m = run_inference(net, y, params);
                PreimageReport report = collect_preimages(net, y, m, cfg.n_samples, rng);
                TableRow& r = result.rows[e * runs_per_ens +
                                          static_cast<size_t>(net_idx) * cfg.ys_per_net + y_idx];
                r.ensemble = static_cast<int>(e);
                r.net = net_idx;
                r.y = y_idx;
                r.t_max = t_max;
                r.solved = report.solved;
                r.valid = report.valid_count;
                r.unique = report.unique_preimages.size();
                r.wall_ms = cfg.timing ? elapsed_ms(start) : 0.0;
            }
        });
    }

    std::ostringstream csv;
    csv << "record,type,net,y,t_max,solved,valid,unique,wall_ms\n";
    for (size_t e = 0; e < cfg.ensembles.size(); ++e) {
        std::string type = function_type_name(cfg.ensembles[e].function_type);
        TableAggregate agg;
        for (int i = 0; i < runs_per_ens; ++i) {
            const TableRow& r = result.rows[e * runs_per_ens + i];
            csv << "run," << type << ',' << r.net << ',' << r.y << ',' << r.t_max << ','
                << (r.solved ? 1 : 0) << ',' << r.valid << ',' << r.unique << ',';
            if (cfg.timing) csv << fmt(r.wall_ms);
            csv << '\n';
            agg.solved_fraction += r.solved ? 1.0 : 0.0;
            agg.mean_valid += static_cast<double>(r.valid);
            agg.mean_unique += static_cast<double>(r.unique);
        }
        agg.solved_fraction /= runs_per_ens;
        agg.mean_valid /= runs_per_ens;
        agg.mean_unique /= runs_per_ens;
        result.aggregates.push_back(agg);
        csv << "mean," << type << ",,," << result.rows[e * runs_per_ens].t_max << ','
            << fmt(agg.solved_fraction) << ',' << fmt(agg.mean_valid) << ','
            << fmt(agg.mean_unique) << ",\n";
    }
    result.csv = csv.str();
    return result;
}

ValidateResult run_validate(const ValidateConfig& cfg) {
    int num_nets = cfg.network ? 1 : cfg.num_networks;
    ValidateResult result;
    result.rows.resize(static_cast<size_t>(num_nets) * cfg.ys_per_net);
    SeededRng master(cfg.seed);

    parallel_for(num_nets, cfg.threads, [&](int net_idx) {
        SeededRng rng = master.derive(static_cast<uint64_t>(net_idx));
        Network net = cfg.network ? *cfg.network : random_network(cfg.ens, rng);
        int t_max = cfg.t_max > 0 ? cfg.t_max : (cfg.network ? 14 : 2 * cfg.ens.depth);
        InferenceParams params;
        params.t_max = t_max;
        double total_inputs = std::pow(2.0, net.num_inputs());
        for (int y_idx = 0; y_idx < cfg.ys_per_net; ++y_idx) {
            // even rows: satisfiable target from a random input; odd rows:
            // arbitrary target, possibly with an empty preimage set
            Bits y;
            if (y_idx % 2 == 0) {
                y = net.eval(random_bits(net.num_inputs(), rng));
            } else {
                y = random_bits(net.num_outputs(), rng);
            }
            ExactPreimageSet exact = enumerate_preimages(net, y);
            MarginalSet m = run_inference(net, y, params);
            PreimageReport report = collect_preimages(net, y, m, cfg.n_samples, rng);

            ValidateRow& r = result.rows[static_cast<size_t>(net_idx) * cfg.ys_per_net + y_idx];
            r.net = net_idx;
            r.y = y_idx;
            r.omega = exact.cardinality;
            r.guided_rate =
                static_cast<double>(report.valid_count) / static_cast<double>(cfg.n_samples);
            r.uniform_rate = static_cast<double>(exact.cardinality) / total_inputs;
            if (exact.cardinality > 0) {
                r.distance_defined = true;
                r.distance =
                    marginal_distance(exact_marginals(exact, net.num_inputs()), m, net);
            }
            for (const Bits& px : report.unique_preimages) {
                if (std::find(exact.members.begin(), exact.members.end(), px) ==
                    exact.members.end()) {
                    r.false_positive = true;
                }
            }
        }
    });

    std::ostringstream csv;
    csv << "net,y,omega,marginal_distance,guided_rate,uniform_rate,false_positive\n";
    for (const ValidateRow& r : result.rows) {
        csv << r.net << ',' << r.y << ',' << r.omega << ','
            << (r.distance_defined ? fmt(r.distance) : std::string("undefined")) << ','
            << fmt(r.guided_rate) << ',' << fmt(r.uniform_rate) << ','
            << (r.false_positive ? 1 : 0) << '\n';
    }
    result.csv = csv.str();
    return result;
}

}  // namespace bnpre
