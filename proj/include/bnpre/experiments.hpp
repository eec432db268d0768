#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bnpre/netgen.hpp"
#include "bnpre/oracle.hpp"
#include "bnpre/sampler.hpp"

namespace bnpre {

// Experiment drivers behind the CLI subcommands. All results are functions of
// (config, seed): rows are emitted in (network, y, t) order regardless of the
// thread count, and timing columns stay empty unless explicitly enabled so
// that CSV output is reproducible byte for byte.

struct SweepConfig {
    EnsembleConfig ens;
    std::vector<int> t_list;  // iteration checkpoints, each >= 1
    int num_networks = 100;
    int ys_per_net = 100;
    uint64_t seed = 1;
    int threads = 1;
    bool timing = false;
};

struct SweepRow {
    int net = 0;
    int y = 0;
    int t = 0;
    double similarity = 0.0;
    double wall_ms = 0.0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::map<int, double> mean_similarity_by_t;
    std::string csv;
};

SweepResult run_sweep(const SweepConfig& cfg);

struct TableConfig {
    std::vector<EnsembleConfig> ensembles;
    int num_networks = 100;
    int ys_per_net = 5;
    uint64_t n_samples = 1000;
    int t_max = 0;  // 0: use 2 * depth
    uint64_t seed = 1;
    int threads = 1;
    bool timing = false;
};

struct TableRow {
    int ensemble = 0;
    int net = 0;
    int y = 0;
    int t_max = 0;
    bool solved = false;
    uint64_t valid = 0;
    uint64_t unique = 0;
    double wall_ms = 0.0;
};

struct TableAggregate {
    double solved_fraction = 0.0;
    double mean_valid = 0.0;
    double mean_unique = 0.0;
};

struct TableResult {
    std::vector<TableRow> rows;
    std::vector<TableAggregate> aggregates;  // one per ensemble
    std::string csv;
};

TableResult run_table(const TableConfig& cfg);

struct ValidateConfig {
    std::optional<Network> network;  // when absent, generate `num_networks` from `ens`
    EnsembleConfig ens = small_oracle_ensemble();
    int num_networks = 10;
    int ys_per_net = 4;
    uint64_t n_samples = 1000;
    int t_max = 0;  // 0: use 2 * depth (file networks fall back to 14)
    uint64_t seed = 1;
    int threads = 1;

    static EnsembleConfig small_oracle_ensemble() {
        EnsembleConfig e;
        e.n_total = 40;
        e.n_in = 8;
        e.n_out = 16;
        e.depth = 3;
        e.k_max = 3;
        return e;
    }
};

struct ValidateRow {
    int net = 0;
    int y = 0;
    uint64_t omega = 0;               // |preimage set|
    bool distance_defined = false;
    double distance = 0.0;
    double guided_rate = 0.0;
    double uniform_rate = 0.0;
    bool false_positive = false;      // any sampler-unique preimage outside the oracle set
};

struct ValidateResult {
    std::vector<ValidateRow> rows;
    std::string csv;
};

ValidateResult run_validate(const ValidateConfig& cfg);

// Deterministic helper: run fn(0..count-1) on `threads` workers.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

std::string function_type_name(FunctionType t);

}  // namespace bnpre
