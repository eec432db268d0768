#pragma once

#include "bnpre/bn_core.hpp"
#include "bnpre/rng.hpp"

namespace bnpre {

enum class FunctionType { A, B };  // A: arbitrary truth tables, B: unate only

struct EnsembleConfig {
    int n_total = 240;
    int n_in = 20;
    int n_out = 120;
    int depth = 7;  // interior layer count between in and out
    int k_max = 5;
    FunctionType function_type = FunctionType::A;

    static EnsembleConfig desk() { return {}; }
    static EnsembleConfig paper() {
        EnsembleConfig c;
        c.n_total = 2400;
        c.n_in = 200;
        c.n_out = 1200;
        c.depth = 7;
        c.k_max = 15;
        return c;
    }
};

// Truth table uniform over all 2^(2^k) functions.
BooleanFunction random_function_type_a(int k, SeededRng& rng);

// Unate by construction: fixed per-variable polarities, OR of 1..k random
// nonempty AND-terms over the polarity-adjusted literals. Not uniform over
// all unate functions.
BooleanFunction random_function_type_b(int k, SeededRng& rng);

// Layered feed-forward DAG: N in-nodes, `depth` interior layers, M out-nodes.
// Each non-input node draws in-degree uniform in [1, k_max] and its distinct
// inputs uniformly from all earlier layers. Dangling interior nodes are
// rewired so every non-out node has at least one consumer.
Network random_network(const EnsembleConfig& cfg, SeededRng& rng);

}  // namespace bnpre
