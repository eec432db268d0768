#include "bnpre/netgen.hpp"

#include <algorithm>
#include <string>

namespace bnpre {

BooleanFunction random_function_type_a(int k, SeededRng& rng) {
    if (k < 1 || k > kMaxArity) {
        throw BnError(BnErrc::arity_out_of_range, "random function arity out of range");
    }
    uint32_t tbits = 1u << k;
    std::vector<uint64_t> words((tbits + 63) / 64);
    for (auto& w : words) w = rng.next_u64();
    if (tbits < 64) words[0] &= (uint64_t{1} << tbits) - 1;
    return BooleanFunction(k, std::move(words));
}

BooleanFunction random_function_type_b(int k, SeededRng& rng) {
    if (k < 1 || k > kMaxArity) {
        throw BnError(BnErrc::arity_out_of_range, "random function arity out of range");
    }
    uint32_t polarity = 0;  // bit i set: literal is x_i, else NOT x_i
    for (int i = 0; i < k; ++i) {
        if (rng.random_bit()) polarity |= 1u << i;
    }
    int num_terms = rng.uniform_int(1, k);
    std::vector<uint32_t> terms(num_terms);
    for (auto& term : terms) {
        do {
            term = static_cast<uint32_t>(rng.next_u64()) & ((1u << k) - 1);
        } while (term == 0);
    }
    uint32_t tbits = 1u << k;
    Bits bits(tbits, 0);
    for (uint32_t a = 0; a < tbits; ++a) {
        uint32_t lits = a ^ ~polarity;  // bit i set iff literal i is true under a
        for (uint32_t term : terms) {
            if ((lits & term) == term) {
                bits[a] = 1;
                break;
            }
        }
    }
    return BooleanFunction::from_bits(k, bits);
}

namespace {

std::vector<int> draw_distinct(int count, int bound, SeededRng& rng) {
    std::vector<int> picked;
    picked.reserve(count);
    while (static_cast<int>(picked.size()) < count) {
        int v = rng.uniform_int(0, bound - 1);
        if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
    }
    std::sort(picked.begin(), picked.end());
    return picked;
}

// duplicate the table along a new (insensitive) top variable
BooleanFunction widen_with_dead_input(const BooleanFunction& f) {
    uint32_t tbits = f.table_size();
    Bits bits(tbits * 2);
    for (uint32_t m = 0; m < tbits; ++m) {
        bits[m] = bits[m + tbits] = static_cast<uint8_t>(f.bit(m));
    }
    return BooleanFunction::from_bits(f.arity() + 1, bits);
}

}  // namespace

Network random_network(const EnsembleConfig& cfg, SeededRng& rng) {
    int interior = cfg.n_total - cfg.n_in - cfg.n_out;
    if (cfg.n_in < 1 || cfg.n_out < 1 || interior < 0 || cfg.depth < 1) {
        throw BnError(BnErrc::infeasible_config, "infeasible ensemble config");
    }
    if (cfg.k_max < 1 || cfg.k_max > kMaxArity || cfg.k_max > cfg.n_in) {
        throw BnError(BnErrc::infeasible_config,
                      "k_max must be in [1, min(K_MAX, N)], got " + std::to_string(cfg.k_max));
    }

    // layer 0 = inputs, layers 1..depth = interior, layer depth+1 = outputs
    int num_layers = cfg.depth + 2;
    std::vector<int> layer_start(num_layers + 1);
    layer_start[0] = 0;
    layer_start[1] = cfg.n_in;
    int base = cfg.depth > 0 ? interior / cfg.depth : 0;
    int rem = cfg.depth > 0 ? interior % cfg.depth : 0;
    for (int d = 0; d < cfg.depth; ++d) {
        layer_start[d + 2] = layer_start[d + 1] + base + (d < rem ? 1 : 0);
    }
    layer_start[num_layers] = cfg.n_total;

    std::vector<int> layer_of(cfg.n_total);
    for (int d = 0; d < num_layers; ++d) {
        for (int id = layer_start[d]; id < layer_start[d + 1]; ++id) layer_of[id] = d;
    }

    std::vector<Node> nodes(cfg.n_total);
    std::vector<int> in_ids, out_ids;
    for (int id = 0; id < cfg.n_in; ++id) in_ids.push_back(id);
    for (int id = layer_start[num_layers - 1]; id < cfg.n_total; ++id) out_ids.push_back(id);

    for (int id = cfg.n_in; id < cfg.n_total; ++id) {
        int pool = layer_start[layer_of[id]];  // all nodes in earlier layers
        int k = rng.uniform_int(1, std::min(cfg.k_max, pool));
        nodes[id].inputs = draw_distinct(k, pool, rng);
        nodes[id].function = cfg.function_type == FunctionType::A ? random_function_type_a(k, rng)
                                                                  : random_function_type_b(k, rng);
    }

    // every non-out node must feed something
    std::vector<int> fanout(cfg.n_total, 0);
    for (int id = cfg.n_in; id < cfg.n_total; ++id) {
        for (int src : nodes[id].inputs) ++fanout[src];
    }
    int out_layer = num_layers - 1;
    for (int j = 0; j < layer_start[out_layer]; ++j) {
        if (fanout[j] > 0) continue;
        // candidate slots in later layers whose current input can lose one consumer
        std::vector<std::pair<int, int>> slots;
        for (int l = layer_start[layer_of[j] + 1]; l < cfg.n_total; ++l) {
            if (layer_of[l] <= layer_of[j]) continue;
            for (size_t pos = 0; pos < nodes[l].inputs.size(); ++pos) {
                if (fanout[nodes[l].inputs[pos]] >= 2) slots.emplace_back(l, static_cast<int>(pos));
            }
        }
        if (!slots.empty()) {
            auto [l, pos] = slots[rng.uniform_u64(slots.size())];
            --fanout[nodes[l].inputs[pos]];
            nodes[l].inputs[pos] = j;
            ++fanout[j];
            continue;
        }
        // rare fallback: attach j as an extra (insensitive) input
        std::vector<int> targets;
        for (int l = layer_start[layer_of[j] + 1]; l < cfg.n_total; ++l) {
            if (nodes[l].function && nodes[l].function->arity() < kMaxArity) targets.push_back(l);
        }
        if (targets.empty()) {
            throw BnError(BnErrc::infeasible_config, "cannot rewire dangling node " + std::to_string(j));
        }
        int l = targets[rng.uniform_u64(targets.size())];
        nodes[l].function = widen_with_dead_input(*nodes[l].function);
        nodes[l].inputs.push_back(j);
        ++fanout[j];
    }

    return Network(std::move(nodes), std::move(in_ids), std::move(out_ids));
}

}  // namespace bnpre
