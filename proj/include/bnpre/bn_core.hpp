#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bnpre {

// Hard limit on function arity; message cost is Theta(2^k).
inline constexpr int kMaxArity = 15;

// A bit vector; each entry is 0 or 1. Used for input vectors (length N),
// output vectors (length M) and full node-state vectors (length n).
using Bits = std::vector<uint8_t>;

enum class BnErrc {
    arity_out_of_range,
    table_length_mismatch,
    length_mismatch,
    duplicate_node,
    bad_topological_order,
    dangling_reference,
    bad_format,
    bad_out_node,
    arity_limit,
    empty_distribution,
    oracle_limit,
    infeasible_config,
};

class BnError : public std::runtime_error {
public:
    BnError(BnErrc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    BnErrc code() const { return code_; }

private:
    BnErrc code_;
};

// Boolean function of arity k given by its full truth table. Bit m of the
// table is the output for the assignment whose i-th variable is bit i of m
// (variable 0 = LSB). Packed into 64-bit words, word 0 holding bits 0..63.
class BooleanFunction {
public:
    BooleanFunction(int arity, std::vector<uint64_t> table_words);

    static BooleanFunction from_bits(int arity, const Bits& table_bits);

    // named small functions, used all over the tests
    static BooleanFunction and2() { return from_bits(2, {0, 0, 0, 1}); }
    static BooleanFunction or2() { return from_bits(2, {0, 1, 1, 1}); }
    static BooleanFunction xor2() { return from_bits(2, {0, 1, 1, 0}); }
    static BooleanFunction not1() { return from_bits(1, {1, 0}); }
    static BooleanFunction wire1() { return from_bits(1, {0, 1}); }
    static BooleanFunction constant(int k, int value);

    int arity() const { return arity_; }
    uint32_t table_size() const { return 1u << arity_; }
    const std::vector<uint64_t>& words() const { return words_; }

    int bit(uint32_t assignment_mask) const {
        return static_cast<int>((words_[assignment_mask >> 6] >> (assignment_mask & 63u)) & 1u);
    }

    int eval(const Bits& assignment) const;

    // true iff the output does not depend on variable `pos` under the given
    // co-assignment of the other k-1 variables (bit b of others_mask is the
    // b-th variable != pos, in ascending variable order).
    bool insensitive_at_mask(uint32_t others_mask, int pos) const;

    // inserts x_pos = 0 into a (k-1)-bit co-assignment mask
    uint32_t expand_mask(uint32_t others_mask, int pos) const {
        uint32_t low = others_mask & ((1u << pos) - 1u);
        uint32_t high = (others_mask >> pos) << (pos + 1);
        return low | high;
    }

    bool operator==(const BooleanFunction& other) const = default;

private:
    int arity_;
    std::vector<uint64_t> words_;
};

int eval_function(const BooleanFunction& f, const Bits& assignment);

bool is_insensitive(const BooleanFunction& f, const Bits& others, int pos);

// true iff f is monotone in every variable under some per-variable polarity;
// exhaustive check, cost k * 2^(k-1)
bool is_unate(const BooleanFunction& f, int arity_limit = kMaxArity);

enum class NodeKind { input, interior, output };

struct Node {
    NodeKind kind = NodeKind::input;
    std::optional<BooleanFunction> function;  // absent iff kind == input
    std::vector<int> inputs;                  // node ids, |inputs| == function arity

    bool operator==(const Node& other) const = default;
};

// Feed-forward Boolean network. Node ids are indices into nodes() and must be
// topologically ordered: every input id of a node is strictly smaller than
// the node's own id. Immutable after construction.
class Network {
public:
    Network(std::vector<Node> nodes, std::vector<int> in_nodes, std::vector<int> out_nodes);

    int size() const { return static_cast<int>(nodes_.size()); }
    int num_inputs() const { return static_cast<int>(in_nodes_.size()); }
    int num_outputs() const { return static_cast<int>(out_nodes_.size()); }

    const Node& node(int id) const { return nodes_[id]; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<int>& in_nodes() const { return in_nodes_; }
    const std::vector<int>& out_nodes() const { return out_nodes_; }

    // S_j: ids of function nodes consuming node j
    const std::vector<std::vector<int>>& fanout() const { return fanout_; }

    Bits eval(const Bits& x) const;         // input vector -> output vector
    Bits eval_states(const Bits& x) const;  // input vector -> all node states

    bool operator==(const Network& other) const;

private:
    std::vector<Node> nodes_;
    std::vector<int> in_nodes_;
    std::vector<int> out_nodes_;
    std::vector<std::vector<int>> fanout_;
};

Bits eval_network(const Network& net, const Bits& x);

// "bn v1" text format, see README
Network parse_network(std::string_view text);
std::string serialize_network(const Network& net);

}  // namespace bnpre
