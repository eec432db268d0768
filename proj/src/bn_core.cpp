#include "bnpre/bn_core.hpp"

#include <algorithm>
#include <sstream>

namespace bnpre {

namespace {

[[noreturn]] void fail(BnErrc code, const std::string& msg) { throw BnError(code, msg); }

uint32_t assignment_index(const Bits& assignment) {
    uint32_t m = 0;
    for (size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i]) m |= 1u << i;
    }
    return m;
}

}  // namespace

BooleanFunction::BooleanFunction(int arity, std::vector<uint64_t> table_words)
    : arity_(arity), words_(std::move(table_words)) {
    if (arity < 1 || arity > kMaxArity) {
        fail(BnErrc::arity_out_of_range, "function arity " + std::to_string(arity) +
                                             " outside [1, " + std::to_string(kMaxArity) + "]");
    }
    size_t want = (table_size() + 63u) / 64u;
    if (words_.size() != want) {
        fail(BnErrc::table_length_mismatch, "truth table word count does not match arity");
    }
    // unused high bits must be zero so that equality is structural
    if (table_size() < 64) {
        uint64_t mask = (uint64_t{1} << table_size()) - 1;
        if (words_[0] & ~mask) {
            fail(BnErrc::table_length_mismatch, "truth table has bits beyond 2^k");
        }
    }
}

BooleanFunction BooleanFunction::from_bits(int arity, const Bits& table_bits) {
    if (arity >= 1 && arity <= kMaxArity && table_bits.size() != (size_t{1} << arity)) {
        fail(BnErrc::table_length_mismatch,
             "truth table length " + std::to_string(table_bits.size()) + " for arity " +
                 std::to_string(arity));
    }
    std::vector<uint64_t> words((table_bits.size() + 63) / 64, 0);
    for (size_t m = 0; m < table_bits.size(); ++m) {
        if (table_bits[m]) words[m >> 6] |= uint64_t{1} << (m & 63);
    }
    return BooleanFunction(arity, std::move(words));
}

BooleanFunction BooleanFunction::constant(int k, int value) {
    Bits bits(size_t{1} << k, static_cast<uint8_t>(value ? 1 : 0));
    return from_bits(k, bits);
}

int BooleanFunction::eval(const Bits& assignment) const {
    if (assignment.size() != static_cast<size_t>(arity_)) {
        fail(BnErrc::length_mismatch, "assignment length does not match arity");
    }
    return bit(assignment_index(assignment));
}

bool BooleanFunction::insensitive_at_mask(uint32_t others_mask, int pos) const {
    uint32_t base = expand_mask(others_mask, pos);
    return bit(base) == bit(base | (1u << pos));
}

int eval_function(const BooleanFunction& f, const Bits& assignment) { return f.eval(assignment); }

bool is_insensitive(const BooleanFunction& f, const Bits& others, int pos) {
    if (pos < 0 || pos >= f.arity()) {
        fail(BnErrc::length_mismatch, "variable position out of range");
    }
    if (others.size() + 1 != static_cast<size_t>(f.arity())) {
        fail(BnErrc::length_mismatch, "co-assignment length must be arity - 1");
    }
    return f.insensitive_at_mask(assignment_index(others), pos);
}

bool is_unate(const BooleanFunction& f, int arity_limit) {
    int k = f.arity();
    if (k > arity_limit) {
        fail(BnErrc::arity_limit,
             "is_unate refused at arity " + std::to_string(k) + " (cost 2^k * k)");
    }
    for (int i = 0; i < k; ++i) {
        bool ok_pos = true;  // f non-decreasing in x_i
        bool ok_neg = true;  // f non-increasing in x_i
        for (uint32_t a = 0; a < (1u << (k - 1)); ++a) {
            uint32_t lo = f.expand_mask(a, i);
            int f0 = f.bit(lo);
            int f1 = f.bit(lo | (1u << i));
            if (f0 > f1) ok_pos = false;
            if (f1 > f0) ok_neg = false;
            if (!ok_pos && !ok_neg) break;
        }
        if (!ok_pos && !ok_neg) return false;
    }
    return true;
}

Network::Network(std::vector<Node> nodes, std::vector<int> in_nodes, std::vector<int> out_nodes)
    : nodes_(std::move(nodes)), in_nodes_(std::move(in_nodes)), out_nodes_(std::move(out_nodes)) {
    int n = size();
    std::vector<uint8_t> is_in(n, 0), is_out(n, 0);
    for (int id : in_nodes_) {
        if (id < 0 || id >= n) fail(BnErrc::dangling_reference, "in-node id out of range");
        if (is_in[id]) fail(BnErrc::duplicate_node, "duplicate in-node id " + std::to_string(id));
        is_in[id] = 1;
    }
    for (int id : out_nodes_) {
        if (id < 0 || id >= n) fail(BnErrc::dangling_reference, "out-node id out of range");
        if (is_out[id]) fail(BnErrc::duplicate_node, "duplicate out-node id " + std::to_string(id));
        if (is_in[id]) fail(BnErrc::bad_out_node, "node " + std::to_string(id) + " cannot be both in and out");
        is_out[id] = 1;
    }
    fanout_.assign(n, {});
    for (int id = 0; id < n; ++id) {
        Node& nd = nodes_[id];
        if (is_in[id]) {
            if (nd.function || !nd.inputs.empty()) {
                fail(BnErrc::bad_format, "in-node " + std::to_string(id) + " must have no function");
            }
            nd.kind = NodeKind::input;
            continue;
        }
        if (!nd.function) {
            fail(BnErrc::bad_format, "non-input node " + std::to_string(id) + " lacks a function");
        }
        if (nd.inputs.size() != static_cast<size_t>(nd.function->arity())) {
            fail(BnErrc::table_length_mismatch,
                 "node " + std::to_string(id) + ": arity does not match input count");
        }
        std::vector<uint8_t> seen;
        for (int src : nd.inputs) {
            if (src < 0 || src >= n) {
                fail(BnErrc::dangling_reference,
                     "node " + std::to_string(id) + " references undefined node " + std::to_string(src));
            }
            if (src >= id) {
                fail(BnErrc::bad_topological_order,
                     "node " + std::to_string(id) + " references node " + std::to_string(src) +
                         " not strictly earlier (cycle or order violation)");
            }
            if (std::count(nd.inputs.begin(), nd.inputs.end(), src) > 1) {
                fail(BnErrc::bad_format,
                     "node " + std::to_string(id) + " lists input " + std::to_string(src) + " twice");
            }
            fanout_[src].push_back(id);
        }
        nd.kind = is_out[id] ? NodeKind::output : NodeKind::interior;
    }
    // dedup fanout contributions recorded once per consumer above; keep sorted
    for (auto& s : fanout_) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    for (int id : out_nodes_) {
        if (!fanout_[id].empty()) {
            fail(BnErrc::bad_out_node, "out-node " + std::to_string(id) + " has consumers");
        }
    }
}

Bits Network::eval_states(const Bits& x) const {
    if (x.size() != static_cast<size_t>(num_inputs())) {
        fail(BnErrc::length_mismatch, "input vector length must be N");
    }
    Bits state(nodes_.size(), 0);
    for (size_t i = 0; i < in_nodes_.size(); ++i) state[in_nodes_[i]] = x[i];
    Bits scratch;
    for (int id = 0; id < size(); ++id) {
        const Node& nd = nodes_[id];
        if (nd.kind == NodeKind::input) continue;
        uint32_t m = 0;
        for (size_t b = 0; b < nd.inputs.size(); ++b) {
            if (state[nd.inputs[b]]) m |= 1u << b;
        }
        state[id] = static_cast<uint8_t>(nd.function->bit(m));
    }
    return state;
}

Bits Network::eval(const Bits& x) const {
    Bits state = eval_states(x);
    Bits y(out_nodes_.size());
    for (size_t i = 0; i < out_nodes_.size(); ++i) y[i] = state[out_nodes_[i]];
    return y;
}

bool Network::operator==(const Network& other) const {
    return nodes_ == other.nodes_ && in_nodes_ == other.in_nodes_ && out_nodes_ == other.out_nodes_;
}

Bits eval_network(const Network& net, const Bits& x) { return net.eval(x); }

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

char hex_digit(int v) { return v < 10 ? static_cast<char>('0' + v) : static_cast<char>('a' + v - 10); }

}  // namespace

Network parse_network(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;

    auto next_line = [&](std::string& out) {
        while (std::getline(in, line)) {
            auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            // trim
            size_t a = line.find_first_not_of(" \t\r");
            if (a == std::string::npos) continue;
            size_t b = line.find_last_not_of(" \t\r");
            out = line.substr(a, b - a + 1);
            return true;
        }
        return false;
    };

    std::string l;
    if (!next_line(l) || l != "bn v1") fail(BnErrc::bad_format, "missing 'bn v1' header");

    int n = 0, num_in = 0, num_out = 0;
    {
        if (!next_line(l)) fail(BnErrc::bad_format, "missing 'nodes' line");
        std::istringstream ls(l);
        std::string w1, w2, w3;
        ls >> w1 >> n >> w2 >> num_in >> w3 >> num_out;
        if (ls.fail() || w1 != "nodes" || w2 != "in" || w3 != "out" || n < 1 || num_in < 0 || num_out < 0) {
            fail(BnErrc::bad_format, "malformed 'nodes' line: " + l);
        }
    }

    std::vector<Node> nodes(n);
    std::vector<uint8_t> defined(n, 0);
    std::vector<int> in_ids;
    std::vector<int> out_ids;

    for (int count = 0; count < n; ++count) {
        if (!next_line(l)) fail(BnErrc::bad_format, "unexpected end of file in node list");
        std::istringstream ls(l);
        std::string kw;
        int id = -1;
        ls >> kw >> id;
        if (ls.fail() || kw != "node") fail(BnErrc::bad_format, "expected node line, got: " + l);
        if (id < 0 || id >= n) fail(BnErrc::dangling_reference, "node id " + std::to_string(id) + " out of range");
        if (defined[id]) fail(BnErrc::duplicate_node, "duplicate node id " + std::to_string(id));
        if (id != count) {
            fail(BnErrc::bad_topological_order,
                 "node ids must appear in ascending order; expected " + std::to_string(count) +
                     ", got " + std::to_string(id));
        }
        defined[id] = 1;

        std::string tag;
        ls >> tag;
        if (tag == "in") {
            in_ids.push_back(id);
            continue;
        }
        if (tag != "fn") fail(BnErrc::bad_format, "expected 'in' or 'fn' in: " + l);

        std::string hex, argskw;
        ls >> hex >> argskw;
        if (ls.fail() || argskw != "args") fail(BnErrc::bad_format, "malformed fn line: " + l);
        std::vector<int> args;
        int a;
        while (ls >> a) args.push_back(a);
        int k = static_cast<int>(args.size());
        if (k < 1 || k > kMaxArity) {
            fail(BnErrc::arity_out_of_range, "node " + std::to_string(id) + ": bad arity " + std::to_string(k));
        }
        uint32_t tbits = 1u << k;
        size_t want_digits = (tbits + 3) / 4;
        if (hex.size() != want_digits) {
            fail(BnErrc::table_length_mismatch,
                 "node " + std::to_string(id) + ": truth table has " + std::to_string(hex.size()) +
                     " hex digits, expected " + std::to_string(want_digits));
        }
        Bits bits(tbits, 0);
        for (size_t d = 0; d < hex.size(); ++d) {
            int v = hex_value(hex[hex.size() - 1 - d]);  // big-endian text
            if (v < 0) fail(BnErrc::bad_format, "bad hex digit in truth table of node " + std::to_string(id));
            for (int b = 0; b < 4; ++b) {
                uint32_t m = static_cast<uint32_t>(4 * d + b);
                int bv = (v >> b) & 1;
                if (m < tbits) {
                    bits[m] = static_cast<uint8_t>(bv);
                } else if (bv) {
                    fail(BnErrc::table_length_mismatch,
                         "node " + std::to_string(id) + ": truth table bits beyond 2^k");
                }
            }
        }
        nodes[id].function = BooleanFunction::from_bits(k, bits);
        nodes[id].inputs = std::move(args);
    }

    {
        if (!next_line(l)) fail(BnErrc::bad_format, "missing 'out' line");
        std::istringstream ls(l);
        std::string kw;
        ls >> kw;
        if (kw != "out") fail(BnErrc::bad_format, "expected 'out' line, got: " + l);
        int id;
        while (ls >> id) out_ids.push_back(id);
    }
    if (static_cast<int>(in_ids.size()) != num_in) {
        fail(BnErrc::bad_format, "declared " + std::to_string(num_in) + " in-nodes, found " +
                                     std::to_string(in_ids.size()));
    }
    if (static_cast<int>(out_ids.size()) != num_out) {
        fail(BnErrc::bad_format, "declared " + std::to_string(num_out) + " out-nodes, found " +
                                     std::to_string(out_ids.size()));
    }
    if (next_line(l)) fail(BnErrc::bad_format, "trailing content after 'out' line: " + l);

    return Network(std::move(nodes), std::move(in_ids), std::move(out_ids));
}

std::string serialize_network(const Network& net) {
    std::ostringstream out;
    out << "bn v1\n";
    out << "nodes " << net.size() << " in " << net.num_inputs() << " out " << net.num_outputs()
        << "\n";
    for (int id = 0; id < net.size(); ++id) {
        const Node& nd = net.node(id);
        if (nd.kind == NodeKind::input) {
            out << "node " << id << " in\n";
            continue;
        }
        const BooleanFunction& f = *nd.function;
        uint32_t tbits = f.table_size();
        size_t digits = (tbits + 3) / 4;
        std::string hex(digits, '0');
        for (size_t d = 0; d < digits; ++d) {
            int v = 0;
            for (int b = 0; b < 4; ++b) {
                uint32_t m = static_cast<uint32_t>(4 * d + b);
                if (m < tbits && f.bit(m)) v |= 1 << b;
            }
            hex[digits - 1 - d] = hex_digit(v);
        }
        out << "node " << id << " fn " << hex << " args";
        for (int src : nd.inputs) out << ' ' << src;
        out << "\n";
    }
    out << "out";
    for (int id : net.out_nodes()) out << ' ' << id;
    out << "\n";
    return out.str();
}

}  // namespace bnpre
