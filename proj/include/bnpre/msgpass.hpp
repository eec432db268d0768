#pragma once

#include <utility>
#include <vector>

#include "bnpre/bn_core.hpp"

namespace bnpre {

struct InferenceParams {
    int t_max = 14;
    double llr_clamp = 50.0;
};

// Per-node LLR state L_j after `iterations` update rounds.
// Sign convention: L = ln(p(x=0)/p(x=1)), so L > 0 favors x = 0.
struct MarginalSet {
    std::vector<double> llr;  // length n, indexed by node id
    int iterations = 0;
};

double clamp_llr(double value, double llr_clamp);

// L -> (p(x=0), p(x=1))
std::pair<double, double> llr_to_probs(double llr);

// Unnormalized masses accepted; a zero mass clamps to +/- llr_clamp,
// both masses zero is an error.
double probs_to_llr(double p0, double p1, double llr_clamp);

// Message from function node j to input variable at position `pos`.
// `incoming` holds the LLRs of the other inputs (arity-1 entries, in input
// order with `pos` skipped); `lambda_j` is the LLR of the output node j.
// Sums over all 2^(k-1) co-assignments: an insensitive branch contributes
// weight 1/2 to both values of x_i, a sensitive branch contributes the
// output distribution evaluated at the forced output value.
double function_to_variable(const BooleanFunction& f, int pos, const std::vector<double>& incoming,
                            double lambda_j, double llr_clamp = 50.0);

// Forward distribution of the function output under independent inputs.
// Exposed for forward analysis; not part of the iteration schedule.
double output_distribution(const BooleanFunction& f, const std::vector<double>& incoming,
                           double llr_clamp = 50.0);

// L_j^(t) = clamp(L_j^(t-1) + sum of incoming function messages)
double variable_update(double prev, const std::vector<double>& incoming_msgs, double llr_clamp = 50.0);

// Stepwise driver for the iteration: out-node LLRs are clamped to encode y
// and never updated; each step runs one flooding round (all messages from
// the t-1 state, then all variable updates).
class InferenceEngine {
public:
    InferenceEngine(const Network& net, const Bits& y, const InferenceParams& params);

    void step();
    void run(int t_max) {
        while (t_ < t_max) step();
    }

    int iteration() const { return t_; }
    const std::vector<double>& llrs() const { return llr_; }
    MarginalSet marginals() const { return {llr_, t_}; }

private:
    const Network* net_;
    InferenceParams params_;
    int t_ = 0;
    std::vector<double> llr_;
    std::vector<uint8_t> is_out_;
    std::vector<std::vector<double>> msgs_;               // msgs_[j][pos], j non-input
    std::vector<std::vector<std::pair<int, int>>> from_;  // node -> (consumer id, pos)
    std::vector<double> p0_scratch_, p1_scratch_;
};

MarginalSet run_inference(const Network& net, const Bits& y, const InferenceParams& params);

// Threshold in-node marginals: L > 0 -> 0, L < 0 -> 1, ties break to 0.
Bits hard_decision(const MarginalSet& m, const Network& net);

// fraction of equal entries
double similarity(const Bits& y, const Bits& y_hat);

}  // namespace bnpre
