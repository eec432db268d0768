#include "bnpre/msgpass.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace bnpre {

double clamp_llr(double value, double llr_clamp) {
    return std::clamp(value, -llr_clamp, llr_clamp);
}

std::pair<double, double> llr_to_probs(double llr) {
    double p0 = 1.0 / (1.0 + std::exp(-llr));
    double p1 = 1.0 / (1.0 + std::exp(llr));
    return {p0, p1};
}

double probs_to_llr(double p0, double p1, double llr_clamp) {
    if (p0 < 0 || p1 < 0 || (p0 == 0 && p1 == 0)) {
        throw BnError(BnErrc::empty_distribution, "probs_to_llr: undefined distribution");
    }
    if (p1 == 0) return llr_clamp;
    if (p0 == 0) return -llr_clamp;
    return clamp_llr(std::log(p0 / p1), llr_clamp);
}

namespace {

// p0/p1 indexed by full input position, entry at `pos` unused
double message_impl(const BooleanFunction& f, int pos, const double* p0, const double* p1,
                    double pj0, double pj1, double llr_clamp) {
    int k = f.arity();
    double mu0 = 0.0, mu1 = 0.0;
    uint32_t count = 1u << (k - 1);
    for (uint32_t a = 0; a < count; ++a) {
        uint32_t base = f.expand_mask(a, pos);
        double w = 1.0;
        for (int l = 0; l < k; ++l) {
            if (l == pos) continue;
            w *= (base >> l) & 1u ? p1[l] : p0[l];
        }
        int out0 = f.bit(base);
        int out1 = f.bit(base | (1u << pos));
        if (out0 == out1) {
            mu0 += 0.5 * w;
            mu1 += 0.5 * w;
        } else {
            mu0 += (out0 ? pj1 : pj0) * w;
            mu1 += (out1 ? pj1 : pj0) * w;
        }
    }
    return probs_to_llr(mu0, mu1, llr_clamp);
}

}  // namespace

double function_to_variable(const BooleanFunction& f, int pos, const std::vector<double>& incoming,
                            double lambda_j, double llr_clamp) {
    int k = f.arity();
    if (pos < 0 || pos >= k || incoming.size() + 1 != static_cast<size_t>(k)) {
        throw BnError(BnErrc::length_mismatch, "function_to_variable: arity mismatch");
    }
    std::vector<double> p0(k, 0.0), p1(k, 0.0);
    for (int l = 0, b = 0; l < k; ++l) {
        if (l == pos) continue;
        auto [q0, q1] = llr_to_probs(incoming[b++]);
        p0[l] = q0;
        p1[l] = q1;
    }
    auto [pj0, pj1] = llr_to_probs(lambda_j);
    return message_impl(f, pos, p0.data(), p1.data(), pj0, pj1, llr_clamp);
}

double output_distribution(const BooleanFunction& f, const std::vector<double>& incoming,
                           double llr_clamp) {
    int k = f.arity();
    if (incoming.size() != static_cast<size_t>(k)) {
        throw BnError(BnErrc::length_mismatch, "output_distribution: arity mismatch");
    }
    std::vector<double> p0(k), p1(k);
    for (int l = 0; l < k; ++l) {
        auto [q0, q1] = llr_to_probs(incoming[l]);
        p0[l] = q0;
        p1[l] = q1;
    }
    double mu[2] = {0.0, 0.0};
    for (uint32_t a = 0; a < (1u << k); ++a) {
        double w = 1.0;
        for (int l = 0; l < k; ++l) w *= (a >> l) & 1u ? p1[l] : p0[l];
        mu[f.bit(a)] += w;
    }
    return probs_to_llr(mu[0], mu[1], llr_clamp);
}

double variable_update(double prev, const std::vector<double>& incoming_msgs, double llr_clamp) {
    double s = prev;
    for (double m : incoming_msgs) s += m;
    return clamp_llr(s, llr_clamp);
}

InferenceEngine::InferenceEngine(const Network& net, const Bits& y, const InferenceParams& params)
    : net_(&net), params_(params) {
    if (y.size() != static_cast<size_t>(net.num_outputs())) {
        throw BnError(BnErrc::length_mismatch, "desired output length must be M");
    }
    int n = net.size();
    llr_.assign(n, 0.0);
    is_out_.assign(n, 0);
    for (size_t i = 0; i < y.size(); ++i) {
        int id = net.out_nodes()[i];
        is_out_[id] = 1;
        llr_[id] = y[i] ? -params_.llr_clamp : params_.llr_clamp;
    }
    msgs_.assign(n, {});
    from_.assign(n, {});
    for (int id = 0; id < n; ++id) {
        const Node& nd = net.node(id);
        if (nd.kind == NodeKind::input) continue;
        msgs_[id].assign(nd.inputs.size(), 0.0);
        for (size_t pos = 0; pos < nd.inputs.size(); ++pos) {
            from_[nd.inputs[pos]].emplace_back(id, static_cast<int>(pos));
        }
    }
    p0_scratch_.assign(kMaxArity, 0.0);
    p1_scratch_.assign(kMaxArity, 0.0);
}

void InferenceEngine::step() {
    const Network& net = *net_;
    int n = net.size();

    // phase 1: all function->variable messages from the t-1 marginals
    for (int j = 0; j < n; ++j) {
        const Node& nd = net.node(j);
        if (nd.kind == NodeKind::input) continue;
        int k = static_cast<int>(nd.inputs.size());
        for (int l = 0; l < k; ++l) {
            auto [q0, q1] = llr_to_probs(llr_[nd.inputs[l]]);
            p0_scratch_[l] = q0;
            p1_scratch_[l] = q1;
        }
        auto [pj0, pj1] = llr_to_probs(llr_[j]);
        for (int pos = 0; pos < k; ++pos) {
            msgs_[j][pos] = message_impl(*nd.function, pos, p0_scratch_.data(), p1_scratch_.data(),
                                         pj0, pj1, params_.llr_clamp);
        }
    }

    // phase 2: accumulate into every non-out node
    for (int j = 0; j < n; ++j) {
        if (is_out_[j]) continue;
        double s = llr_[j];
        for (auto [consumer, pos] : from_[j]) s += msgs_[consumer][pos];
        llr_[j] = clamp_llr(s, params_.llr_clamp);
        assert(std::isfinite(llr_[j]));
    }
    ++t_;
}

MarginalSet run_inference(const Network& net, const Bits& y, const InferenceParams& params) {
    if (params.t_max < 1 || params.llr_clamp <= 0) {
        throw BnError(BnErrc::infeasible_config, "bad inference params");
    }
    InferenceEngine engine(net, y, params);
    engine.run(params.t_max);
    return engine.marginals();
}

Bits hard_decision(const MarginalSet& m, const Network& net) {
    if (m.llr.size() != static_cast<size_t>(net.size())) {
        throw BnError(BnErrc::length_mismatch, "marginal set does not cover the network");
    }
    Bits x(net.num_inputs());
    for (int i = 0; i < net.num_inputs(); ++i) {
        x[i] = m.llr[net.in_nodes()[i]] < 0 ? 1 : 0;
    }
    return x;
}

double similarity(const Bits& y, const Bits& y_hat) {
    if (y.size() != y_hat.size()) {
        throw BnError(BnErrc::length_mismatch, "similarity: length mismatch");
    }
    if (y.empty()) return 1.0;
    size_t eq = 0;
    for (size_t i = 0; i < y.size(); ++i) eq += y[i] == y_hat[i];
    return static_cast<double>(eq) / static_cast<double>(y.size());
}

}  // namespace bnpre
