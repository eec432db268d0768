#include "bnpre/oracle.hpp"

#include <cmath>
#include <string>

namespace bnpre {

ExactPreimageSet enumerate_preimages(const Network& net, const Bits& y, int limit_n) {
    int n_in = net.num_inputs();
    if (n_in > limit_n) {
        throw BnError(BnErrc::oracle_limit,
                      "enumerate_preimages refused: 2^" + std::to_string(n_in) + " = " +
                          std::to_string(std::pow(2.0, n_in)) + " forward evaluations");
    }
    if (y.size() != static_cast<size_t>(net.num_outputs())) {
        throw BnError(BnErrc::length_mismatch, "target output length must be M");
    }
    ExactPreimageSet result;
    result.y = y;
    Bits x(n_in, 0);
    uint64_t total = uint64_t{1} << n_in;
    for (uint64_t m = 0; m < total; ++m) {
        for (int i = 0; i < n_in; ++i) x[i] = static_cast<uint8_t>((m >> i) & 1u);
        if (net.eval(x) == y) result.members.push_back(x);
    }
    result.cardinality = result.members.size();
    return result;
}

ExactMarginals exact_marginals(const ExactPreimageSet& s, int num_inputs) {
    if (s.cardinality == 0) {
        throw BnError(BnErrc::empty_distribution,
                      "marginals undefined: the preimage set is empty");
    }
    std::vector<uint64_t> zeros(num_inputs, 0);
    for (const Bits& x : s.members) {
        for (int i = 0; i < num_inputs; ++i) zeros[i] += x[i] == 0;
    }
    ExactMarginals em;
    em.p0.resize(num_inputs);
    for (int i = 0; i < num_inputs; ++i) {
        em.p0[i] = static_cast<double>(zeros[i]) / static_cast<double>(s.cardinality);
    }
    return em;
}

double marginal_distance(const ExactMarginals& exact, const MarginalSet& estimated,
                         const Network& net) {
    if (exact.p0.empty()) {
        throw BnError(BnErrc::empty_distribution, "marginal_distance: empty exact marginals");
    }
    if (exact.p0.size() != static_cast<size_t>(net.num_inputs())) {
        throw BnError(BnErrc::length_mismatch, "marginal_distance: in-node index sets differ");
    }
    double sum = 0.0;
    for (int i = 0; i < net.num_inputs(); ++i) {
        double est_p0 = llr_to_probs(estimated.llr[net.in_nodes()[i]]).first;
        sum += std::abs(exact.p0[i] - est_p0);
    }
    return sum / static_cast<double>(net.num_inputs());
}

}  // namespace bnpre
