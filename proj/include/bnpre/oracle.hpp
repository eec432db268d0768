#pragma once

#include "bnpre/bn_core.hpp"
#include "bnpre/msgpass.hpp"

namespace bnpre {

// Exhaustive ground truth, usable for N up to ~24 inputs.

struct ExactPreimageSet {
    Bits y;
    std::vector<Bits> members;  // ascending integer encoding (bit 0 = input 0)
    uint64_t cardinality = 0;
};

// Marginals of the uniform distribution over the preimage set.
// Undefined (empty vector) is never returned; an empty set is an error.
struct ExactMarginals {
    std::vector<double> p0;  // per in-node index: p(x_i = 0)
};

ExactPreimageSet enumerate_preimages(const Network& net, const Bits& y, int limit_n = 24);

ExactMarginals exact_marginals(const ExactPreimageSet& s, int num_inputs);

// mean over in-nodes of |p_i(0) - p_hat_i(0)|, in [0,1]
double marginal_distance(const ExactMarginals& exact, const MarginalSet& estimated,
                         const Network& net);

}  // namespace bnpre
