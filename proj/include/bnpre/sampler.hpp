#pragma once

#include <cstdint>
#include <set>

#include "bnpre/bn_core.hpp"
#include "bnpre/msgpass.hpp"
#include "bnpre/rng.hpp"

namespace bnpre {

struct PreimageReport {
    uint64_t samples_drawn = 0;
    uint64_t valid_count = 0;             // draws with f(x) = y, with multiplicity
    std::set<Bits> unique_preimages;      // lexicographic order, deterministic
    bool solved = false;                  // at least one valid preimage found
};

// One draw from the product of the estimated in-node marginals.
Bits sample_input(const MarginalSet& m, const Network& net, SeededRng& rng);

// Draw n_samples candidates, validate each by forward evaluation, and
// accumulate the valid/unique statistics. Deterministic given the rng seed.
PreimageReport collect_preimages(const Network& net, const Bits& y, const MarginalSet& m,
                                 uint64_t n_samples, SeededRng& rng);

}  // namespace bnpre
