#include "bnpre/sampler.hpp"

namespace bnpre {

Bits sample_input(const MarginalSet& m, const Network& net, SeededRng& rng) {
    if (m.llr.size() != static_cast<size_t>(net.size())) {
        throw BnError(BnErrc::length_mismatch, "marginal set does not cover the network");
    }
    Bits x(net.num_inputs());
    for (int i = 0; i < net.num_inputs(); ++i) {
        double p0 = llr_to_probs(m.llr[net.in_nodes()[i]]).first;
        x[i] = rng.uniform_double() < p0 ? 0 : 1;
    }
    return x;
}

PreimageReport collect_preimages(const Network& net, const Bits& y, const MarginalSet& m,
                                 uint64_t n_samples, SeededRng& rng) {
    if (n_samples < 1) {
        throw BnError(BnErrc::infeasible_config, "collect_preimages needs n_samples >= 1");
    }
    PreimageReport report;
    report.samples_drawn = n_samples;
    for (uint64_t s = 0; s < n_samples; ++s) {
        Bits x = sample_input(m, net, rng);
        if (net.eval(x) == y) {
            ++report.valid_count;
            report.unique_preimages.insert(std::move(x));
        }
    }
    report.solved = !report.unique_preimages.empty();
    return report;
}

}  // namespace bnpre
