#ifndef IRFLOW_LIFETIME_HPP
#define IRFLOW_LIFETIME_HPP

#include <vector>

#include "irflow/rng.hpp"
#include "irflow/scenario.hpp"

namespace irflow {

/// Discrete integer-year lifetime distribution shared by both fleet engines.
/// Probabilities are the truncated-normal density integrated over
/// [k-0.5, k+0.5] ∩ [lower, upper] and renormalized; they sum to 1 ± 1e-12.
class DiscretePmf {
public:
    explicit DiscretePmf(const LifetimeDistribution& dist);

    int lower() const { return lower_; }
    int upper() const { return lower_ + static_cast<int>(p_.size()) - 1; }
    /// P(lifetime == k); zero outside [lower, upper].
    double at(int k) const;
    const std::vector<double>& probabilities() const { return p_; }
    double mean() const;

    /// Inverse-CDF draw on the discrete PMF; always lands in [lower, upper].
    int sample(SplitMix64& rng) const;

private:
    int lower_;
    std::vector<double> p_;
    std::vector<double> cdf_;
};

}  // namespace irflow

#endif
