#include "irflow/lifetime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace irflow {

namespace {

double normal_cdf(double x) {
    return 0.5 * (1.0 + std::erf(x / std::sqrt(2.0)));
}

}  // namespace

DiscretePmf::DiscretePmf(const LifetimeDistribution& dist) {
    dist.validate();
    if (dist.sigma == 0.0) {
        lower_ = static_cast<int>(std::lround(dist.mean));
        p_ = {1.0};
        cdf_ = {1.0};
        return;
    }
    lower_ = dist.lower;
    double total = 0.0;
    for (int k = dist.lower; k <= dist.upper; ++k) {
        const double a = std::max(k - 0.5, static_cast<double>(dist.lower));
        const double b = std::min(k + 0.5, static_cast<double>(dist.upper));
        double mass = 0.0;
        if (b > a) {
            mass = normal_cdf((b - dist.mean) / dist.sigma) -
                   normal_cdf((a - dist.mean) / dist.sigma);
        }
        p_.push_back(mass);
        total += mass;
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("lifetime PMF has zero total mass");
    }
    cdf_.reserve(p_.size());
    double run = 0.0;
    for (double& v : p_) {
        v /= total;
        run += v;
        cdf_.push_back(run);
    }
    cdf_.back() = 1.0;
}

double DiscretePmf::at(int k) const {
    if (k < lower() || k > upper()) return 0.0;
    return p_[static_cast<std::size_t>(k - lower_)];
}

double DiscretePmf::mean() const {
    double m = 0.0;
    for (std::size_t i = 0; i < p_.size(); ++i) {
        m += (lower_ + static_cast<int>(i)) * p_[i];
    }
    return m;
}

int DiscretePmf::sample(SplitMix64& rng) const {
    const double u = rng.next_double();
    const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
    const auto idx = static_cast<std::size_t>(std::min<std::ptrdiff_t>(
        it - cdf_.begin(), static_cast<std::ptrdiff_t>(cdf_.size()) - 1));
    return lower_ + static_cast<int>(idx);
}

}  // namespace irflow
