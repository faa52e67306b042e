#ifndef IRFLOW_RNG_HPP
#define IRFLOW_RNG_HPP

#include <cstdint>
#include <string>

namespace irflow {

/// Deterministic 64-bit generator (splitmix64). Small state, trivially
/// seedable and splittable, and fully reproducible across platforms — the
/// algorithm name is recorded in run metadata so reruns can be audited.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Independent child stream; used to decorrelate per-year unit batches.
    SplitMix64 split() { return SplitMix64(next_u64()); }

    static std::string algorithm_name() { return "splitmix64"; }

private:
    std::uint64_t state_;
};

}  // namespace irflow

#endif
