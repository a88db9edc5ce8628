#ifndef TSAR_RNG_HPP
#define TSAR_RNG_HPP

#include <cstdint>

namespace tsar {

/// Counter-based uniform stream: draw i of a seeded stream is a pure
/// function of (seed, i), so parallel generation is reproducible no matter
/// how draws are scheduled across threads.
///
/// The mixer is SplitMix64; stream separation uses the golden-ratio
/// increment, the same constant SplitMix64 itself advances by.
class IndexedRng {
public:
    explicit IndexedRng(std::uint64_t seed) : seed_(seed) {}

    /// 64 mixed bits for draw index i.
    std::uint64_t bits(std::uint64_t i) const {
        std::uint64_t z = seed_ + (i + 1) * 0x9E3779B97F4A7C15ull;
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    /// Uniform draw in the open interval (0, 1), 53-bit resolution.
    double uniform(std::uint64_t i) const {
        return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1p-53;
    }

    /// Derives an independent child seed (used for bootstrap replicates).
    std::uint64_t child_seed(std::uint64_t i) const { return bits(i); }

private:
    std::uint64_t seed_;
};

} // namespace tsar

#endif
