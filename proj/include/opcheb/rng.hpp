#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace opcheb {

// Seeded generator for every randomized routine in the library.
//
// The engine is std::mt19937_64 (its output stream is pinned by the standard,
// so it is identical across platforms and standard libraries). Doubles are
// derived with an explicit 53-bit mapping instead of std::uniform_real_distribution,
// whose output is implementation-defined. Campaigns keyed by the same seed
// therefore draw the same values everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // real and imaginary parts uniform in [-1, 1]
    std::complex<double> complex_in_box()
    {
        const double re = uniform(-1.0, 1.0);
        const double im = uniform(-1.0, 1.0);
        return {re, im};
    }

    // integer in [0, n), n > 0
    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

private:
    std::mt19937_64 engine_;
};

// splitmix64 finalizer; derives independent substream seeds from (stream, salt)
// pairs so that campaign cells are decoupled yet fully reproducible.
inline std::uint64_t mix_seed(std::uint64_t stream, std::uint64_t salt)
{
    std::uint64_t z = stream + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace opcheb
