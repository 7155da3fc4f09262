#pragma once

#include <cstdint>
#include <random>

namespace rwprune {

// Deterministic source of randomness for every generator in the project.
//
// Backed by std::mt19937_64, whose output sequence is fixed by the standard.
// The standard distributions are not (their algorithms are implementation
// defined), so uniform reals and bounded integers are derived here directly
// from raw engine output. Same seed, same stream, on every toolchain.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform();

    // Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
};

} // namespace rwprune
