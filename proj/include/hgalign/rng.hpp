#pragma once

#include "hgalign/types.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hgalign {

// mt19937_64 with hand-rolled distributions. The standard distribution
// objects are implementation-defined, which would break bit-for-bit
// reproducibility guarantees across toolchains; the raw engine stream is
// specified exactly.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1) with 53 random bits
    Real next_real() {
        return static_cast<Real>(engine_() >> 11) * 0x1.0p-53;
    }

    // uniform in [0, n), n > 0, by rejection (no modulo bias)
    std::uint64_t next_below(std::uint64_t n);

    Index uniform_index(Index n) {
        return static_cast<Index>(next_below(static_cast<std::uint64_t>(n)));
    }

    // Knuth product-of-uniforms; lambda split into chunks so the running
    // product never underflows
    Index poisson(Real lambda);

    // k distinct values from [0, n), ascending
    std::vector<Index> sample_without_replacement(Index n, Index k);

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (Index i = static_cast<Index>(v.size()) - 1; i > 0; --i) {
            Index j = uniform_index(i + 1);
            std::swap(v[i], v[j]);
        }
    }

    // uniform permutation p of [0, n): p[i] is the new id of i
    std::vector<Index> permutation(Index n);

private:
    std::mt19937_64 engine_;
};

// stream splitting for parallel cells: stable 64-bit mix of the inputs
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0);

}  // namespace hgalign
