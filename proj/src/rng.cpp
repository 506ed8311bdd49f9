#include "hgalign/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_set>

namespace hgalign {

std::uint64_t Rng::next_below(std::uint64_t n) {
    if (n == 0) throw DomainError("rng: next_below(0)");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

Index Rng::poisson(Real lambda) {
    if (lambda < 0) throw DomainError("rng: poisson lambda must be >= 0");
    Index total = 0;
    // exp(-500) is comfortably above double underflow
    while (lambda > 500) {
        total += poisson(500);
        lambda -= 500;
    }
    const Real threshold = std::exp(-lambda);
    Real prod = 1;
    Index k = 0;
    for (;;) {
        prod *= next_real();
        if (prod <= threshold) break;
        ++k;
    }
    return total + k;
}

std::vector<Index> Rng::sample_without_replacement(Index n, Index k) {
    if (k > n) throw DomainError("rng: sample size exceeds population");
    std::vector<Index> out;
    out.reserve(k);
    if (k * 3 >= n) {
        // dense case: partial Fisher-Yates over the whole population
        std::vector<Index> pool(n);
        for (Index i = 0; i < n; ++i) pool[i] = i;
        for (Index i = 0; i < k; ++i) {
            Index j = i + uniform_index(n - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
    } else {
        std::unordered_set<Index> seen;
        while (static_cast<Index>(out.size()) < k) {
            Index v = uniform_index(n);
            if (seen.insert(v).second) out.push_back(v);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Index> Rng::permutation(Index n) {
    std::vector<Index> p(n);
    for (Index i = 0; i < n; ++i) p[i] = i;
    shuffle(p);
    return p;
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    // splitmix64 finalizer over a simple combine
    std::uint64_t x = a;
    for (std::uint64_t v : {b, c}) {
        x ^= v + 0x9e3779b97f4a7c15ULL + (x << 6) + (x >> 2);
        x += 0x9e3779b97f4a7c15ULL;
        x ^= x >> 30;
        x *= 0xbf58476d1ce4e5b9ULL;
        x ^= x >> 27;
        x *= 0x94d049bb133111ebULL;
        x ^= x >> 31;
    }
    return x;
}

}  // namespace hgalign
