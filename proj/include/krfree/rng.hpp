#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "krfree/vertex_set.hpp"

namespace krf {

// All randomness in the library flows through this wrapper.  std::mt19937_64
// output is fixed by the standard and the bounded draw uses rejection
// sampling, so identical seeds give identical results on every platform
// (std::uniform_int_distribution would not).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform value in [0, bound).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0)
            throw std::invalid_argument("Rng::below: zero bound");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % bound;
    }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t mix_seed(std::uint64_t z) {
    // splitmix64 finalizer
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for the k-th independent retry of a seeded run.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
    return mix_seed(seed ^ mix_seed(k + 1));
}

// Uniform m-subset of 0..n-1 via partial Fisher-Yates.
inline VertexSet sample_subset(int n, int m, Rng& rng) {
    if (m < 0 || m > n)
        throw std::invalid_argument("sample_subset: need 0 <= m <= n");
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    VertexSet out(n);
    for (int i = 0; i < m; ++i) {
        int j = i + (int)rng.below((std::uint64_t)(n - i));
        std::swap(ids[i], ids[j]);
        out.insert(ids[i]);
    }
    return out;
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
    std::vector<int> ids(n);
    std::iota(ids.begin(), ids.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        int j = (int)rng.below((std::uint64_t)(i + 1));
        std::swap(ids[i], ids[j]);
    }
    return ids;
}

} // namespace krf
