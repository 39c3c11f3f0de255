#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace adsel {

// Derives an independent stream seed from a base seed and a stream index.
// splitmix64 finalizer; identical inputs give identical streams on any build.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t salt = 0);

// Deterministic RNG. The engine is std::mt19937_64 (its raw output is fixed
// by the standard); the real-valued transforms are implemented here rather
// than with std::*_distribution, whose output is implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform in [0, n), rejection sampling (no modulo bias)
    std::uint64_t below(std::uint64_t n);

    // uniform integer in [lo, hi] inclusive
    int uniform_int(int lo, int hi);

    // standard normal, Box-Muller with a cached spare
    double normal();

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace adsel
