// rng.hpp -- reproducible random number generation.
//
// Generator: xoshiro256** (Blackman & Vigna), state seeded from a
// splitmix64 sequence. Distributions are implemented here rather than
// taken from <random> so that identical seeds give identical draws on
// every platform and standard library.
//
// Stream derivation rule: a child stream is addressed by a path of
// 64-bit integers. Starting from the parent seed s, each path element e
// folds in as s <- mix(s XOR (mix(e) + PHI)), where mix is the
// splitmix64 finalizer and PHI = 0x9e3779b97f4a7c15. Paths used by this
// library:
//   {cell_index, 0}   inhomogeneous PPP sampling for a cell
//   {cell_index, 1}   Matern II tie-marks for a cell
//   {replication, 0}  Monte-Carlo replication sampling streams
//   {replication, 1}  Monte-Carlo replication tie-mark streams

#ifndef STOCHTOPO_RNG_HPP
#define STOCHTOPO_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>

namespace stochtopo {

namespace detail {

constexpr std::uint64_t kPhi64 = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t splitmix64_next(std::uint64_t& state) {
    state += kPhi64;
    return mix64(state);
}

constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

}  // namespace detail

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = detail::splitmix64_next(sm);
    }

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        const std::uint64_t result = detail::rotl64(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = detail::rotl64(s_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Poisson draw by Knuth's product method; means above 400 are split
    /// into additive chunks to avoid exp underflow. Exact for any mean.
    std::uint64_t poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        std::uint64_t total = 0;
        while (mean > 400.0) {
            total += poisson_small(200.0);
            mean -= 200.0;
        }
        return total + poisson_small(mean);
    }

    /// Child stream for the given derivation path (see file header).
    Rng derive(std::initializer_list<std::uint64_t> path) const {
        std::uint64_t s = seed_;
        for (std::uint64_t e : path) s = detail::mix64(s ^ (detail::mix64(e) + detail::kPhi64));
        return Rng(s);
    }

private:
    std::uint64_t poisson_small(double mean) {
        const double limit = std::exp(-mean);
        std::uint64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform01();
        } while (p > limit);
        return k - 1;
    }

    std::uint64_t seed_;
    std::uint64_t s_[4] = {};
};

}  // namespace stochtopo

#endif  // STOCHTOPO_RNG_HPP
