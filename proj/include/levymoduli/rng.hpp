#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace levymoduli {

// splitmix64; used both as a seeding mix and to derive per-replica streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Replica i of master seed s draws from an independent stream seeded by
// mixing s with i.  This is the splittable-stream convention referenced in
// experiment configs.
inline std::uint64_t replica_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (index + 1));
    return splitmix64(s);
}

// xoshiro256++ with fixed, platform-independent output.  std::mt19937 would
// do but the normal/stable transforms below must be pinned down too, so the
// whole stack is hand-rolled for bit-reproducibility.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in (0, 1); never returns 0 so logs are safe.
    double uniform01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double exponential() { return -std::log(uniform01()); }

    // Box-Muller, one value per call (the pair's second member is cached).
    double normal() {
        if (have_cached_) {
            have_cached_ = false;
            return cached_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        cached_ = radius * std::sin(angle);
        have_cached_ = true;
        return radius * std::cos(angle);
    }

    // Symmetric beta-stable variate with characteristic function e^{-|lambda|^beta}
    // (Chambers-Mallows-Stuck, symmetric case).  Valid for beta in (0, 2].
    double symmetric_stable(double beta) {
        const double theta = uniform(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
        const double w = exponential();
        if (beta == 2.0) {
            // CMS degenerates cleanly at beta = 2: N(0, 2).
            return 2.0 * std::sin(theta) * std::sqrt(w);
        }
        const double num = std::sin(beta * theta);
        const double den = std::pow(std::cos(theta), 1.0 / beta);
        const double tail = std::pow(std::cos((1.0 - beta) * theta) / w, (1.0 - beta) / beta);
        return num / den * tail;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4] = {};
    double cached_ = 0.0;
    bool have_cached_ = false;
};

}  // namespace levymoduli
