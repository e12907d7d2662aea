#pragma once

#include <cstdint>
#include <random>

#include "stablelab/common.hpp"

namespace stablelab {

// Seed/stream pair. Equal pairs reproduce identical draws; distinct stream
// ids give statistically independent substreams of the same experiment seed.
struct RngState {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// mt19937_64 keyed by (seed, stream) through splitmix64 mixing. All variate
// transforms are explicit so streams are reproducible across platforms.
class Rng {
  public:
    explicit Rng(RngState s) {
        std::uint64_t key = s.seed;
        std::uint64_t a = detail::splitmix64(key);
        key ^= 0x6a09e667f3bcc909ULL + s.stream;
        std::uint64_t b = detail::splitmix64(key);
        std::seed_seq seq{static_cast<unsigned>(a), static_cast<unsigned>(a >> 32),
                          static_cast<unsigned>(b), static_cast<unsigned>(b >> 32)};
        gen_.seed(seq);
    }

    std::uint64_t bits() { return gen_(); }

    // Uniform on the open interval (0,1).
    double uniform() {
        return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double exponential() { return -std::log(uniform()); }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double t = 2.0 * M_PI * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    // Uniform direction on S^{n-1}, n in {2,3}.
    Vec direction(int n) {
        if (n == 2) {
            double t = 2.0 * M_PI * uniform();
            return {std::cos(t), std::sin(t), 0.0};
        }
        double c = 2.0 * uniform() - 1.0;  // cos(polar) uniform on [-1,1]
        double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        double t = 2.0 * M_PI * uniform();
        return {s * std::cos(t), s * std::sin(t), c};
    }

  private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace stablelab
