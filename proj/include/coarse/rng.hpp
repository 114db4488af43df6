#pragma once

#include <cstdint>

namespace coarse {

// Counter-based splitmix64. Determinism contract: every random choice in the
// library is a pure function of (seed, stream, counter), so replaying a run
// with the same seed and budgets is bit-exact, and independent substreams can
// be split off without sharing state.
class Rng {
  public:
    explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
        : seed_(seed), stream_(stream), counter_(0) {}

    std::uint64_t next() {
        std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ULL * (++counter_) +
                          0xbf58476d1ce4e5b9ULL * (stream_ + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    Rng split(std::uint64_t substream) const { return Rng(seed_, stream_ * 0x10001ULL + substream + 1); }

    std::uint64_t seed() const { return seed_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_;
};

} // namespace coarse
