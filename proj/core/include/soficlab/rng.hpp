#ifndef SOFICLAB_RNG_HPP
#define SOFICLAB_RNG_HPP

#include <cstdint>
#include <vector>

namespace soficlab {

/// Deterministic 64-bit generator (splitmix64). Self-contained so that
/// seeded runs produce identical streams on every platform and standard
/// library; the whole reproducibility contract of the CLI rests on this.
class Rng {
public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound), bound >= 1. Rejection-free multiply-shift
  /// would bias tiny bounds; plain rejection keeps it exact.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = (0ULL - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Derives an independent stream for a labelled subtask. Mixing the
  /// label through one splitmix step keeps per-chunk streams decorrelated
  /// while remaining a pure function of (seed, label).
  static uint64_t derive(uint64_t seed, uint64_t label) {
    Rng r(seed ^ (0x632be59bd9b4e019ULL * (label + 1)));
    return r.next();
  }

  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
      int j = static_cast<int>(below(static_cast<uint64_t>(i) + 1));
      std::swap(p[i], p[j]);
    }
    return p;
  }

private:
  uint64_t state_;
};

} // namespace soficlab

#endif
