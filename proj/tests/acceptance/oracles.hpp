#ifndef SOFICLAB_ACCEPTANCE_ORACLES_HPP
#define SOFICLAB_ACCEPTANCE_ORACLES_HPP

#include <cstdint>
#include <vector>

#include "soficlab/partition.hpp"
#include "soficlab/rat.hpp"
#include "soficlab/words.hpp"

namespace oracles {

// Independent reference implementations used only to cross-check the
// library: a pruning-free homomorphism counter that works on explicit
// point sets, and exact big-integer binomial sums.

struct NaiveHomCount {
  long long total = 0;
  long long restricted = 0;
};

/// Enumerates every assignment of b's points to the atoms of the
/// generated partition and checks the two approximation conditions by
/// set algebra, with no pruning and no shared code with the library's
/// counter. alpha must refine xi.
NaiveHomCount naive_count_homs(const soficlab::FiniteAction& a,
                               const soficlab::FinitePartition& xi,
                               const soficlab::FinitePartition& alpha,
                               const soficlab::WordList& words, const soficlab::Rat& delta,
                               const soficlab::FiniteAction& b);

/// Arbitrary-precision unsigned integer, little-endian 32-bit limbs; just
/// enough arithmetic for binomial sums.
class BigUint {
public:
  BigUint() = default;
  explicit BigUint(uint64_t v);

  BigUint& operator+=(const BigUint& o);
  BigUint& mul_small(uint64_t m);
  BigUint& div_small(uint64_t d); // exact division expected
  bool is_zero() const { return limbs_.empty(); }

  /// Natural logarithm (requires a nonzero value).
  double log() const;

private:
  std::vector<uint32_t> limbs_;
};

/// Sum of C(n, m) over all m with |m/n - 1/2| < delta/2, exactly.
BigUint central_binomial_sum(int n, const soficlab::Rat& delta);

} // namespace oracles

#endif
