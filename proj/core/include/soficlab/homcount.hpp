#ifndef SOFICLAB_HOMCOUNT_HPP
#define SOFICLAB_HOMCOUNT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "soficlab/distance.hpp"
#include "soficlab/model.hpp"
#include "soficlab/partition.hpp"
#include "soficlab/rat.hpp"
#include "soficlab/tower.hpp"
#include "soficlab/words.hpp"

namespace soficlab {

/// An assignment from the atoms of the generated partition alpha_F (in
/// canonical order) to blocks of an ordered target partition with block
/// count |alpha_F|. Unions extend blockwise: the image of a union of
/// source atoms is the union of the assigned blocks, nonempty atoms only.
struct HomAssignment {
  FinitePartition target_partition;
};

/// Approximate-homomorphism test. With the word list normalized to
/// contain the identity, phi passes iff both hold with strict inequality,
/// all measures exact:
///   (i)  mu_b(f phi(A) symdiff phi(fA)) < delta for every block A of
///        alpha and every f in the list (fA resolved as a union of
///        alpha_F atoms);
///   (ii) sum over alpha_F atoms of |mu_b(phi(atom)) - mu_a(atom)| < delta.
bool is_hom(const MeasureModel& a, const IndexedPartition& alpha, const WordList& words,
            const Rat& delta, const FiniteAction& b, const HomAssignment& phi);

struct CountMethod {
  enum class Kind { Exact, MonteCarlo };
  Kind kind = Kind::Exact;
  uint64_t samples = 20000; // MonteCarlo only
  uint64_t seed = 0;        // MonteCarlo only
  long long budget = 10'000'000;

  static CountMethod exact(long long budget = 10'000'000);
  static CountMethod monte_carlo(uint64_t samples, uint64_t seed);
};

/// Counting result. Counts are integer-valued when exact; Monte Carlo
/// totals carry a 95% normal-approximation confidence half-width. The
/// restricted count tracks distinct induced assignments on the atoms of
/// xi; under sampling it is a lower-bound-biased estimate unless the
/// xi-atoms match the source atoms one to one, in which case restriction
/// is injective and the total estimate transfers.
struct HomCountReport {
  bool exact = true;
  double total_valid = 0;
  double restricted_count = 0;
  double log_total = 0;      // natural log, -inf when zero
  double log_restricted = 0; // natural log, -inf when zero
  bool has_ci95 = false;
  double ci95 = 0; // symmetric half-width for total_valid
  bool restricted_lower_bound_biased = false;
  uint64_t samples = 0;
  uint64_t seed = 0;
  int atom_count = 0;
};

/// Counts (alpha, delta, F)-homomorphisms into b, total and restricted to
/// xi. Requires alpha to refine xi and delta > 0. Exact mode enumerates
/// all |alpha_F|^|b| ordered target partitions with early pruning on
/// partial measure deficits; budget-checked.
HomCountReport count_homs(const MeasureModel& a, const IndexedPartition& xi,
                          const IndexedPartition& alpha, const WordList& words,
                          const Rat& delta, const FiniteAction& b, const CountMethod& method);

/// (1/|b|) log of the restricted count; -infinity iff the count is zero.
double entropy_point(const MeasureModel& a, const IndexedPartition& xi,
                     const IndexedPartition& alpha, const WordList& words, const Rat& delta,
                     const FiniteAction& b, const CountMethod& method);

struct EntropyCell {
  int alpha_idx = 0;
  int words_idx = 0;
  int delta_idx = 0;
  int stage_idx = 0;
  HomCountReport count;
  double value = 0; // entropy_point, -inf allowed
};

/// Per-(alpha, words, delta) min/max of the value over the stage window;
/// the pair brackets any limit point of the stage sequence.
struct EntropyWindow {
  int alpha_idx = 0;
  int words_idx = 0;
  int delta_idx = 0;
  double lo = 0;
  double hi = 0;
};

struct EntropyBracket {
  double lo = 0;
  double hi = 0;
};

/// Full grid of entropy points over the requested ladders, plus the
/// chained minima over the delta, word-list and alpha ladders. The
/// chained aggregates are truncations: upper bounds for the untruncated
/// infima, never claimed as values of the full hierarchy.
struct EntropyGrid {
  std::vector<EntropyCell> cells;
  std::vector<EntropyWindow> windows;
  std::vector<EntropyBracket> per_alpha_words; // [alpha][words], min over deltas
  std::vector<EntropyBracket> per_alpha;       // min over word ladder
  EntropyBracket xi_bracket;                   // min over alpha ladder
  int alpha_count = 0;
  int words_count = 0;
  int delta_count = 0;
  int stage_count = 0;
};

EntropyGrid entropy_grid(const MeasureModel& a, const IndexedPartition& xi,
                         const std::vector<IndexedPartition>& alphas,
                         const std::vector<WordList>& words_ladder,
                         const std::vector<Rat>& deltas,
                         const std::vector<FiniteAction>& sigma_prefix,
                         const CountMethod& method, int threads = 1);

/// Small-entropy generating partition of the depth-level action of a
/// tower: one fiber of each level n = N..depth-1 (greedy smallest root,
/// fibers pairwise disjoint) plus the complement as block 0. N is the
/// cutoff from genprof_cutoff; the achieved Shannon entropy is returned
/// and is <= epsilon.
struct GenprofResult {
  FinitePartition partition; // on level depth-1 of the tower
  double entropy = 0;
  int cutoff = 0;                // the chosen N
  std::vector<int> fiber_roots;  // chosen root per level n = N..depth-1
};

GenprofResult genprof_partition(const Tower& t, double epsilon, int depth);

/// Smallest N >= 2 with 2^-(N-1) + sum_{n>=N} n 2^-(n-1) below the
/// squared-margin threshold min(epsilon, epsilon^2). The tail sum is
/// 4(N+1)/2^N exactly.
int genprof_cutoff(double epsilon);

} // namespace soficlab

#endif
