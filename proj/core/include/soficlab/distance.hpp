#ifndef SOFICLAB_DISTANCE_HPP
#define SOFICLAB_DISTANCE_HPP

#include <cstdint>
#include <vector>

#include "soficlab/model.hpp"
#include "soficlab/partition.hpp"
#include "soficlab/rat.hpp"
#include "soficlab/stats.hpp"
#include "soficlab/words.hpp"

namespace soficlab {

/// Word lists are normalized to contain the identity before any distance
/// or homomorphism computation: the identity statistics pin the block
/// measures. If the identity is absent it is prepended; the given order
/// is otherwise kept. Empty input throws InputError.
WordList normalize_word_list(const WordList& words);

struct LocalSearchParams {
  int restarts = 16;
  int max_moves = 4000;
  uint64_t seed = 0;
};

struct SearchStrategy {
  enum class Mode { Exhaustive, LocalSearch };

  Mode mode = Mode::Exhaustive;
  LocalSearchParams local;
  /// Maximum number of scored candidates an exhaustive run may touch.
  long long budget = 10'000'000;
  int threads = 1;
  /// Extra starting assignments for the inner minimization (e.g. a known
  /// factor-map witness). Scored before the built-in candidates.
  std::vector<std::vector<int>> warm_starts;

  static SearchStrategy exhaustive(long long budget = 10'000'000);
  static SearchStrategy local_search(int restarts, int max_moves, uint64_t seed);
};

/// Result of one optimization. `value` always equals the exact L1
/// statistics gap recomputed at the witness; `exact` is set only when the
/// full search space was enumerated.
struct DistanceReport {
  Rat value;
  bool exact = false;
  IndexedPartition witness;
  long long evaluations = 0;
  WordList words; // normalized word list actually used
};

/// Inner infimum: best ordered partition of b's carrier (same block count
/// as alpha) approximating alpha's statistics. Exhaustive mode enumerates
/// all k^|b| assignments (budget permitting) and reports the minimum with
/// the lexicographically smallest witness; local search reports the best
/// upper bound found.
DistanceReport d_inf(const MeasureModel& a, const FiniteAction& b, const WordList& words,
                     const IndexedPartition& alpha, const SearchStrategy& s);

/// Outer supremum over k-block partitions of a's carrier of the inner
/// infimum. `a` must have a finite carrier. Exhaustive mode is exact;
/// local search reports a lower bound obtained by adversarial ascent,
/// solving inner problems exactly whenever they fit the budget.
DistanceReport d_sup(const MeasureModel& a, const FiniteAction& b, const WordList& words,
                     int k, const SearchStrategy& s);

struct SymmetricReport {
  DistanceReport forward;  // d(a -> b)
  DistanceReport backward; // d(b -> a)
  Rat value;
  bool exact = false;
};

/// Symmetrized pseudo-metric: d_sup(a,b) + d_sup(b,a).
SymmetricReport d_sym(const FiniteAction& a, const FiniteAction& b, const WordList& words,
                      int k, const SearchStrategy& s);

/// Finite-resolution weak-containment surrogate over a family of
/// partitions: one inner report per partition, verdict true iff every
/// value is <= threshold. Never a proof of containment, only evidence at
/// the given resolution.
struct ContainmentReport {
  std::vector<DistanceReport> reports;
  Rat threshold;
  bool all_below = false;
};

ContainmentReport containment_verdict(const MeasureModel& a, const FiniteAction& b,
                                      const WordList& words,
                                      const std::vector<IndexedPartition>& partitions,
                                      const SearchStrategy& s, const Rat& threshold);

} // namespace soficlab

#endif
