#ifndef SOFICLAB_STATS_HPP
#define SOFICLAB_STATS_HPP

#include <vector>

#include "soficlab/model.hpp"
#include "soficlab/partition.hpp"
#include "soficlab/rat.hpp"
#include "soficlab/words.hpp"

namespace soficlab {

/// The exact vector (mu(A_i intersect w A_j))_{i,j,w} for an ordered
/// partition with k blocks and an ordered word list. Entries are stored
/// dense, word-major: entry(i, j, w) at index w*k*k + i*k + j.
struct StatsVector {
  int k = 1;
  WordList words;
  std::vector<Rat> entries;

  const Rat& entry(int i, int j, int w) const {
    return entries[static_cast<size_t>(w) * k * k + static_cast<size_t>(i) * k +
                   static_cast<size_t>(j)];
  }
  Rat& entry(int i, int j, int w) {
    return entries[static_cast<size_t>(w) * k * k + static_cast<size_t>(i) * k +
                   static_cast<size_t>(j)];
  }
};

/// Image partition w . p: block i of the result is w applied to block i.
IndexedPartition translate(const MeasureModel& m, const GroupWord& w,
                           const IndexedPartition& p);

/// Iterated join of the translates f . p for f in the word list, folded
/// left to right, so the resulting block order is lexicographic in the
/// per-word block indices (first word most significant). Empty blocks
/// are kept.
IndexedPartition generated_partition(const MeasureModel& m, const WordList& words,
                                     const IndexedPartition& p);

/// Exact statistics; counting for finite carriers, product-measure
/// evaluation over the union of cylinder coordinates for Bernoulli models.
StatsVector stats(const MeasureModel& m, const WordList& words,
                  const IndexedPartition& p);

/// Exact L1 distance between statistics vectors of identical shape.
Rat stats_l1(const StatsVector& s, const StatsVector& t);

/// Exact block measures of p under m's measure.
std::vector<Rat> block_measures(const MeasureModel& m, const IndexedPartition& p);

/// -sum mu(B) log mu(B), natural log; empty blocks contribute zero.
double shannon_entropy(const MeasureModel& m, const IndexedPartition& p);
double shannon_entropy(const std::vector<Rat>& measures);

} // namespace soficlab

#endif
