#ifndef SOFICLAB_CONVERGENCE_HPP
#define SOFICLAB_CONVERGENCE_HPP

#include <vector>

#include "soficlab/distance.hpp"
#include "soficlab/tower.hpp"

namespace soficlab {

struct ConvergencePair {
  int from = 0; // shallow level m
  int to = 0;   // deep level n > m
  SymmetricReport sym;
};

struct FactorZeroEntry {
  int from = 0; // shallow level m
  int to = 0;   // deep level n >= m
  DistanceReport report; // d_inf of the level-m partition into level n
};

/// Pairwise symmetrized distances between tower levels plus the
/// factor-direction entries: the canonical level-m partition optimized
/// into level n, which the factor maps force to zero exactly (the search
/// is warm-started with the pullback witness, so zero is always found).
/// row_max[m] is the worst d_sym in row m; trend = last row max minus
/// first row max.
struct ConvergenceReport {
  std::vector<ConvergencePair> pairs;
  std::vector<FactorZeroEntry> factor_entries;
  std::vector<Rat> row_max; // rows with at least one pair
  Rat trend;                // negative or zero when rows tighten with depth
  WordList words;
  int k = 2;
};

ConvergenceReport tower_convergence(const Tower& t, const WordList& words, int k,
                                    const SearchStrategy& s);

} // namespace soficlab

#endif
