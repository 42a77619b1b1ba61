#ifndef SOFICLAB_TOWER_HPP
#define SOFICLAB_TOWER_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "soficlab/partition.hpp"
#include "soficlab/rat.hpp"
#include "soficlab/words.hpp"

namespace soficlab {

/// A chain of finite quotient actions with explicit factor maps. Level
/// sizes strictly increase; maps[L] sends level L+1 points onto level L
/// points. Construction enforces exact equivariance (map(g x) = g map(x))
/// and uniform fibers (every level-L point has size(L+1)/size(L)
/// preimages), so each level is a measure-preserving factor of the next.
class Tower {
public:
  static Tower create(std::vector<FiniteAction> levels,
                      std::vector<std::vector<int>> maps);

  int depth() const { return static_cast<int>(levels_.size()); }
  const FiniteAction& level(int i) const { return levels_.at(static_cast<size_t>(i)); }
  const std::vector<FiniteAction>& levels() const { return levels_; }
  const std::vector<std::vector<int>>& maps() const { return maps_; }
  int generator_count() const { return levels_.front().generator_count(); }

  /// Projects a point from level `from` down to level `to` (to <= from).
  int project(int from, int to, int point) const;

private:
  Tower() = default;
  std::vector<FiniteAction> levels_;
  std::vector<std::vector<int>> maps_;
};

/// Level L is the cyclic action on base^(L+1) points (0-based level
/// index), generator x -> x+1, factor maps reduce mod the lower size.
Tower odometer_tower(int base, int depth);

/// Composes a partition on a shallow level with the factor maps; block
/// measures are preserved exactly by uniform fibers.
FinitePartition pullback_partition(const Tower& t, int from_level, int to_level,
                                   const FinitePartition& p);

/// A finite-action sequence probed for sofic-approximation behaviour:
/// kernel words should act trivially in the limit, probe words freely.
struct SoficApproximation {
  std::vector<FiniteAction> sequence;
  WordList kernel_words;
  WordList probe_words;

  void validate() const;
};

/// All nonempty reduced words of length <= max_len over the generators,
/// in length-lexicographic order. The identity is left out: its fixed-point
/// ratio is 1 on every action, which is what kernel words, not probes,
/// are for.
WordList default_probe_words(int generator_count, int max_len = 3);

/// Independent uniform permutations per generator and stage; empty kernel,
/// probes defaulted to all reduced words of length <= 3.
SoficApproximation random_sofic(int generator_count, const std::vector<int>& sizes,
                                uint64_t seed);

/// Coordinatewise action on the product carrier; (x, y) is point
/// x * size(b) + y.
FiniteAction diagonal_product(const FiniteAction& a, const FiniteAction& b);

struct WordTrajectory {
  GroupWord word;
  bool is_kernel = false;
  std::vector<Rat> fix_ratios; // one entry per stage
  bool pass = false;
};

/// Fix-ratio trend report. A kernel word passes iff the minimum ratio over
/// the final third of the sequence is >= hi; a probe word passes iff the
/// maximum over the final third is <= lo. The final third starts at index
/// floor(2m/3) of m stages. Defaults lo = 0.30, hi = 0.70.
struct SoficValidation {
  std::vector<WordTrajectory> trajectories;
  double band_lo = 0.30;
  double band_hi = 0.70;
  bool pass = false;
};

SoficValidation validate_sofic(const SoficApproximation& sigma,
                               double band_lo = 0.30, double band_hi = 0.70);

} // namespace soficlab

#endif
