#ifndef SOFICLAB_PARTITION_HPP
#define SOFICLAB_PARTITION_HPP

#include <string>
#include <variant>
#include <vector>

#include "soficlab/words.hpp"

namespace soficlab {

/// Ordered partition of a finite carrier {0..carrier-1} into block_count
/// blocks, empty blocks permitted. assign[x] is the block of point x.
struct FinitePartition {
  int carrier = 0;
  int block_count = 1;
  std::vector<int> assign;

  void validate() const;

  std::vector<long long> block_sizes() const;

  /// All-points-in-one-block partition.
  static FinitePartition one_block(int carrier);
  /// Every point its own block.
  static FinitePartition singletons(int carrier);

  friend bool operator==(const FinitePartition& a, const FinitePartition& b) {
    return a.carrier == b.carrier && a.block_count == b.block_count && a.assign == b.assign;
  }
};

/// Ordered partition of a Bernoulli shift carrier (alphabet^F for a free
/// group F) into clopen blocks described over finitely many coordinates.
/// coords are distinct reduced words; a labeling assigns one alphabet
/// symbol per coordinate and is indexed little-endian by position:
/// index = sum_t label[t] * alphabet^t. table[index] is the block.
struct CylinderPartition {
  int generator_count = 1;
  int alphabet = 2;
  int block_count = 1;
  std::vector<GroupWord> coords;
  std::vector<int> table;

  void validate() const;

  size_t labelings() const { return table.size(); }

  /// Coordinate partition at the given word: one block per symbol read
  /// at that coordinate.
  static CylinderPartition coordinate(int generator_count, int alphabet,
                                      const GroupWord& at = GroupWord());

  friend bool operator==(const CylinderPartition& a, const CylinderPartition& b) {
    return a.generator_count == b.generator_count && a.alphabet == b.alphabet &&
           a.block_count == b.block_count && a.coords == b.coords && a.table == b.table;
  }
};

/// A partition of whatever carrier a MeasureModel owns: pointwise for
/// finite carriers, cylinder form for symbolic ones.
struct IndexedPartition {
  std::variant<FinitePartition, CylinderPartition> body;

  IndexedPartition() : body(FinitePartition{}) {}
  IndexedPartition(FinitePartition p) : body(std::move(p)) {}
  IndexedPartition(CylinderPartition p) : body(std::move(p)) {}

  bool is_finite() const { return std::holds_alternative<FinitePartition>(body); }
  const FinitePartition& finite() const;
  const CylinderPartition& cylinder() const;

  int block_count() const;
  std::string describe() const;

  friend bool operator==(const IndexedPartition& a, const IndexedPartition& b) {
    return a.body == b.body;
  }
};

/// Common refinement with blocks indexed row-major: block (i,j) of the
/// result is p_i intersect q_j at index i * q.block_count + j. Empty
/// intersections stay as empty blocks. Carrier mismatch throws InputError.
IndexedPartition join(const IndexedPartition& p, const IndexedPartition& q);

/// True iff every block of q is a union of blocks of p (up to empties).
bool refines(const IndexedPartition& p, const IndexedPartition& q);

/// Extends a cylinder partition to a superset of its coordinates without
/// changing the blocks. Used by join/refines/statistics on symbolic models.
CylinderPartition extend_cylinder(const CylinderPartition& p,
                                  const std::vector<GroupWord>& coords);

} // namespace soficlab

#endif
