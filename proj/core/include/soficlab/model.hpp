#ifndef SOFICLAB_MODEL_HPP
#define SOFICLAB_MODEL_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "soficlab/partition.hpp"
#include "soficlab/rat.hpp"
#include "soficlab/tower.hpp"
#include "soficlab/words.hpp"

namespace soficlab {

/// Bernoulli shift of a free group on alphabet^F with an i.i.d. base
/// measure given by positive rational probabilities summing to 1.
struct BernoulliModel {
  int alphabet = 2;
  std::vector<Rat> probs;
  int generator_count = 1;

  void validate() const;
};

/// A measure-preserving system the statistics layer can evaluate exactly:
/// a finite action, one level of a validated tower, or a Bernoulli shift.
class MeasureModel {
public:
  struct TowerLevel {
    std::shared_ptr<const Tower> tower;
    int level = 0;
  };

  static MeasureModel finite(FiniteAction a);
  static MeasureModel tower_level(std::shared_ptr<const Tower> t, int level);
  static MeasureModel bernoulli(BernoulliModel b);

  bool is_symbolic() const { return std::holds_alternative<BernoulliModel>(v_); }
  bool is_tower_level() const { return std::holds_alternative<TowerLevel>(v_); }

  /// The finite action carrying the model, for finite and tower-level
  /// variants. Throws InputError on symbolic models.
  const FiniteAction& action() const;
  const BernoulliModel& bernoulli_model() const;
  const TowerLevel& tower_ref() const;

  int generator_count() const;
  std::string describe() const;

  /// Throws InputError unless p partitions this model's carrier.
  void check_partition(const IndexedPartition& p) const;

private:
  explicit MeasureModel(std::variant<FiniteAction, TowerLevel, BernoulliModel> v)
      : v_(std::move(v)) {}
  std::variant<FiniteAction, TowerLevel, BernoulliModel> v_;
};

} // namespace soficlab

#endif
