#include "soficlab/model.hpp"

#include "soficlab/errors.hpp"

namespace soficlab {

void BernoulliModel::validate() const {
  if (alphabet < 1) throw InputError("Bernoulli alphabet must be >= 1");
  if (generator_count < 1) throw InputError("Bernoulli model needs >= 1 generator");
  if (static_cast<int>(probs.size()) != alphabet) {
    throw InputError("Bernoulli base needs one probability per symbol");
  }
  Rat sum(0);
  for (const Rat& p : probs) {
    if (!(p > Rat(0))) throw InputError("Bernoulli base probabilities must be positive");
    sum += p;
  }
  if (sum != Rat(1)) throw InputError("Bernoulli base probabilities must sum to 1");
}

MeasureModel MeasureModel::finite(FiniteAction a) {
  a.validate();
  return MeasureModel(std::variant<FiniteAction, TowerLevel, BernoulliModel>(std::move(a)));
}

MeasureModel MeasureModel::tower_level(std::shared_ptr<const Tower> t, int level) {
  if (!t) throw InputError("tower level model needs a tower");
  if (level < 0 || level >= t->depth()) throw InputError("tower level out of range");
  TowerLevel tl{std::move(t), level};
  return MeasureModel(std::variant<FiniteAction, TowerLevel, BernoulliModel>(std::move(tl)));
}

MeasureModel MeasureModel::bernoulli(BernoulliModel b) {
  b.validate();
  return MeasureModel(std::variant<FiniteAction, TowerLevel, BernoulliModel>(std::move(b)));
}

const FiniteAction& MeasureModel::action() const {
  if (const auto* a = std::get_if<FiniteAction>(&v_)) return *a;
  if (const auto* tl = std::get_if<TowerLevel>(&v_)) return tl->tower->level(tl->level);
  throw InputError("symbolic model has no finite carrier action");
}

const BernoulliModel& MeasureModel::bernoulli_model() const {
  if (const auto* b = std::get_if<BernoulliModel>(&v_)) return *b;
  throw InputError("model is not a Bernoulli shift");
}

const MeasureModel::TowerLevel& MeasureModel::tower_ref() const {
  if (const auto* tl = std::get_if<TowerLevel>(&v_)) return *tl;
  throw InputError("model is not a tower level");
}

int MeasureModel::generator_count() const {
  if (const auto* b = std::get_if<BernoulliModel>(&v_)) return b->generator_count;
  return action().generator_count();
}

std::string MeasureModel::describe() const {
  if (const auto* b = std::get_if<BernoulliModel>(&v_)) {
    std::string s = "bernoulli(alphabet=" + std::to_string(b->alphabet) + ",probs=";
    for (size_t i = 0; i < b->probs.size(); ++i) {
      if (i) s.push_back(' ');
      s += b->probs[i].str();
    }
    s += ",gens=" + std::to_string(b->generator_count) + ")";
    return s;
  }
  if (const auto* tl = std::get_if<TowerLevel>(&v_)) {
    return "tower-level(level=" + std::to_string(tl->level) +
           ",size=" + std::to_string(tl->tower->level(tl->level).size) + ")";
  }
  const auto& a = std::get<FiniteAction>(v_);
  return "finite(size=" + std::to_string(a.size) +
         ",gens=" + std::to_string(a.generator_count()) + ")";
}

void MeasureModel::check_partition(const IndexedPartition& p) const {
  if (is_symbolic()) {
    const auto& c = p.cylinder(); // throws on finite partitions
    const auto& b = bernoulli_model();
    if (c.generator_count != b.generator_count || c.alphabet != b.alphabet) {
      throw InputError("cylinder partition does not match the Bernoulli model");
    }
    c.validate();
    return;
  }
  const auto& f = p.finite();
  f.validate();
  if (f.carrier != action().size) {
    throw InputError("partition carrier does not match the action size");
  }
}

} // namespace soficlab
