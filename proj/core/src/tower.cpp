#include "soficlab/tower.hpp"

#include <algorithm>

#include "soficlab/errors.hpp"
#include "soficlab/rng.hpp"

namespace soficlab {

Tower Tower::create(std::vector<FiniteAction> levels, std::vector<std::vector<int>> maps) {
  if (levels.empty()) throw InputError("tower needs at least one level");
  if (maps.size() + 1 != levels.size()) {
    throw InputError("tower needs one factor map per consecutive level pair");
  }
  int gens = levels.front().generator_count();
  for (const auto& a : levels) {
    a.validate();
    if (a.generator_count() != gens) {
      throw InputError("tower levels disagree on generator count");
    }
  }
  for (size_t l = 0; l + 1 < levels.size(); ++l) {
    const FiniteAction& lo = levels[l];
    const FiniteAction& hi = levels[l + 1];
    const std::vector<int>& map = maps[l];
    if (hi.size <= lo.size) throw InputError("tower level sizes must strictly increase");
    if (hi.size % lo.size != 0) {
      throw InputError("tower level sizes must divide (uniform fibers impossible)");
    }
    if (static_cast<int>(map.size()) != hi.size) {
      throw InputError("factor map length does not match upper level size");
    }
    std::vector<int> fiber(static_cast<size_t>(lo.size), 0);
    for (int x : map) {
      if (x < 0 || x >= lo.size) throw InputError("factor map image out of range");
      ++fiber[static_cast<size_t>(x)];
    }
    int expect = hi.size / lo.size;
    for (int c : fiber) {
      if (c != expect) throw InputError("tower factor map does not have uniform fibers");
    }
    for (int g = 0; g < gens; ++g) {
      for (int x = 0; x < hi.size; ++x) {
        int lhs = map[static_cast<size_t>(hi.gens[static_cast<size_t>(g)][static_cast<size_t>(x)])];
        int rhs = lo.gens[static_cast<size_t>(g)][static_cast<size_t>(map[static_cast<size_t>(x)])];
        if (lhs != rhs) throw InputError("tower factor map is not equivariant");
      }
    }
  }
  Tower t;
  t.levels_ = std::move(levels);
  t.maps_ = std::move(maps);
  return t;
}

int Tower::project(int from, int to, int point) const {
  if (to > from || from >= depth() || to < 0) {
    throw InputError("tower projection levels out of range");
  }
  int x = point;
  for (int l = from; l > to; --l) x = maps_[static_cast<size_t>(l - 1)][static_cast<size_t>(x)];
  return x;
}

Tower odometer_tower(int base, int depth) {
  if (base < 2) throw InputError("odometer base must be >= 2");
  if (depth < 1) throw InputError("odometer depth must be >= 1");
  long long size = 1;
  std::vector<FiniteAction> levels;
  std::vector<std::vector<int>> maps;
  for (int l = 0; l < depth; ++l) {
    size *= base;
    if (size > (1 << 26)) throw BudgetError("odometer carrier exceeds the supported bound");
    levels.push_back(cyclic_action(static_cast<int>(size)));
    if (l > 0) {
      int lo = levels[static_cast<size_t>(l - 1)].size;
      std::vector<int> map(static_cast<size_t>(size));
      for (int x = 0; x < static_cast<int>(size); ++x) map[static_cast<size_t>(x)] = x % lo;
      maps.push_back(std::move(map));
    }
  }
  return Tower::create(std::move(levels), std::move(maps));
}

FinitePartition pullback_partition(const Tower& t, int from_level, int to_level,
                                   const FinitePartition& p) {
  if (from_level > to_level) throw InputError("pullback goes from a shallow level to a deep one");
  if (to_level >= t.depth() || from_level < 0) throw InputError("pullback level out of range");
  if (p.carrier != t.level(from_level).size) {
    throw InputError("partition does not live on the source level");
  }
  FinitePartition out;
  out.carrier = t.level(to_level).size;
  out.block_count = p.block_count;
  out.assign.resize(static_cast<size_t>(out.carrier));
  for (int x = 0; x < out.carrier; ++x) {
    out.assign[static_cast<size_t>(x)] =
        p.assign[static_cast<size_t>(t.project(to_level, from_level, x))];
  }
  return out;
}

void SoficApproximation::validate() const {
  if (sequence.empty()) throw InputError("sofic approximation needs at least one stage");
  int gens = sequence.front().generator_count();
  for (const auto& a : sequence) {
    a.validate();
    if (a.generator_count() != gens) {
      throw InputError("sofic approximation stages disagree on generator count");
    }
  }
}

WordList default_probe_words(int generator_count, int max_len) {
  WordList out;
  WordList frontier{GroupWord()};
  for (int len = 1; len <= max_len; ++len) {
    WordList next;
    for (const auto& w : frontier) {
      for (int g = 0; g < generator_count; ++g) {
        for (int sign : {+1, -1}) {
          GroupWord v = w * GroupWord::generator(g, sign);
          if (static_cast<int>(v.length()) == len) next.push_back(v);
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

SoficApproximation random_sofic(int generator_count, const std::vector<int>& sizes,
                                uint64_t seed) {
  if (sizes.empty()) throw InputError("random sofic approximation needs stage sizes");
  SoficApproximation s;
  for (size_t i = 0; i < sizes.size(); ++i) {
    s.sequence.push_back(
        random_action(sizes[i], generator_count, Rng::derive(seed, static_cast<uint64_t>(i))));
  }
  s.probe_words = default_probe_words(generator_count, 3);
  s.validate();
  return s;
}

FiniteAction diagonal_product(const FiniteAction& a, const FiniteAction& b) {
  if (a.generator_count() != b.generator_count()) {
    throw InputError("diagonal product needs matching generator counts");
  }
  FiniteAction p;
  p.size = a.size * b.size;
  p.gens.assign(static_cast<size_t>(a.generator_count()),
                std::vector<int>(static_cast<size_t>(p.size)));
  for (int g = 0; g < a.generator_count(); ++g) {
    for (int x = 0; x < a.size; ++x) {
      for (int y = 0; y < b.size; ++y) {
        int gx = a.gens[static_cast<size_t>(g)][static_cast<size_t>(x)];
        int gy = b.gens[static_cast<size_t>(g)][static_cast<size_t>(y)];
        p.gens[static_cast<size_t>(g)][static_cast<size_t>(x * b.size + y)] = gx * b.size + gy;
      }
    }
  }
  p.validate();
  return p;
}

SoficValidation validate_sofic(const SoficApproximation& sigma, double band_lo,
                               double band_hi) {
  sigma.validate();
  SoficValidation report;
  report.band_lo = band_lo;
  report.band_hi = band_hi;
  size_t stages = sigma.sequence.size();
  size_t tail_start = (2 * stages) / 3;

  auto run_word = [&](const GroupWord& w, bool kernel) {
    WordTrajectory tr;
    tr.word = w;
    tr.is_kernel = kernel;
    for (const auto& a : sigma.sequence) tr.fix_ratios.push_back(fix_ratio(a, w));
    double worst = kernel ? 1.0 : 0.0;
    for (size_t i = tail_start; i < stages; ++i) {
      double v = tr.fix_ratios[i].to_double();
      worst = kernel ? std::min(worst, v) : std::max(worst, v);
    }
    tr.pass = kernel ? (worst >= band_hi) : (worst <= band_lo);
    return tr;
  };

  report.pass = true;
  for (const auto& w : sigma.kernel_words) {
    report.trajectories.push_back(run_word(w, true));
    report.pass = report.pass && report.trajectories.back().pass;
  }
  for (const auto& w : sigma.probe_words) {
    report.trajectories.push_back(run_word(w, false));
    report.pass = report.pass && report.trajectories.back().pass;
  }
  return report;
}

} // namespace soficlab
