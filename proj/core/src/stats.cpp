#include "soficlab/stats.hpp"

#include <algorithm>
#include <cmath>

#include "soficlab/errors.hpp"

namespace soficlab {

namespace {

FinitePartition translate_finite(const FiniteAction& a, const GroupWord& w,
                                 const FinitePartition& p) {
  std::vector<int> perm = evaluate(a, w);
  FinitePartition out;
  out.carrier = p.carrier;
  out.block_count = p.block_count;
  out.assign.resize(p.assign.size());
  for (int x = 0; x < p.carrier; ++x) {
    out.assign[static_cast<size_t>(perm[static_cast<size_t>(x)])] =
        p.assign[static_cast<size_t>(x)];
  }
  return out;
}

CylinderPartition translate_cylinder(const GroupWord& w, const CylinderPartition& p) {
  // w . [x(s) = l(s) for s in S] = [x(ws) = l(s)], so only the coordinate
  // list moves; the labeling table is untouched.
  CylinderPartition out = p;
  for (auto& c : out.coords) c = w * c;
  return out;
}

} // namespace

IndexedPartition translate(const MeasureModel& m, const GroupWord& w,
                           const IndexedPartition& p) {
  m.check_partition(p);
  if (w.max_generator() >= m.generator_count()) {
    throw InputError("word uses a generator the model does not have");
  }
  if (m.is_symbolic()) return IndexedPartition(translate_cylinder(w, p.cylinder()));
  return IndexedPartition(translate_finite(m.action(), w, p.finite()));
}

IndexedPartition generated_partition(const MeasureModel& m, const WordList& words,
                                     const IndexedPartition& p) {
  if (words.empty()) throw InputError("generated partition needs a nonempty word list");
  IndexedPartition acc = translate(m, words.front(), p);
  for (size_t i = 1; i < words.size(); ++i) {
    acc = join(acc, translate(m, words[i], p));
  }
  return acc;
}

namespace {

StatsVector stats_finite(const FiniteAction& a, const WordList& words,
                         const FinitePartition& p) {
  StatsVector s;
  s.k = p.block_count;
  s.words = words;
  s.entries.assign(words.size() * static_cast<size_t>(s.k) * static_cast<size_t>(s.k), Rat(0));
  std::vector<long long> counts(static_cast<size_t>(s.k) * static_cast<size_t>(s.k));
  for (size_t w = 0; w < words.size(); ++w) {
    // x in A_i intersect w A_j  <=>  p(x) = i and p(w^-1 x) = j
    std::vector<int> winv = evaluate(a, words[w].inverse());
    std::fill(counts.begin(), counts.end(), 0);
    for (int x = 0; x < a.size; ++x) {
      int i = p.assign[static_cast<size_t>(x)];
      int j = p.assign[static_cast<size_t>(winv[static_cast<size_t>(x)])];
      ++counts[static_cast<size_t>(i) * s.k + static_cast<size_t>(j)];
    }
    for (int i = 0; i < s.k; ++i) {
      for (int j = 0; j < s.k; ++j) {
        s.entry(i, j, static_cast<int>(w)) =
            Rat(counts[static_cast<size_t>(i) * s.k + static_cast<size_t>(j)], a.size);
      }
    }
  }
  return s;
}

Rat labeling_mass(const BernoulliModel& b, size_t index, size_t coord_count) {
  Rat mass(1);
  size_t a = static_cast<size_t>(b.alphabet);
  for (size_t t = 0; t < coord_count; ++t) {
    mass *= b.probs[index % a];
    index /= a;
  }
  return mass;
}

std::vector<GroupWord> merged_coords(const std::vector<GroupWord>& s,
                                     const std::vector<GroupWord>& t) {
  std::vector<GroupWord> u = s;
  for (const auto& w : t) {
    if (std::find(u.begin(), u.end(), w) == u.end()) u.push_back(w);
  }
  return u;
}

StatsVector stats_bernoulli(const BernoulliModel& b, const WordList& words,
                            const CylinderPartition& p) {
  StatsVector s;
  s.k = p.block_count;
  s.words = words;
  s.entries.assign(words.size() * static_cast<size_t>(s.k) * static_cast<size_t>(s.k), Rat(0));
  for (size_t w = 0; w < words.size(); ++w) {
    CylinderPartition tp = translate_cylinder(words[w], p);
    std::vector<GroupWord> u = merged_coords(p.coords, tp.coords);
    CylinderPartition ep = extend_cylinder(p, u);
    CylinderPartition et = extend_cylinder(tp, u);
    for (size_t idx = 0; idx < ep.table.size(); ++idx) {
      int i = ep.table[idx];
      int j = et.table[idx];
      s.entry(i, j, static_cast<int>(w)) += labeling_mass(b, idx, u.size());
    }
  }
  return s;
}

} // namespace

StatsVector stats(const MeasureModel& m, const WordList& words, const IndexedPartition& p) {
  if (words.empty()) throw InputError("statistics need a nonempty word list");
  m.check_partition(p);
  for (const auto& w : words) {
    if (w.max_generator() >= m.generator_count()) {
      throw InputError("statistics word uses a generator the model does not have");
    }
  }
  if (m.is_symbolic()) return stats_bernoulli(m.bernoulli_model(), words, p.cylinder());
  return stats_finite(m.action(), words, p.finite());
}

Rat stats_l1(const StatsVector& s, const StatsVector& t) {
  if (s.k != t.k || !(s.words == t.words)) {
    throw InputError("statistics vectors have different shapes");
  }
  Rat total(0);
  for (size_t i = 0; i < s.entries.size(); ++i) {
    total += (s.entries[i] - t.entries[i]).abs();
  }
  return total;
}

std::vector<Rat> block_measures(const MeasureModel& m, const IndexedPartition& p) {
  m.check_partition(p);
  if (m.is_symbolic()) {
    const auto& c = p.cylinder();
    std::vector<Rat> out(static_cast<size_t>(c.block_count), Rat(0));
    for (size_t idx = 0; idx < c.table.size(); ++idx) {
      out[static_cast<size_t>(c.table[idx])] +=
          labeling_mass(m.bernoulli_model(), idx, c.coords.size());
    }
    return out;
  }
  const auto& f = p.finite();
  std::vector<Rat> out;
  out.reserve(static_cast<size_t>(f.block_count));
  for (long long c : f.block_sizes()) out.push_back(Rat(c, f.carrier));
  return out;
}

double shannon_entropy(const std::vector<Rat>& measures) {
  double h = 0.0;
  for (const Rat& mu : measures) {
    if (mu.is_zero()) continue;
    double v = mu.to_double();
    h -= v * std::log(v);
  }
  return h;
}

double shannon_entropy(const MeasureModel& m, const IndexedPartition& p) {
  return shannon_entropy(block_measures(m, p));
}

} // namespace soficlab
