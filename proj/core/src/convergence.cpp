#include "soficlab/convergence.hpp"

#include <algorithm>

#include "soficlab/errors.hpp"
#include "soficlab/parallel.hpp"
#include "soficlab/rng.hpp"

namespace soficlab {

ConvergenceReport tower_convergence(const Tower& t, const WordList& words, int k,
                                    const SearchStrategy& s) {
  if (k < 1) throw InputError("tower convergence needs k >= 1");
  ConvergenceReport rep;
  rep.words = normalize_word_list(words);
  rep.k = k;
  int depth = t.depth();

  std::vector<std::pair<int, int>> offdiag;
  for (int m = 0; m < depth; ++m) {
    for (int n = m + 1; n < depth; ++n) offdiag.push_back({m, n});
  }
  std::vector<SymmetricReport> syms(offdiag.size());
  parallel_for(static_cast<int>(offdiag.size()), s.threads, [&](int idx) {
    auto [m, n] = offdiag[static_cast<size_t>(idx)];
    SearchStrategy cell = s;
    cell.threads = 1;
    cell.local.seed = Rng::derive(s.local.seed, (static_cast<uint64_t>(m) << 20) |
                                                    static_cast<uint64_t>(n));
    syms[static_cast<size_t>(idx)] = d_sym(t.level(m), t.level(n), rep.words, k, cell);
  });
  // diagonal cells are zero with witness beta = alpha, no search needed
  for (int m = 0; m < depth; ++m) {
    SymmetricReport diag;
    FinitePartition w;
    w.carrier = t.level(m).size;
    w.block_count = k;
    w.assign.assign(static_cast<size_t>(w.carrier), 0);
    diag.forward.value = Rat(0);
    diag.forward.exact = true;
    diag.forward.witness = IndexedPartition(w);
    diag.forward.words = rep.words;
    diag.backward = diag.forward;
    diag.value = Rat(0);
    diag.exact = true;
    rep.pairs.push_back({m, m, diag});
  }
  for (size_t i = 0; i < offdiag.size(); ++i) {
    rep.pairs.push_back({offdiag[i].first, offdiag[i].second, syms[i]});
  }
  std::sort(rep.pairs.begin(), rep.pairs.end(), [](const auto& x, const auto& y) {
    return std::pair(x.from, x.to) < std::pair(y.from, y.to);
  });

  // factor direction: the level-m identity partition approximated inside
  // level n, warm-started with its own pullback
  auto shared = std::make_shared<Tower>(t);
  for (int m = 0; m < depth; ++m) {
    for (int n = m; n < depth; ++n) {
      FinitePartition level_m = FinitePartition::singletons(t.level(m).size);
      FinitePartition witness = pullback_partition(t, m, n, level_m);
      SearchStrategy fs = s;
      fs.mode = SearchStrategy::Mode::LocalSearch;
      fs.local.seed = Rng::derive(s.local.seed, 0xFA000000ULL + (static_cast<uint64_t>(m) << 12) +
                                                    static_cast<uint64_t>(n));
      fs.local.restarts = 0; // the pullback witness already attains zero
      fs.local.max_moves = 0;
      fs.warm_starts = {witness.assign};
      FactorZeroEntry e;
      e.from = m;
      e.to = n;
      e.report = d_inf(MeasureModel::tower_level(shared, m), t.level(n), rep.words,
                       IndexedPartition(level_m), fs);
      rep.factor_entries.push_back(std::move(e));
    }
  }

  for (int m = 0; m + 1 < depth; ++m) {
    Rat best(0);
    bool any = false;
    for (const auto& p : rep.pairs) {
      if (p.from == m) {
        Rat v = p.sym.value;
        if (!any || v > best) best = v;
        any = true;
      }
    }
    if (any) rep.row_max.push_back(best);
  }
  if (!rep.row_max.empty()) {
    rep.trend = rep.row_max.back() - rep.row_max.front();
  }
  return rep;
}

} // namespace soficlab
