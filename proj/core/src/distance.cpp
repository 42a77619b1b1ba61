#include "soficlab/distance.hpp"

#include <algorithm>
#include <numeric>

#include "soficlab/errors.hpp"
#include "soficlab/parallel.hpp"
#include "soficlab/rng.hpp"

namespace soficlab {

namespace {

constexpr long long kScaleLimit = 2'000'000'000'000'000LL; // 2e15

long long lcm_checked(long long a, long long b) {
  long long g = std::gcd(a, b);
  __int128 l = static_cast<__int128>(a / g) * b;
  if (l > kScaleLimit) {
    throw std::overflow_error("statistics denominators too large for exact optimization");
  }
  return static_cast<long long>(l);
}

/// Candidate counting for exhaustive enumerations; throws once the count
/// exceeds the budget.
long long pow_within_budget(int base, int exp, long long budget, const char* what) {
  long long v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > budget / base) {
      throw BudgetError(std::string(what) + ": " + std::to_string(base) + "^" +
                        std::to_string(exp) + " candidates exceed budget " +
                        std::to_string(budget));
    }
    v *= base;
  }
  return v;
}

/// Inner minimization instance: integer-scaled target statistics plus the
/// word permutations of the target action. The L1 objective times `scale`
/// is an integer, so search decisions compare exactly.
struct InnerProblem {
  int k = 1;
  int n = 0;
  size_t word_count = 0;
  long long scale = 1;    // common denominator of the scaled objective
  long long scale_b = 1;  // scale / n, weight of one counted point pair
  std::vector<long long> target; // [w*k*k + i*k + j], numerators over `scale`
  std::vector<std::vector<int>> perm;     // word permutations on b
  std::vector<std::vector<int>> perm_inv;

  size_t cell(size_t w, int i, int j) const {
    return w * static_cast<size_t>(k) * k + static_cast<size_t>(i) * k +
           static_cast<size_t>(j);
  }
};

InnerProblem make_inner_problem(const StatsVector& target_stats, const FiniteAction& b) {
  InnerProblem ip;
  ip.k = target_stats.k;
  ip.n = b.size;
  ip.word_count = target_stats.words.size();
  long long l = b.size;
  for (const Rat& r : target_stats.entries) l = lcm_checked(l, r.den());
  ip.scale = l;
  ip.scale_b = l / b.size;
  ip.target.resize(target_stats.entries.size());
  for (size_t i = 0; i < target_stats.entries.size(); ++i) {
    const Rat& r = target_stats.entries[i];
    ip.target[i] = r.num() * (l / r.den());
  }
  ip.perm.reserve(ip.word_count);
  ip.perm_inv.reserve(ip.word_count);
  for (const auto& w : target_stats.words) {
    ip.perm.push_back(evaluate(b, w));
    ip.perm_inv.push_back(invert_permutation(ip.perm.back()));
  }
  return ip;
}

/// A candidate assignment with per-word pair counts and the scaled L1
/// objective, maintained incrementally under single-point moves.
struct InnerState {
  const InnerProblem* ip = nullptr;
  std::vector<int> assign;
  std::vector<long long> counts; // same layout as ip->target
  long long objective = 0;

  void init(const InnerProblem& problem, std::vector<int> a) {
    ip = &problem;
    assign = std::move(a);
    counts.assign(ip->target.size(), 0);
    for (size_t w = 0; w < ip->word_count; ++w) {
      const auto& pinv = ip->perm_inv[w];
      for (int x = 0; x < ip->n; ++x) {
        int i = assign[static_cast<size_t>(x)];
        int j = assign[static_cast<size_t>(pinv[static_cast<size_t>(x)])];
        ++counts[ip->cell(w, i, j)];
      }
    }
    objective = 0;
    for (size_t c = 0; c < counts.size(); ++c) {
      objective += std::llabs(counts[c] * ip->scale_b - ip->target[c]);
    }
  }

  void touch(size_t c, long long delta) {
    objective -= std::llabs(counts[c] * ip->scale_b - ip->target[c]);
    counts[c] += delta;
    objective += std::llabs(counts[c] * ip->scale_b - ip->target[c]);
  }

  /// Moves point x to block c. Point x participates in one pair per word
  /// as the i-side (partner perm_inv(x)) and one as the j-side (partner
  /// perm(x)); both collapse to a single diagonal pair when x is fixed.
  void reassign(int x, int c) {
    int old = assign[static_cast<size_t>(x)];
    if (old == c) return;
    for (size_t w = 0; w < ip->word_count; ++w) {
      int q = ip->perm_inv[w][static_cast<size_t>(x)];
      int y = ip->perm[w][static_cast<size_t>(x)];
      if (q == x) {
        touch(ip->cell(w, old, old), -1);
      } else {
        touch(ip->cell(w, old, assign[static_cast<size_t>(q)]), -1);
        touch(ip->cell(w, assign[static_cast<size_t>(y)], old), -1);
      }
    }
    assign[static_cast<size_t>(x)] = c;
    for (size_t w = 0; w < ip->word_count; ++w) {
      int q = ip->perm_inv[w][static_cast<size_t>(x)];
      int y = ip->perm[w][static_cast<size_t>(x)];
      if (q == x) {
        touch(ip->cell(w, c, c), +1);
      } else {
        touch(ip->cell(w, c, assign[static_cast<size_t>(q)]), +1);
        touch(ip->cell(w, assign[static_cast<size_t>(y)], c), +1);
      }
    }
  }
};

long long evaluate_assignment(const InnerProblem& ip, const std::vector<int>& assign,
                              std::vector<long long>& scratch) {
  scratch.assign(ip.target.size(), 0);
  for (size_t w = 0; w < ip.word_count; ++w) {
    const auto& pinv = ip.perm_inv[w];
    for (int x = 0; x < ip.n; ++x) {
      int i = assign[static_cast<size_t>(x)];
      int j = assign[static_cast<size_t>(pinv[static_cast<size_t>(x)])];
      ++scratch[ip.cell(w, i, j)];
    }
  }
  long long obj = 0;
  for (size_t c = 0; c < scratch.size(); ++c) {
    obj += std::llabs(scratch[c] * ip.scale_b - ip.target[c]);
  }
  return obj;
}

struct InnerResult {
  long long objective = 0;
  std::vector<int> assign;
  long long evaluations = 0;
  bool exact = false;
};

bool better_candidate(long long obj, const std::vector<int>& assign, const InnerResult& best) {
  if (obj != best.objective) return obj < best.objective;
  return assign < best.assign;
}

InnerResult inner_exhaustive(const InnerProblem& ip, long long budget) {
  pow_within_budget(ip.k, ip.n, budget, "exhaustive inner search");
  InnerResult best;
  std::vector<int> assign(static_cast<size_t>(ip.n), 0);
  std::vector<long long> scratch;
  bool first = true;
  for (;;) {
    long long obj = evaluate_assignment(ip, assign, scratch);
    ++best.evaluations;
    if (first || obj < best.objective) { // lex enumeration: first strict win is lex-smallest
      best.objective = obj;
      best.assign = assign;
      first = false;
      if (obj == 0) break;
    }
    int pos = ip.n - 1;
    while (pos >= 0 && assign[static_cast<size_t>(pos)] == ip.k - 1) {
      assign[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++assign[static_cast<size_t>(pos)];
  }
  best.exact = true;
  return best;
}

/// Greedy fill matching the target block measures read off the first
/// word's diagonal (the word list always starts with a word whose
/// diagonal carries the block measures once normalized).
std::vector<int> measure_matching_fill(const InnerProblem& ip, size_t e_index) {
  std::vector<long long> want(static_cast<size_t>(ip.k));
  for (int i = 0; i < ip.k; ++i) {
    want[static_cast<size_t>(i)] = ip.target[ip.cell(e_index, i, i)];
  }
  std::vector<long long> have(static_cast<size_t>(ip.k), 0);
  std::vector<int> assign(static_cast<size_t>(ip.n), 0);
  for (int x = 0; x < ip.n; ++x) {
    int pick = 0;
    long long best_deficit = LLONG_MIN;
    for (int i = 0; i < ip.k; ++i) {
      long long deficit = want[static_cast<size_t>(i)] - have[static_cast<size_t>(i)] * ip.scale_b;
      if (deficit > best_deficit) {
        best_deficit = deficit;
        pick = i;
      }
    }
    assign[static_cast<size_t>(x)] = pick;
    ++have[static_cast<size_t>(pick)];
  }
  return assign;
}

void greedy_descent(InnerState& st, int max_moves, long long& evaluations) {
  int moves = 0;
  while (moves < max_moves && st.objective > 0) {
    long long best_delta = 0;
    int best_x = -1, best_c = -1;
    long long base = st.objective;
    for (int x = 0; x < st.ip->n; ++x) {
      int old = st.assign[static_cast<size_t>(x)];
      for (int c = 0; c < st.ip->k; ++c) {
        if (c == old) continue;
        st.reassign(x, c);
        long long delta = st.objective - base;
        ++evaluations;
        st.reassign(x, old);
        if (delta < best_delta) {
          best_delta = delta;
          best_x = x;
          best_c = c;
        }
      }
    }
    if (best_x >= 0) {
      st.reassign(best_x, best_c);
      ++moves;
      continue;
    }
    // no single move helps; try pair swaps
    bool swapped = false;
    for (int x = 0; x < st.ip->n && !swapped; ++x) {
      for (int y = x + 1; y < st.ip->n && !swapped; ++y) {
        int bx = st.assign[static_cast<size_t>(x)];
        int by = st.assign[static_cast<size_t>(y)];
        if (bx == by) continue;
        st.reassign(x, by);
        st.reassign(y, bx);
        ++evaluations;
        if (st.objective < base) {
          swapped = true;
          ++moves;
        } else {
          st.reassign(y, by);
          st.reassign(x, bx);
        }
      }
    }
    if (!swapped) break;
  }
}

InnerResult inner_local_search(const InnerProblem& ip, const LocalSearchParams& params,
                               const std::vector<std::vector<int>>& warm_starts,
                               int threads) {
  std::vector<std::vector<int>> starts;
  for (const auto& w : warm_starts) {
    if (static_cast<int>(w.size()) != ip.n) {
      throw InputError("warm start assignment has wrong carrier size");
    }
    for (int c : w) {
      if (c < 0 || c >= ip.k) throw InputError("warm start block index out of range");
    }
    starts.push_back(w);
  }
  starts.push_back(measure_matching_fill(ip, 0));
  for (int r = 0; r < params.restarts; ++r) {
    Rng rng(Rng::derive(params.seed, static_cast<uint64_t>(r)));
    std::vector<int> a(static_cast<size_t>(ip.n));
    for (auto& c : a) c = static_cast<int>(rng.below(static_cast<uint64_t>(ip.k)));
    starts.push_back(std::move(a));
  }

  std::vector<InnerResult> results(starts.size());
  parallel_for(static_cast<int>(starts.size()), threads, [&](int idx) {
    InnerState st;
    st.init(ip, starts[static_cast<size_t>(idx)]);
    InnerResult r;
    r.evaluations = 1;
    greedy_descent(st, params.max_moves, r.evaluations);
    r.objective = st.objective;
    r.assign = st.assign;
    results[static_cast<size_t>(idx)] = std::move(r);
  });

  InnerResult best = results.front();
  long long evals = best.evaluations;
  for (size_t i = 1; i < results.size(); ++i) {
    evals += results[i].evaluations;
    if (better_candidate(results[i].objective, results[i].assign, best)) {
      long long keep = results[i].evaluations;
      best = results[i];
      best.evaluations = keep;
    }
  }
  best.evaluations = evals;
  best.exact = false;
  return best;
}

DistanceReport report_from_inner(const InnerProblem& ip, const InnerResult& r,
                                 const WordList& words) {
  DistanceReport rep;
  rep.value = Rat(r.objective, ip.scale);
  rep.exact = r.exact;
  FinitePartition w;
  w.carrier = ip.n;
  w.block_count = ip.k;
  w.assign = r.assign;
  rep.witness = IndexedPartition(std::move(w));
  rep.evaluations = r.evaluations;
  rep.words = words;
  return rep;
}

} // namespace

WordList normalize_word_list(const WordList& words) {
  if (words.empty()) throw InputError("word list must be nonempty");
  for (const auto& w : words) {
    if (w.empty()) return words;
  }
  WordList out;
  out.reserve(words.size() + 1);
  out.push_back(GroupWord());
  out.insert(out.end(), words.begin(), words.end());
  return out;
}

SearchStrategy SearchStrategy::exhaustive(long long budget) {
  SearchStrategy s;
  s.mode = Mode::Exhaustive;
  s.budget = budget;
  return s;
}

SearchStrategy SearchStrategy::local_search(int restarts, int max_moves, uint64_t seed) {
  SearchStrategy s;
  s.mode = Mode::LocalSearch;
  s.local = LocalSearchParams{restarts, max_moves, seed};
  return s;
}

DistanceReport d_inf(const MeasureModel& a, const FiniteAction& b, const WordList& words,
                     const IndexedPartition& alpha, const SearchStrategy& s) {
  b.validate();
  WordList f = normalize_word_list(words);
  StatsVector target = stats(a, f, alpha);
  InnerProblem ip = make_inner_problem(target, b);
  InnerResult r;
  if (s.mode == SearchStrategy::Mode::Exhaustive) {
    if (!s.warm_starts.empty()) {
      throw InputError("warm starts only apply to local search");
    }
    r = inner_exhaustive(ip, s.budget);
  } else {
    r = inner_local_search(ip, s.local, s.warm_starts, s.threads);
  }
  return report_from_inner(ip, r, f);
}

namespace {

StatsVector stats_for_assignment(const MeasureModel& a, const WordList& f,
                                 const std::vector<int>& assign, int k) {
  FinitePartition p;
  p.carrier = a.action().size;
  p.block_count = k;
  p.assign = assign;
  return stats(a, f, IndexedPartition(std::move(p)));
}

DistanceReport d_sup_exhaustive(const MeasureModel& a, const FiniteAction& b,
                                const WordList& f, int k, const SearchStrategy& s) {
  int na = a.action().size;
  long long outer = pow_within_budget(k, na, s.budget, "exhaustive outer search");
  long long inner = pow_within_budget(k, b.size, s.budget, "exhaustive inner search");
  if (outer > s.budget / inner) {
    throw BudgetError("exhaustive sup-inf: " + std::to_string(outer) + " * " +
                      std::to_string(inner) + " candidates exceed budget " +
                      std::to_string(s.budget));
  }

  std::vector<int> alpha(static_cast<size_t>(na), 0);
  bool first = true;
  DistanceReport best;
  long long total_evals = 0;
  for (;;) {
    StatsVector target = stats_for_assignment(a, f, alpha, k);
    InnerProblem ip = make_inner_problem(target, b);
    InnerResult r = inner_exhaustive(ip, s.budget);
    total_evals += r.evaluations;
    Rat value = Rat(r.objective, ip.scale);
    if (first || value > best.value) { // ties keep the earlier, lex-smaller alpha
      best.value = value;
      FinitePartition w;
      w.carrier = na;
      w.block_count = k;
      w.assign = alpha;
      best.witness = IndexedPartition(std::move(w));
      first = false;
    }
    int pos = na - 1;
    while (pos >= 0 && alpha[static_cast<size_t>(pos)] == k - 1) {
      alpha[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
    ++alpha[static_cast<size_t>(pos)];
  }
  best.exact = true;
  best.evaluations = total_evals;
  best.words = f;
  return best;
}

/// Inner policy for adversarial ascent: exact once the inner space is
/// small enough, otherwise descent warm-started from the incumbent.
InnerResult solve_inner_for_sup(const InnerProblem& ip, const SearchStrategy& s,
                                const std::vector<int>* warm, uint64_t probe_seed,
                                bool full_strength) {
  long long space = 1;
  bool small = true;
  for (int i = 0; i < ip.n && small; ++i) {
    space *= ip.k;
    if (space > std::min<long long>(s.budget, 4096)) small = false;
  }
  if (small) return inner_exhaustive(ip, s.budget);
  LocalSearchParams params = s.local;
  params.seed = probe_seed;
  if (!full_strength) {
    params.restarts = std::max(1, s.local.restarts / 8);
  }
  std::vector<std::vector<int>> warms;
  if (warm) warms.push_back(*warm);
  return inner_local_search(ip, params, warms, 1);
}

DistanceReport d_sup_local(const MeasureModel& a, const FiniteAction& b, const WordList& f,
                           int k, const SearchStrategy& s) {
  int na = a.action().size;
  int candidates = std::max(1, s.local.restarts / 4);

  struct OuterResult {
    Rat value;
    std::vector<int> alpha;
    std::vector<int> beta;
    long long evaluations = 0;
  };
  std::vector<OuterResult> results(static_cast<size_t>(candidates));

  parallel_for(candidates, s.threads, [&](int idx) {
    uint64_t seed = Rng::derive(s.local.seed, 0x500ULL + static_cast<uint64_t>(idx));
    Rng rng(seed);
    std::vector<int> alpha(static_cast<size_t>(na));
    if (idx == 0) {
      for (int x = 0; x < na; ++x) alpha[static_cast<size_t>(x)] = x % k;
    } else {
      for (auto& c : alpha) c = static_cast<int>(rng.below(static_cast<uint64_t>(k)));
    }
    OuterResult res;
    res.evaluations = 0;

    auto solve = [&](const std::vector<int>& cand, const std::vector<int>* warm,
                     bool full) {
      StatsVector target = stats_for_assignment(a, f, cand, k);
      InnerProblem ip = make_inner_problem(target, b);
      InnerResult r = solve_inner_for_sup(ip, s, warm, rng.next(), full);
      res.evaluations += r.evaluations;
      return std::make_pair(Rat(r.objective, ip.scale), r.assign);
    };

    auto [val, beta] = solve(alpha, nullptr, true);
    int moves = 0;
    bool improved = true;
    while (improved && moves < s.local.max_moves) {
      improved = false;
      for (int x = 0; x < na && !improved; ++x) {
        int old = alpha[static_cast<size_t>(x)];
        for (int c = 0; c < k && !improved; ++c) {
          if (c == old) continue;
          alpha[static_cast<size_t>(x)] = c;
          auto [pv, pb] = solve(alpha, &beta, false);
          if (pv > val) {
            val = pv;
            beta = pb;
            ++moves;
            improved = true;
          } else {
            alpha[static_cast<size_t>(x)] = old;
          }
        }
      }
    }
    res.value = val;
    res.alpha = alpha;
    res.beta = beta;
    results[static_cast<size_t>(idx)] = std::move(res);
  });

  // deterministic merge: max value, then lex-smallest alpha
  size_t pick = 0;
  long long evals = results[0].evaluations;
  for (size_t i = 1; i < results.size(); ++i) {
    evals += results[i].evaluations;
    if (results[i].value > results[pick].value ||
        (results[i].value == results[pick].value && results[i].alpha < results[pick].alpha)) {
      pick = i;
    }
  }

  // tighten the value at the chosen witness with the full inner strategy
  FinitePartition w;
  w.carrier = na;
  w.block_count = k;
  w.assign = results[pick].alpha;
  IndexedPartition alpha_witness(std::move(w));
  SearchStrategy inner = s;
  inner.warm_starts = {results[pick].beta};
  DistanceReport at_witness = d_inf(a, b, f, alpha_witness, inner);

  DistanceReport rep;
  rep.value = at_witness.value;
  rep.exact = false;
  rep.witness = alpha_witness;
  rep.evaluations = evals + at_witness.evaluations;
  rep.words = f;
  return rep;
}

} // namespace

DistanceReport d_sup(const MeasureModel& a, const FiniteAction& b, const WordList& words,
                     int k, const SearchStrategy& s) {
  if (k < 1) throw InputError("d_sup needs k >= 1");
  if (a.is_symbolic()) {
    throw InputError("the outer supremum needs a finite carrier on the left");
  }
  b.validate();
  WordList f = normalize_word_list(words);
  if (s.mode == SearchStrategy::Mode::Exhaustive) {
    return d_sup_exhaustive(a, b, f, k, s);
  }
  return d_sup_local(a, b, f, k, s);
}

SymmetricReport d_sym(const FiniteAction& a, const FiniteAction& b, const WordList& words,
                      int k, const SearchStrategy& s) {
  SymmetricReport rep;
  rep.forward = d_sup(MeasureModel::finite(a), b, words, k, s);
  rep.backward = d_sup(MeasureModel::finite(b), a, words, k, s);
  rep.value = rep.forward.value + rep.backward.value;
  rep.exact = rep.forward.exact && rep.backward.exact;
  return rep;
}

ContainmentReport containment_verdict(const MeasureModel& a, const FiniteAction& b,
                                      const WordList& words,
                                      const std::vector<IndexedPartition>& partitions,
                                      const SearchStrategy& s, const Rat& threshold) {
  ContainmentReport rep;
  rep.threshold = threshold;
  rep.all_below = true;
  for (const auto& p : partitions) {
    rep.reports.push_back(d_inf(a, b, words, p, s));
    if (rep.reports.back().value > threshold) rep.all_below = false;
  }
  return rep;
}

} // namespace soficlab
