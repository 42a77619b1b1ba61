#include "soficlab/homcount.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "soficlab/errors.hpp"
#include "soficlab/parallel.hpp"
#include "soficlab/rng.hpp"

namespace soficlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

long long lcm_checked(long long a, long long b) {
  long long g = std::gcd(a, b);
  __int128 l = static_cast<__int128>(a / g) * b;
  if (l > 2'000'000'000'000'000LL) {
    throw std::overflow_error("hom counting: measure denominators too large");
  }
  return static_cast<long long>(l);
}

/// Precomputed source/target structure for one (a, alpha, F, b) tuple.
/// Atom indices are mixed-radix over the word positions, first word most
/// significant, matching the canonical generated-partition block order.
struct HomContext {
  int k = 1;
  size_t word_count = 0;
  int atoms = 1;
  int n = 0; // target carrier
  std::vector<Rat> atom_measure;
  long long scale = 1;                  // lcm of measure denominators and n
  long long point_weight = 1;           // scale / n
  std::vector<long long> atom_scaled;   // mu_a(atom) * scale
  std::vector<std::vector<int>> digits; // digits[w][atom]
  size_t e_pos = 0;
  std::vector<char> skip_word;            // identity positions
  std::vector<std::vector<int>> perm_inv; // per word, on b
  // xi structure (count_homs only)
  int xi_blocks = 0;
  std::vector<int> zeta; // atom -> xi block, -1 for empty atoms
  bool restriction_injective = false;
};

int pow_int(int base, size_t exp) {
  long long v = 1;
  for (size_t i = 0; i < exp; ++i) {
    v *= base;
    if (v > (1LL << 40)) throw BudgetError("generated partition has too many atoms");
  }
  return static_cast<int>(v);
}

HomContext make_context(const MeasureModel& a, const IndexedPartition& alpha,
                        const WordList& words_norm, const FiniteAction& b) {
  HomContext ctx;
  ctx.k = alpha.block_count();
  ctx.word_count = words_norm.size();
  ctx.atoms = pow_int(ctx.k, ctx.word_count);
  ctx.n = b.size;

  IndexedPartition alpha_f = generated_partition(a, words_norm, alpha);
  if (alpha_f.block_count() != ctx.atoms) {
    throw InputError("generated partition has unexpected block count");
  }
  ctx.atom_measure = block_measures(a, alpha_f);

  long long d = b.size;
  for (const Rat& r : ctx.atom_measure) d = lcm_checked(d, r.den());
  ctx.scale = d;
  ctx.point_weight = d / b.size;
  ctx.atom_scaled.resize(ctx.atom_measure.size());
  for (size_t t = 0; t < ctx.atom_measure.size(); ++t) {
    const Rat& r = ctx.atom_measure[t];
    ctx.atom_scaled[t] = r.num() * (d / r.den());
  }

  ctx.digits.assign(ctx.word_count, std::vector<int>(static_cast<size_t>(ctx.atoms)));
  for (int t = 0; t < ctx.atoms; ++t) {
    int rest = t;
    for (size_t w = ctx.word_count; w-- > 0;) {
      ctx.digits[w][static_cast<size_t>(t)] = rest % ctx.k;
      rest /= ctx.k;
    }
  }

  ctx.skip_word.resize(ctx.word_count);
  bool found_e = false;
  for (size_t w = 0; w < ctx.word_count; ++w) {
    ctx.skip_word[w] = words_norm[w].empty() ? 1 : 0;
    if (ctx.skip_word[w] && !found_e) {
      ctx.e_pos = w;
      found_e = true;
    }
  }
  if (!found_e) throw InputError("normalized word list lost the identity");

  ctx.perm_inv.reserve(ctx.word_count);
  for (const auto& w : words_norm) {
    ctx.perm_inv.push_back(invert_permutation(evaluate(b, w)));
  }
  return ctx;
}

/// Attaches the atom -> xi-block map. Consistency doubles as the check
/// that the generated partition refines xi.
void attach_xi(HomContext& ctx, const MeasureModel& a, const IndexedPartition& xi,
               const IndexedPartition& alpha, const WordList& words_norm) {
  ctx.xi_blocks = xi.block_count();
  ctx.zeta.assign(static_cast<size_t>(ctx.atoms), -1);
  IndexedPartition alpha_f = generated_partition(a, words_norm, alpha);
  if (!a.is_symbolic()) {
    const auto& af = alpha_f.finite();
    const auto& xf = xi.finite();
    for (int x = 0; x < af.carrier; ++x) {
      int t = af.assign[static_cast<size_t>(x)];
      int z = xf.assign[static_cast<size_t>(x)];
      int& slot = ctx.zeta[static_cast<size_t>(t)];
      if (slot == -1) {
        slot = z;
      } else if (slot != z) {
        throw InputError("alpha does not refine xi");
      }
    }
  } else {
    const auto& af = alpha_f.cylinder();
    const auto& xc = xi.cylinder();
    std::vector<GroupWord> coords = af.coords;
    for (const auto& w : xc.coords) {
      if (std::find(coords.begin(), coords.end(), w) == coords.end()) coords.push_back(w);
    }
    CylinderPartition ea = extend_cylinder(af, coords);
    CylinderPartition ex = extend_cylinder(xc, coords);
    for (size_t idx = 0; idx < ea.table.size(); ++idx) {
      int t = ea.table[idx];
      int z = ex.table[idx];
      int& slot = ctx.zeta[static_cast<size_t>(t)];
      if (slot == -1) {
        slot = z;
      } else if (slot != z) {
        throw InputError("alpha does not refine xi");
      }
    }
  }
  for (size_t t = 0; t < ctx.zeta.size(); ++t) {
    // a null atom never contributes to an induced image
    if (ctx.atom_measure[t].is_zero()) ctx.zeta[t] = -1;
  }
  std::vector<int> per_block(static_cast<size_t>(ctx.xi_blocks), 0);
  bool has_null = false;
  for (size_t t = 0; t < ctx.zeta.size(); ++t) {
    if (ctx.zeta[t] < 0) {
      has_null = true;
    } else {
      ++per_block[static_cast<size_t>(ctx.zeta[t])];
    }
  }
  ctx.restriction_injective = !has_null;
  for (int c : per_block) {
    if (c > 1) ctx.restriction_injective = false;
  }
}

/// Both deficits of one candidate in one pass: the worst equivariance
/// symmetric-difference count over (alpha block, word), and the scaled
/// measure-deficit sum over atoms.
struct CandidateStats {
  long long worst_sym_diff = 0; // in points of b
  long long measure_gap = 0;    // scaled by ctx.scale
};

CandidateStats eval_candidate(const HomContext& ctx, const std::vector<int>& assign,
                              std::vector<long long>& counts,
                              std::vector<long long>& mismatch) {
  CandidateStats st;
  counts.assign(static_cast<size_t>(ctx.atoms), 0);
  for (int x = 0; x < ctx.n; ++x) ++counts[static_cast<size_t>(assign[static_cast<size_t>(x)])];
  for (int t = 0; t < ctx.atoms; ++t) {
    st.measure_gap += std::llabs(counts[static_cast<size_t>(t)] * ctx.point_weight -
                                 ctx.atom_scaled[static_cast<size_t>(t)]);
  }
  const auto& de = ctx.digits[ctx.e_pos];
  for (size_t w = 0; w < ctx.word_count; ++w) {
    if (ctx.skip_word[w]) continue;
    mismatch.assign(static_cast<size_t>(2 * ctx.k), 0);
    const auto& dw = ctx.digits[w];
    const auto& pinv = ctx.perm_inv[w];
    for (int x = 0; x < ctx.n; ++x) {
      int lhs = de[static_cast<size_t>(assign[static_cast<size_t>(pinv[static_cast<size_t>(x)])])];
      int rhs = dw[static_cast<size_t>(assign[static_cast<size_t>(x)])];
      if (lhs != rhs) {
        ++mismatch[static_cast<size_t>(lhs)];
        ++mismatch[static_cast<size_t>(ctx.k + rhs)];
      }
    }
    for (int i = 0; i < ctx.k; ++i) {
      long long diff = mismatch[static_cast<size_t>(i)] + mismatch[static_cast<size_t>(ctx.k + i)];
      st.worst_sym_diff = std::max(st.worst_sym_diff, diff);
    }
  }
  return st;
}

bool stats_pass(const HomContext& ctx, const CandidateStats& st, const Rat& delta) {
  __int128 lhs1 = static_cast<__int128>(st.worst_sym_diff) * delta.den();
  __int128 rhs1 = static_cast<__int128>(delta.num()) * ctx.n;
  if (lhs1 >= rhs1) return false;
  __int128 lhs2 = static_cast<__int128>(st.measure_gap) * delta.den();
  __int128 rhs2 = static_cast<__int128>(delta.num()) * ctx.scale;
  return lhs2 < rhs2;
}

std::vector<int> restriction_key(const HomContext& ctx, const std::vector<int>& assign) {
  std::vector<int> key(static_cast<size_t>(ctx.n));
  for (int x = 0; x < ctx.n; ++x) {
    key[static_cast<size_t>(x)] = ctx.zeta[static_cast<size_t>(assign[static_cast<size_t>(x)])];
  }
  return key;
}

double safe_log(double count) { return count > 0 ? std::log(count) : kNegInf; }

std::vector<HomCountReport> count_exact_multi(const HomContext& ctx,
                                              const std::vector<Rat>& deltas,
                                              long long budget) {
  long long space = 1;
  for (int x = 0; x < ctx.n; ++x) {
    if (space > budget / ctx.atoms) {
      throw BudgetError("exact hom counting: " + std::to_string(ctx.atoms) + "^" +
                        std::to_string(ctx.n) + " assignments exceed budget " +
                        std::to_string(budget));
    }
    space *= ctx.atoms;
  }

  Rat delta_max(0);
  for (const Rat& d : deltas) delta_max = std::max(delta_max, d);

  std::vector<long long> totals(deltas.size(), 0);
  std::vector<std::set<std::vector<int>>> restrictions(deltas.size());

  std::vector<int> assign(static_cast<size_t>(ctx.n), 0);
  std::vector<long long> fill(static_cast<size_t>(ctx.atoms), 0);
  std::vector<long long> counts, mismatch;

  // scaled overfill; once >= delta_max no completion can pass (atom
  // measures under phi only grow along the prefix)
  long long overfill = 0;
  auto overfill_term = [&](int t) {
    return std::max<long long>(0, fill[static_cast<size_t>(t)] * ctx.point_weight -
                                      ctx.atom_scaled[static_cast<size_t>(t)]);
  };
  auto prune = [&]() {
    __int128 lhs = static_cast<__int128>(overfill) * delta_max.den();
    __int128 rhs = static_cast<__int128>(delta_max.num()) * ctx.scale;
    return lhs >= rhs;
  };

  auto descend = [&](auto&& self, int pos) -> void {
    if (pos == ctx.n) {
      CandidateStats st = eval_candidate(ctx, assign, counts, mismatch);
      std::vector<int> key;
      for (size_t di = 0; di < deltas.size(); ++di) {
        if (stats_pass(ctx, st, deltas[di])) {
          ++totals[di];
          if (key.empty()) key = restriction_key(ctx, assign);
          restrictions[di].insert(key);
        }
      }
      return;
    }
    for (int t2 = 0; t2 < ctx.atoms; ++t2) {
      assign[static_cast<size_t>(pos)] = t2;
      long long before = overfill_term(t2);
      ++fill[static_cast<size_t>(t2)];
      overfill += overfill_term(t2) - before;
      if (!prune()) self(self, pos + 1);
      long long after = overfill_term(t2);
      --fill[static_cast<size_t>(t2)];
      overfill += overfill_term(t2) - after;
    }
  };
  descend(descend, 0);

  std::vector<HomCountReport> out(deltas.size());
  for (size_t di = 0; di < deltas.size(); ++di) {
    HomCountReport& r = out[di];
    r.exact = true;
    r.total_valid = static_cast<double>(totals[di]);
    r.restricted_count = static_cast<double>(restrictions[di].size());
    r.log_total = safe_log(r.total_valid);
    r.log_restricted = safe_log(r.restricted_count);
    r.atom_count = ctx.atoms;
  }
  return out;
}

std::vector<HomCountReport> count_mc_multi(const HomContext& ctx,
                                           const std::vector<Rat>& deltas,
                                           uint64_t samples, uint64_t seed) {
  std::vector<long long> valid(deltas.size(), 0);
  std::vector<std::set<std::vector<int>>> restrictions(deltas.size());
  std::vector<int> assign(static_cast<size_t>(ctx.n));
  std::vector<long long> counts, mismatch;

  for (uint64_t s = 0; s < samples; ++s) {
    Rng rng(Rng::derive(seed, s)); // per-sample stream, order-free
    for (auto& c : assign) c = static_cast<int>(rng.below(static_cast<uint64_t>(ctx.atoms)));
    CandidateStats st = eval_candidate(ctx, assign, counts, mismatch);
    std::vector<int> key;
    for (size_t di = 0; di < deltas.size(); ++di) {
      if (stats_pass(ctx, st, deltas[di])) {
        ++valid[di];
        if (!ctx.restriction_injective) {
          if (key.empty()) key = restriction_key(ctx, assign);
          restrictions[di].insert(key);
        }
      }
    }
  }

  double log_space = ctx.n * std::log(static_cast<double>(ctx.atoms));
  std::vector<HomCountReport> out(deltas.size());
  for (size_t di = 0; di < deltas.size(); ++di) {
    HomCountReport& r = out[di];
    r.exact = false;
    r.samples = samples;
    r.seed = seed;
    r.atom_count = ctx.atoms;
    double p = samples ? static_cast<double>(valid[di]) / static_cast<double>(samples) : 0.0;
    r.log_total = valid[di] ? std::log(p) + log_space : kNegInf;
    r.total_valid = valid[di] ? std::exp(r.log_total) : 0.0;
    r.has_ci95 = true;
    r.ci95 = 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(samples)) *
             std::exp(log_space);
    if (ctx.restriction_injective) {
      // xi atoms match source atoms one to one, so restriction loses
      // nothing and the total estimate is the restricted estimate
      r.restricted_count = r.total_valid;
      r.log_restricted = r.log_total;
      r.restricted_lower_bound_biased = false;
    } else {
      r.restricted_count = static_cast<double>(restrictions[di].size());
      r.log_restricted = safe_log(r.restricted_count);
      r.restricted_lower_bound_biased = true;
    }
  }
  return out;
}

std::vector<HomCountReport> count_multi(const MeasureModel& a, const IndexedPartition& xi,
                                        const IndexedPartition& alpha, const WordList& words,
                                        const std::vector<Rat>& deltas, const FiniteAction& b,
                                        const CountMethod& method) {
  for (const Rat& d : deltas) {
    if (!(d > Rat(0))) throw InputError("hom counting needs delta > 0");
  }
  if (!refines(alpha, xi)) throw InputError("alpha must refine xi");
  b.validate();
  WordList f = normalize_word_list(words);
  HomContext ctx = make_context(a, alpha, f, b);
  attach_xi(ctx, a, xi, alpha, f);
  if (method.kind == CountMethod::Kind::Exact) {
    return count_exact_multi(ctx, deltas, method.budget);
  }
  return count_mc_multi(ctx, deltas, method.samples, method.seed);
}

} // namespace

CountMethod CountMethod::exact(long long budget) {
  CountMethod m;
  m.kind = Kind::Exact;
  m.budget = budget;
  return m;
}

CountMethod CountMethod::monte_carlo(uint64_t samples, uint64_t seed) {
  CountMethod m;
  m.kind = Kind::MonteCarlo;
  m.samples = samples;
  m.seed = seed;
  return m;
}

bool is_hom(const MeasureModel& a, const IndexedPartition& alpha, const WordList& words,
            const Rat& delta, const FiniteAction& b, const HomAssignment& phi) {
  if (!(delta > Rat(0))) throw InputError("is_hom needs delta > 0");
  b.validate();
  WordList f = normalize_word_list(words);
  HomContext ctx = make_context(a, alpha, f, b);
  const FinitePartition& tp = phi.target_partition;
  tp.validate();
  if (tp.carrier != b.size) throw InputError("hom target partition has wrong carrier");
  if (tp.block_count != ctx.atoms) {
    throw InputError("hom source does not match the generated partition (expected " +
                     std::to_string(ctx.atoms) + " atoms)");
  }
  std::vector<long long> counts, mismatch;
  CandidateStats st = eval_candidate(ctx, tp.assign, counts, mismatch);
  return stats_pass(ctx, st, delta);
}

HomCountReport count_homs(const MeasureModel& a, const IndexedPartition& xi,
                          const IndexedPartition& alpha, const WordList& words,
                          const Rat& delta, const FiniteAction& b, const CountMethod& method) {
  return count_multi(a, xi, alpha, words, {delta}, b, method).front();
}

double entropy_point(const MeasureModel& a, const IndexedPartition& xi,
                     const IndexedPartition& alpha, const WordList& words, const Rat& delta,
                     const FiniteAction& b, const CountMethod& method) {
  HomCountReport r = count_homs(a, xi, alpha, words, delta, b, method);
  return r.log_restricted / static_cast<double>(b.size);
}

EntropyGrid entropy_grid(const MeasureModel& a, const IndexedPartition& xi,
                         const std::vector<IndexedPartition>& alphas,
                         const std::vector<WordList>& words_ladder,
                         const std::vector<Rat>& deltas,
                         const std::vector<FiniteAction>& sigma_prefix,
                         const CountMethod& method, int threads) {
  if (alphas.empty() || words_ladder.empty() || deltas.empty() || sigma_prefix.empty()) {
    throw InputError("entropy grid needs nonempty ladders and a stage prefix");
  }
  for (const auto& alpha : alphas) {
    if (!refines(alpha, xi)) throw InputError("every ladder alpha must refine xi");
  }

  EntropyGrid grid;
  grid.alpha_count = static_cast<int>(alphas.size());
  grid.words_count = static_cast<int>(words_ladder.size());
  grid.delta_count = static_cast<int>(deltas.size());
  grid.stage_count = static_cast<int>(sigma_prefix.size());

  int jobs = grid.alpha_count * grid.words_count * grid.stage_count;
  std::vector<std::vector<HomCountReport>> results(static_cast<size_t>(jobs));
  parallel_for(jobs, threads, [&](int job) {
    int ai = job / (grid.words_count * grid.stage_count);
    int rest = job % (grid.words_count * grid.stage_count);
    int fi = rest / grid.stage_count;
    int si = rest % grid.stage_count;
    CountMethod m = method;
    // delta shares the sample stream so counts stay monotone in delta
    uint64_t label = (static_cast<uint64_t>(ai) << 40) | (static_cast<uint64_t>(fi) << 20) |
                     static_cast<uint64_t>(si);
    m.seed = Rng::derive(method.seed, label);
    results[static_cast<size_t>(job)] =
        count_multi(a, xi, alphas[static_cast<size_t>(ai)],
                    words_ladder[static_cast<size_t>(fi)], deltas,
                    sigma_prefix[static_cast<size_t>(si)], m);
  });

  for (int ai = 0; ai < grid.alpha_count; ++ai) {
    for (int fi = 0; fi < grid.words_count; ++fi) {
      for (int si = 0; si < grid.stage_count; ++si) {
        int job = (ai * grid.words_count + fi) * grid.stage_count + si;
        for (int di = 0; di < grid.delta_count; ++di) {
          EntropyCell cell;
          cell.alpha_idx = ai;
          cell.words_idx = fi;
          cell.delta_idx = di;
          cell.stage_idx = si;
          cell.count = results[static_cast<size_t>(job)][static_cast<size_t>(di)];
          cell.value = cell.count.log_restricted /
                       static_cast<double>(sigma_prefix[static_cast<size_t>(si)].size);
          grid.cells.push_back(std::move(cell));
        }
      }
    }
  }

  auto cell_value = [&](int ai, int fi, int di, int si) {
    size_t idx = ((static_cast<size_t>(ai) * grid.words_count + fi) * grid.stage_count + si) *
                     grid.delta_count +
                 static_cast<size_t>(di);
    return grid.cells[idx].value;
  };

  for (int ai = 0; ai < grid.alpha_count; ++ai) {
    for (int fi = 0; fi < grid.words_count; ++fi) {
      for (int di = 0; di < grid.delta_count; ++di) {
        EntropyWindow w;
        w.alpha_idx = ai;
        w.words_idx = fi;
        w.delta_idx = di;
        w.lo = cell_value(ai, fi, di, 0);
        w.hi = w.lo;
        for (int si = 1; si < grid.stage_count; ++si) {
          double v = cell_value(ai, fi, di, si);
          w.lo = std::min(w.lo, v);
          w.hi = std::max(w.hi, v);
        }
        grid.windows.push_back(w);
      }
    }
  }

  auto window_at = [&](int ai, int fi, int di) -> const EntropyWindow& {
    return grid.windows[(static_cast<size_t>(ai) * grid.words_count + fi) * grid.delta_count +
                        static_cast<size_t>(di)];
  };

  grid.per_alpha_words.resize(static_cast<size_t>(grid.alpha_count) * grid.words_count);
  for (int ai = 0; ai < grid.alpha_count; ++ai) {
    for (int fi = 0; fi < grid.words_count; ++fi) {
      EntropyBracket b{window_at(ai, fi, 0).lo, window_at(ai, fi, 0).hi};
      for (int di = 1; di < grid.delta_count; ++di) {
        b.lo = std::min(b.lo, window_at(ai, fi, di).lo);
        b.hi = std::min(b.hi, window_at(ai, fi, di).hi);
      }
      grid.per_alpha_words[static_cast<size_t>(ai) * grid.words_count + fi] = b;
    }
  }
  grid.per_alpha.resize(static_cast<size_t>(grid.alpha_count));
  for (int ai = 0; ai < grid.alpha_count; ++ai) {
    EntropyBracket b = grid.per_alpha_words[static_cast<size_t>(ai) * grid.words_count];
    for (int fi = 1; fi < grid.words_count; ++fi) {
      const auto& w = grid.per_alpha_words[static_cast<size_t>(ai) * grid.words_count + fi];
      b.lo = std::min(b.lo, w.lo);
      b.hi = std::min(b.hi, w.hi);
    }
    grid.per_alpha[static_cast<size_t>(ai)] = b;
  }
  grid.xi_bracket = grid.per_alpha.front();
  for (size_t ai = 1; ai < grid.per_alpha.size(); ++ai) {
    grid.xi_bracket.lo = std::min(grid.xi_bracket.lo, grid.per_alpha[ai].lo);
    grid.xi_bracket.hi = std::min(grid.xi_bracket.hi, grid.per_alpha[ai].hi);
  }
  return grid;
}

int genprof_cutoff(double epsilon) {
  if (!(epsilon > 0)) throw InputError("genprof needs epsilon > 0");
  double threshold = std::min(epsilon, epsilon * epsilon);
  for (int n = 2; n <= 200; ++n) {
    double bound = (4.0 * n + 6.0) * std::ldexp(1.0, -n); // 2^(1-n) + 4(n+1)/2^n
    if (bound < threshold) return n;
  }
  throw InfeasibleError("genprof cutoff search exceeded level 200");
}

GenprofResult genprof_partition(const Tower& t, double epsilon, int depth) {
  if (depth < 1 || depth > t.depth()) throw InputError("genprof depth out of range");
  if (t.level(0).size < 2) throw InputError("genprof needs index >= 2 at every tower step");
  // ratio >= 2 between consecutive levels holds by tower construction
  int cutoff = genprof_cutoff(epsilon);
  if (cutoff >= depth) {
    throw InfeasibleError("tower too shallow for epsilon: minimal cutoff level is " +
                          std::to_string(cutoff) + ", need depth > " + std::to_string(cutoff));
  }

  const FiniteAction& carrier = t.level(depth - 1);
  GenprofResult res;
  res.cutoff = cutoff;
  res.partition.carrier = carrier.size;
  res.partition.block_count = depth - cutoff + 1; // block 0 plus one fiber per level
  res.partition.assign.assign(static_cast<size_t>(carrier.size), 0);

  // level n runs over quotients of size >= 2^n; tower index n-1
  for (int n = cutoff; n <= depth - 1; ++n) {
    int level_index = n - 1;
    int level_size = t.level(level_index).size;
    std::vector<int> proj(static_cast<size_t>(carrier.size));
    for (int x = 0; x < carrier.size; ++x) proj[static_cast<size_t>(x)] = t.project(depth - 1, level_index, x);
    int chosen = -1;
    for (int root = 0; root < level_size && chosen < 0; ++root) {
      bool free_fiber = true;
      for (int x = 0; x < carrier.size && free_fiber; ++x) {
        if (proj[static_cast<size_t>(x)] == root &&
            res.partition.assign[static_cast<size_t>(x)] != 0) {
          free_fiber = false;
        }
      }
      if (free_fiber) chosen = root;
    }
    if (chosen < 0) {
      throw InfeasibleError("no disjoint fiber available at level " + std::to_string(n));
    }
    res.fiber_roots.push_back(chosen);
    int block = 1 + (n - cutoff);
    for (int x = 0; x < carrier.size; ++x) {
      if (proj[static_cast<size_t>(x)] == chosen) {
        res.partition.assign[static_cast<size_t>(x)] = block;
      }
    }
  }

  std::vector<Rat> measures;
  for (long long c : res.partition.block_sizes()) measures.push_back(Rat(c, carrier.size));
  res.entropy = shannon_entropy(measures);
  return res;
}

} // namespace soficlab
