#include <doctest.h>

#include <cmath>
#include <map>

#include "helpers.hpp"
#include "soficlab/errors.hpp"
#include "soficlab/homcount.hpp"

using namespace soficlab;
using testutil::make_partition;
using testutil::random_partition;
using testutil::random_word;

namespace {

MeasureModel fin(const FiniteAction& a) { return MeasureModel::finite(a); }

/// Pulls the generated partition over as the hom target: the identity
/// assignment when a == b.
HomAssignment identity_assignment(const MeasureModel& a, const IndexedPartition& alpha,
                                  const WordList& words) {
  IndexedPartition alpha_f = generated_partition(a, normalize_word_list(words), alpha);
  return HomAssignment{alpha_f.finite()};
}

} // namespace

TEST_SUITE("homcount") {

TEST_CASE("the identity assignment is a hom at every delta") {
  Rng rng(321);
  for (int it = 0; it < 20; ++it) {
    int n = 2 + static_cast<int>(rng.below(4));
    FiniteAction a = random_action(n, 2, rng.next());
    IndexedPartition alpha(random_partition(rng, n, 2));
    WordList words = {GroupWord(), random_word(rng, 2, 2)};
    HomAssignment phi = identity_assignment(fin(a), alpha, words);
    CHECK(is_hom(fin(a), alpha, words, Rat(1, 1000), a, phi));
    CHECK(is_hom(fin(a), alpha, words, Rat(2), a, phi));
  }
}

TEST_CASE("collapsing both atoms into one block fails on the swap action") {
  FiniteAction c2 = cyclic_action(2);
  IndexedPartition singles(FinitePartition::singletons(2));
  WordList e_only = parse_word_list("1");
  HomAssignment both{make_partition({0, 0}, 2)}; // measure deficit 1
  CHECK(!is_hom(fin(c2), singles, e_only, Rat(1, 10), c2, both));
  CHECK(is_hom(fin(c2), singles, e_only, Rat(2), c2, both));
}

TEST_CASE("huge delta accepts every assignment") {
  FiniteAction c2 = cyclic_action(2);
  IndexedPartition singles(FinitePartition::singletons(2));
  WordList words = parse_word_list("1,a");
  Rat huge = Rat(2) * Rat(static_cast<long long>(words.size())) + Rat(2); // 2|F| + 1 and above
  HomCountReport r = count_homs(fin(c2), singles, singles, words, huge, c2,
                                CountMethod::exact());
  CHECK(r.total_valid == std::pow(static_cast<double>(r.atom_count), 2.0));
}

TEST_CASE("counting on the two-point swap") {
  FiniteAction c2 = cyclic_action(2);
  IndexedPartition singles(FinitePartition::singletons(2));
  IndexedPartition one(FinitePartition::one_block(2));
  WordList e_only = parse_word_list("1");
  CountMethod exact = CountMethod::exact();

  HomCountReport r = count_homs(fin(c2), singles, singles, e_only, Rat(1, 10), c2, exact);
  CHECK(r.exact);
  CHECK(r.atom_count == 2);
  CHECK(r.total_valid == 2); // the two labeled matchings out of 4 assignments
  CHECK(r.restricted_count == 2);

  HomCountReport coarse = count_homs(fin(c2), one, singles, e_only, Rat(1, 10), c2, exact);
  CHECK(coarse.total_valid == 2);
  CHECK(coarse.restricted_count == 1); // phi(X) = X always

  CHECK_THROWS_AS(count_homs(fin(c2), singles, singles, e_only, Rat(0), c2, exact),
                  InputError);
  CHECK_THROWS_AS(count_homs(fin(c2), singles, one, e_only, Rat(1, 10), c2, exact),
                  InputError); // one-block alpha does not refine singleton xi
}

TEST_CASE("entropy points") {
  FiniteAction c2 = cyclic_action(2);
  IndexedPartition singles(FinitePartition::singletons(2));
  IndexedPartition one(FinitePartition::one_block(2));
  WordList e_only = parse_word_list("1");
  CountMethod exact = CountMethod::exact();

  CHECK(entropy_point(fin(c2), singles, singles, e_only, Rat(1, 10), c2, exact) ==
        doctest::Approx(0.5 * std::log(2.0)));
  CHECK(entropy_point(fin(c2), one, singles, e_only, Rat(1, 10), c2, exact) == 0.0);
  // an impossible measure match gives an empty hom set
  double v = entropy_point(fin(c2), singles, singles, e_only, Rat(1, 100), trivial_action(1),
                           exact);
  CHECK(std::isinf(v));
  CHECK(v < 0);
}

TEST_CASE("counts are nondecreasing in delta") {
  Rng rng(777);
  CountMethod exact = CountMethod::exact();
  for (int it = 0; it < 15; ++it) {
    int na = 2 + static_cast<int>(rng.below(3));
    int nb = 2 + static_cast<int>(rng.below(3));
    FiniteAction a = random_action(na, 1, rng.next());
    FiniteAction b = random_action(nb, 1, rng.next());
    IndexedPartition alpha(random_partition(rng, na, 2));
    WordList words = {GroupWord(), random_word(rng, 1, 2)};
    double prev_total = -1, prev_restricted = -1;
    for (Rat delta : {Rat(1, 8), Rat(1, 4), Rat(1, 2), Rat(1), Rat(2)}) {
      HomCountReport r = count_homs(fin(a), alpha, alpha, words, delta, b, exact);
      CHECK(r.total_valid >= prev_total);
      CHECK(r.restricted_count >= prev_restricted);
      prev_total = r.total_valid;
      prev_restricted = r.restricted_count;
    }
  }
}

TEST_CASE("finer sources restrict into coarser hom sets") {
  // every hom for a refinement alpha' restricts to a hom for alpha at
  // |alpha'| times the tolerance
  Rng rng(2024);
  for (int it = 0; it < 10; ++it) {
    int n = 2 + static_cast<int>(rng.below(2)); // keep the enumeration tiny
    FiniteAction a = random_action(n, 1, rng.next());
    FiniteAction b = random_action(n, 1, rng.next());
    FinitePartition fine = random_partition(rng, n, 2);
    IndexedPartition alpha(FinitePartition::one_block(n));
    WordList words = parse_word_list("1,a");
    WordList norm = normalize_word_list(words);
    Rat delta(1, 3);

    IndexedPartition fine_f = generated_partition(fin(a), norm, IndexedPartition(fine));
    IndexedPartition coarse_f = generated_partition(fin(a), norm, alpha);
    int m_fine = fine_f.block_count();
    int m_coarse = coarse_f.block_count();

    // map each nonempty fine atom into its coarse atom
    std::vector<int> atom_map(static_cast<size_t>(m_fine), -1);
    for (int x = 0; x < n; ++x) {
      atom_map[static_cast<size_t>(fine_f.finite().assign[static_cast<size_t>(x)])] =
          coarse_f.finite().assign[static_cast<size_t>(x)];
    }

    long long space = 1;
    for (int i = 0; i < b.size; ++i) space *= m_fine;
    std::vector<int> assign(static_cast<size_t>(b.size), 0);
    for (long long code = 0; code < space; ++code) {
      long long rest = code;
      for (int i = 0; i < b.size; ++i) {
        assign[static_cast<size_t>(i)] = static_cast<int>(rest % m_fine);
        rest /= m_fine;
      }
      HomAssignment phi{make_partition(assign, m_fine)};
      if (!is_hom(fin(a), IndexedPartition(fine), words, delta, b, phi)) continue;
      std::vector<int> restricted(assign.size());
      for (size_t i = 0; i < assign.size(); ++i) {
        int mapped = atom_map[static_cast<size_t>(assign[i])];
        restricted[i] = mapped >= 0 ? mapped : 0; // points on null atoms land anywhere
      }
      HomAssignment psi{make_partition(restricted, m_coarse)};
      Rat relaxed = Rat(fine.block_count) * delta;
      CHECK(is_hom(fin(a), alpha, words, relaxed, b, psi));
    }
  }
}

TEST_CASE("Monte Carlo counting is deterministic and flagged") {
  FiniteAction c2 = cyclic_action(2);
  IndexedPartition singles(FinitePartition::singletons(2));
  WordList e_only = parse_word_list("1");
  CountMethod mc = CountMethod::monte_carlo(500, 99);
  HomCountReport r1 = count_homs(fin(c2), singles, singles, e_only, Rat(1, 10), c2, mc);
  HomCountReport r2 = count_homs(fin(c2), singles, singles, e_only, Rat(1, 10), c2, mc);
  CHECK(!r1.exact);
  CHECK(r1.has_ci95);
  CHECK(r1.total_valid == r2.total_valid);
  CHECK(r1.restricted_count == r2.restricted_count);
  // xi = alpha = alpha_F here, so restriction is injective and unbiased
  CHECK(!r1.restricted_lower_bound_biased);
  CHECK(r1.restricted_count == r1.total_valid);

  IndexedPartition one(FinitePartition::one_block(2));
  HomCountReport biased = count_homs(fin(c2), one, singles, e_only, Rat(1, 10), c2, mc);
  CHECK(biased.restricted_lower_bound_biased);
}

TEST_CASE("exact counting respects the budget") {
  Rng rng(3);
  FiniteAction a = cyclic_action(8);
  IndexedPartition alpha(random_partition(rng, 8, 2));
  CountMethod tight = CountMethod::exact(100);
  CHECK_THROWS_AS(count_homs(fin(a), alpha, alpha, parse_word_list("1,a"), Rat(1, 2), a, tight),
                  BudgetError);
}

TEST_CASE("entropy grid shapes and aggregates") {
  FiniteAction c2 = cyclic_action(2);
  IndexedPartition singles(FinitePartition::singletons(2));
  std::vector<Rat> deltas = {Rat(1, 10), Rat(1, 2)};
  EntropyGrid g = entropy_grid(fin(c2), singles, {singles}, {parse_word_list("1")}, deltas,
                               {c2, cyclic_action(2)}, CountMethod::exact(), 1);
  CHECK(g.cells.size() == 4);
  CHECK(g.windows.size() == 2);
  // single alpha and word list: the xi bracket is the min over deltas
  double expect = 0.5 * std::log(2.0);
  CHECK(g.xi_bracket.lo == doctest::Approx(expect));
  CHECK(g.xi_bracket.hi == doctest::Approx(expect));
  // values nondecreasing in delta within each (alpha, f, n)
  CHECK(g.cells[0].value <= g.cells[1].value);
}

TEST_CASE("genprof cutoffs and entropy bound") {
  CHECK(genprof_cutoff(0.5) == 8);
  CHECK(genprof_cutoff(0.25) == 10);

  Tower t = odometer_tower(2, 12);
  GenprofResult half = genprof_partition(t, 0.5, 12);
  CHECK(half.cutoff == 8);
  CHECK(half.entropy <= 0.5);
  CHECK(half.partition.block_count == 5); // complement plus levels 8..11
  auto sizes = half.partition.block_sizes();
  // fiber of level n has 4096 / 2^n points
  CHECK(sizes[1] == 16);
  CHECK(sizes[2] == 8);
  CHECK(sizes[3] == 4);
  CHECK(sizes[4] == 2);

  GenprofResult quarter = genprof_partition(t, 0.25, 12);
  CHECK(quarter.cutoff == 10);
  CHECK(quarter.entropy <= 0.25);

  // generous budgets still run the same construction, from the lowest level
  GenprofResult loose = genprof_partition(t, 5.0, 12);
  CHECK(loose.cutoff == 2);
  CHECK(loose.entropy <= 5.0);
  CHECK(loose.partition.block_count == 11);

  CHECK_THROWS_AS(genprof_partition(t, 0.5, 8), InfeasibleError);
}

TEST_CASE("genprof blocks and their translates separate points down to the last level") {
  Tower t = odometer_tower(2, 10);
  GenprofResult r = genprof_partition(t, 0.5, 10);
  const FiniteAction& carrier = t.level(9);
  // refine point classes by block membership along the generator orbit
  std::vector<int> cls = r.partition.assign;
  const std::vector<int>& gen = carrier.gens[0];
  for (;;) {
    std::map<std::pair<int, int>, int> relabel;
    std::vector<int> next(cls.size());
    for (size_t x = 0; x < cls.size(); ++x) {
      auto key = std::make_pair(cls[x], cls[static_cast<size_t>(gen[x])]);
      auto it = relabel.find(key);
      if (it == relabel.end()) it = relabel.emplace(key, static_cast<int>(relabel.size())).first;
      next[x] = it->second;
    }
    if (next == cls) break;
    cls = std::move(next);
  }
  // classes should coincide with the fibers of the next-to-last level
  int half = carrier.size / 2;
  for (int x = 0; x < carrier.size; ++x) {
    for (int y = x + 1; y < carrier.size; ++y) {
      bool same_class = cls[static_cast<size_t>(x)] == cls[static_cast<size_t>(y)];
      bool same_fiber = (x % half) == (y % half);
      CHECK(same_class == same_fiber);
    }
  }
}

} // TEST_SUITE
