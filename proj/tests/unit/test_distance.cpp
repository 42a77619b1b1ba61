#include <doctest.h>

#include "helpers.hpp"
#include "soficlab/distance.hpp"
#include "soficlab/errors.hpp"

using namespace soficlab;
using testutil::make_partition;
using testutil::random_partition;
using testutil::random_word_list;

namespace {

MeasureModel fin(const FiniteAction& a) { return MeasureModel::finite(a); }

IndexedPartition c4_halves() { return IndexedPartition(make_partition({0, 0, 1, 1}, 2)); }

/// Merges the blocks of p through a random surjection onto fewer blocks.
FinitePartition coarsen(Rng& rng, const FinitePartition& p, int k_coarse) {
  std::vector<int> merge(static_cast<size_t>(p.block_count));
  for (size_t i = 0; i < merge.size(); ++i) {
    merge[i] = static_cast<int>(rng.below(static_cast<uint64_t>(k_coarse)));
  }
  FinitePartition q = p;
  q.block_count = k_coarse;
  for (auto& b : q.assign) b = merge[static_cast<size_t>(b)];
  return q;
}

} // namespace

TEST_SUITE("distance") {

TEST_CASE("word list normalization") {
  WordList f = normalize_word_list(parse_word_list("a,b"));
  REQUIRE(f.size() == 3);
  CHECK(f[0].empty());
  WordList g = normalize_word_list(parse_word_list("a,1,b"));
  CHECK(g.size() == 3); // kept as given
  CHECK_THROWS_AS(normalize_word_list({}), InputError);
}

TEST_CASE("inner infimum on the worked examples") {
  FiniteAction c4 = cyclic_action(4);
  WordList ea = parse_word_list("1,a");
  SearchStrategy ex = SearchStrategy::exhaustive();

  DistanceReport self = d_inf(fin(c4), c4, ea, c4_halves(), ex);
  CHECK(self.value == Rat(0));
  CHECK(self.exact);

  DistanceReport to_trivial = d_inf(fin(c4), trivial_action(2), ea, c4_halves(), ex);
  CHECK(to_trivial.value == Rat(1));
  CHECK(to_trivial.exact);

  DistanceReport to_point = d_inf(fin(c4), trivial_action(1), ea, c4_halves(), ex);
  CHECK(to_point.value == Rat(5, 2));
  CHECK(to_point.witness.finite().assign == std::vector<int>{0}); // (X, empty)
}

TEST_CASE("report value always matches the witness") {
  Rng rng(606);
  for (int it = 0; it < 30; ++it) {
    int na = 2 + static_cast<int>(rng.below(5));
    int nb = 2 + static_cast<int>(rng.below(5));
    FiniteAction a = random_action(na, 2, rng.next());
    FiniteAction b = random_action(nb, 2, rng.next());
    IndexedPartition alpha(random_partition(rng, na, 2));
    WordList words = random_word_list(rng, 2, 2, 2);
    SearchStrategy s = (it % 2 == 0) ? SearchStrategy::exhaustive()
                                     : SearchStrategy::local_search(4, 500, rng.next());
    DistanceReport r = d_inf(fin(a), b, words, alpha, s);
    StatsVector target = stats(fin(a), r.words, alpha);
    StatsVector at_witness = stats(fin(b), r.words, r.witness);
    CHECK(r.value == stats_l1(target, at_witness));
  }
}

TEST_CASE("outer supremum on the worked examples") {
  SearchStrategy ex = SearchStrategy::exhaustive();
  FiniteAction c4 = cyclic_action(4);
  FiniteAction triv2 = trivial_action(2);
  WordList e_only = parse_word_list("1");

  CHECK(d_sup(fin(c4), triv2, e_only, 1, ex).value == Rat(0));

  DistanceReport r = d_sup(fin(c4), triv2, e_only, 2, ex);
  CHECK(r.value == Rat(1, 2));
  CHECK(r.exact);
  auto sizes = r.witness.finite().block_sizes();
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<long long>{1, 3}); // block measures 1/4 and 3/4

  CHECK(d_sup(fin(c4), c4, parse_word_list("1,a"), 2, ex).value == Rat(0));
  CHECK(d_sup(fin(cyclic_action(3)), cyclic_action(3), parse_word_list("1,a"), 3, ex).value ==
        Rat(0));
}

TEST_CASE("symmetrized distance") {
  SearchStrategy ex = SearchStrategy::exhaustive();
  FiniteAction c4 = cyclic_action(4);
  FiniteAction triv2 = trivial_action(2);
  WordList e_only = parse_word_list("1");

  SymmetricReport self = d_sym(c4, c4, parse_word_list("1,a"), 2, ex);
  CHECK(self.value == Rat(0));
  CHECK(self.exact);

  SymmetricReport r = d_sym(c4, triv2, e_only, 2, ex);
  CHECK(r.forward.value == Rat(1, 2));
  CHECK(r.backward.value == Rat(0)); // every two-point statistic lives in C4
  CHECK(r.value == Rat(1, 2));

  SymmetricReport rev = d_sym(triv2, c4, e_only, 2, ex);
  CHECK(rev.value == r.value);
  CHECK(rev.forward.value == r.backward.value);
}

TEST_CASE("containment verdicts") {
  SearchStrategy ex = SearchStrategy::exhaustive();
  FiniteAction c4 = cyclic_action(4);
  WordList ea = parse_word_list("1,a");

  ContainmentReport same =
      containment_verdict(fin(c4), c4, ea, {c4_halves()}, ex, Rat(0));
  CHECK(same.all_below);

  // a deeper odometer level realizes a shallow level's statistics exactly
  auto t = std::make_shared<Tower>(odometer_tower(2, 3));
  IndexedPartition level2(FinitePartition::singletons(4));
  ContainmentReport tower_ok = containment_verdict(
      MeasureModel::tower_level(t, 1), t->level(2), ea, {level2}, ex, Rat(0));
  CHECK(tower_ok.all_below);
  CHECK(tower_ok.reports[0].value == Rat(0));

  ContainmentReport no = containment_verdict(fin(c4), trivial_action(2), ea, {c4_halves()},
                                             ex, Rat(1, 2));
  CHECK(!no.all_below);
  CHECK(no.reports[0].value == Rat(1));
}

TEST_CASE("self distance vanishes") {
  Rng rng(99);
  SearchStrategy ex = SearchStrategy::exhaustive();
  for (int it = 0; it < 20; ++it) {
    int n = 2 + static_cast<int>(rng.below(7));
    int k = 1 + static_cast<int>(rng.below(3));
    FiniteAction a = random_action(n, 1 + static_cast<int>(rng.below(2)), rng.next());
    IndexedPartition alpha(random_partition(rng, n, k));
    WordList words = random_word_list(rng, a.generator_count(), 2, 2);
    CHECK(d_inf(fin(a), a, words, alpha, ex).value == Rat(0));
  }
}

TEST_CASE("triangle-type inequality on tiny exhaustive triples") {
  Rng rng(1234);
  SearchStrategy ex = SearchStrategy::exhaustive();
  for (int it = 0; it < 25; ++it) {
    int na = 2 + static_cast<int>(rng.below(5));
    int nb = 2 + static_cast<int>(rng.below(5));
    int nc = 2 + static_cast<int>(rng.below(5));
    FiniteAction a = random_action(na, 2, rng.next());
    FiniteAction b = random_action(nb, 2, rng.next());
    FiniteAction c = random_action(nc, 2, rng.next());
    IndexedPartition alpha(random_partition(rng, na, 2));
    WordList words = random_word_list(rng, 2, 2, 1);
    Rat ac = d_inf(fin(a), c, words, alpha, ex).value;
    Rat ab = d_inf(fin(a), b, words, alpha, ex).value;
    Rat bc = d_sup(fin(b), c, words, 2, ex).value;
    CHECK(ac <= ab + bc);
  }
}

TEST_CASE("refinement monotonicity") {
  Rng rng(5150);
  SearchStrategy ex = SearchStrategy::exhaustive();
  for (int it = 0; it < 25; ++it) {
    int na = 2 + static_cast<int>(rng.below(5));
    int nb = 2 + static_cast<int>(rng.below(5));
    FiniteAction a = random_action(na, 2, rng.next());
    FiniteAction b = random_action(nb, 2, rng.next());
    FinitePartition alpha = random_partition(rng, na, 3);
    FinitePartition beta = coarsen(rng, alpha, 2);
    REQUIRE(refines(IndexedPartition(alpha), IndexedPartition(beta)));
    WordList words = random_word_list(rng, 2, 2, 1);
    Rat fine = d_inf(fin(a), b, words, IndexedPartition(alpha), ex).value;
    Rat coarse = d_inf(fin(a), b, words, IndexedPartition(beta), ex).value;
    CHECK(fine >= coarse);
  }
}

TEST_CASE("word-set monotonicity") {
  Rng rng(31337);
  SearchStrategy ex = SearchStrategy::exhaustive();
  for (int it = 0; it < 25; ++it) {
    int na = 2 + static_cast<int>(rng.below(5));
    int nb = 2 + static_cast<int>(rng.below(4));
    FiniteAction a = random_action(na, 2, rng.next());
    FiniteAction b = random_action(nb, 2, rng.next());
    IndexedPartition alpha(random_partition(rng, na, 2));
    WordList small = random_word_list(rng, 2, 2, 1);
    WordList large = small;
    large.push_back(testutil::random_word(rng, 2, 2));
    Rat v_small = d_inf(fin(a), b, small, alpha, ex).value;
    Rat v_large = d_inf(fin(a), b, large, alpha, ex).value;
    CHECK(v_small <= v_large);
  }
}

TEST_CASE("local search brackets the exhaustive optimum") {
  Rng rng(8080);
  for (int it = 0; it < 12; ++it) {
    int na = 2 + static_cast<int>(rng.below(4));
    int nb = 2 + static_cast<int>(rng.below(4));
    FiniteAction a = random_action(na, 2, rng.next());
    FiniteAction b = random_action(nb, 2, rng.next());
    IndexedPartition alpha(random_partition(rng, na, 2));
    WordList words = random_word_list(rng, 2, 2, 1);
    SearchStrategy ex = SearchStrategy::exhaustive();
    SearchStrategy ls = SearchStrategy::local_search(6, 400, rng.next());
    CHECK(d_inf(fin(a), b, words, alpha, ls).value >= d_inf(fin(a), b, words, alpha, ex).value);
    CHECK(d_sup(fin(a), b, words, 2, ls).value <= d_sup(fin(a), b, words, 2, ex).value);
  }
}

TEST_CASE("identical seeds give identical local-search reports") {
  FiniteAction a = random_action(10, 2, 5);
  FiniteAction b = random_action(12, 2, 6);
  IndexedPartition alpha(testutil::make_partition({0, 1, 0, 1, 0, 1, 0, 1, 0, 1}, 2));
  WordList words = parse_word_list("1,a,b");
  SearchStrategy one = SearchStrategy::local_search(8, 800, 424242);
  SearchStrategy four = one;
  four.threads = 4;
  DistanceReport r1 = d_inf(fin(a), b, words, alpha, one);
  DistanceReport r4 = d_inf(fin(a), b, words, alpha, four);
  CHECK(r1.value == r4.value);
  CHECK(r1.witness == r4.witness);
  CHECK(r1.evaluations == r4.evaluations);
}

TEST_CASE("exhaustive searches respect the budget") {
  Rng rng(1);
  FiniteAction a = random_action(12, 1, 1);
  FiniteAction b = random_action(12, 1, 2);
  IndexedPartition alpha(random_partition(rng, 12, 2));
  SearchStrategy tiny = SearchStrategy::exhaustive(100);
  CHECK_THROWS_AS(d_inf(fin(a), b, parse_word_list("1"), alpha, tiny), BudgetError);
  CHECK_THROWS_AS(d_sup(fin(a), b, parse_word_list("1"), 2, tiny), BudgetError);
}

TEST_CASE("warm starts seed the inner search") {
  auto t = std::make_shared<Tower>(odometer_tower(2, 4));
  // approximate level 1 (4 points) inside level 3 (16 points)
  FinitePartition level1 = FinitePartition::singletons(4);
  FinitePartition pullback = pullback_partition(*t, 1, 3, level1);
  SearchStrategy warm = SearchStrategy::local_search(0, 0, 7);
  warm.warm_starts = {pullback.assign};
  DistanceReport r = d_inf(MeasureModel::tower_level(t, 1), t->level(3),
                           parse_word_list("1,a,A"), IndexedPartition(level1), warm);
  CHECK(r.value == Rat(0));
  CHECK(!r.exact);
}

TEST_CASE("symbolic left side works, symbolic sup does not") {
  BernoulliModel base;
  base.alphabet = 2;
  base.probs = {Rat(1, 2), Rat(1, 2)};
  base.generator_count = 1;
  MeasureModel coin = MeasureModel::bernoulli(base);
  IndexedPartition coord(CylinderPartition::coordinate(1, 2));
  SearchStrategy ex = SearchStrategy::exhaustive();
  DistanceReport r = d_inf(coin, cyclic_action(4), parse_word_list("1"), coord, ex);
  CHECK(r.value == Rat(0)); // measures (1/2, 1/2) are realizable on 4 points
  CHECK_THROWS_AS(d_sup(coin, cyclic_action(4), parse_word_list("1"), 2, ex), InputError);
}

} // TEST_SUITE
