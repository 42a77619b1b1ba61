#include <doctest.h>

#include "helpers.hpp"
#include "soficlab/errors.hpp"
#include "soficlab/tower.hpp"

using namespace soficlab;
using testutil::random_word;

TEST_SUITE("tower") {

TEST_CASE("odometer levels and maps") {
  Tower t = odometer_tower(2, 3);
  REQUIRE(t.depth() == 3);
  CHECK(t.level(0).size == 2);
  CHECK(t.level(1).size == 4);
  CHECK(t.level(2).size == 8);
  CHECK(t.maps()[1][5] == 1); // 5 mod 4
  CHECK(t.project(2, 0, 5) == 1);
  CHECK(t.project(2, 2, 5) == 5);
  // full cycles fix everything
  for (int l = 0; l < 3; ++l) {
    CHECK(fix_ratio(t.level(l), GroupWord::power(0, t.level(l).size)) == Rat(1));
    CHECK(fix_ratio(t.level(l), GroupWord::parse("a")) == Rat(0));
  }
}

TEST_CASE("construction rejects broken towers") {
  FiniteAction c2 = cyclic_action(2);
  FiniteAction c4 = cyclic_action(4);
  FiniteAction c6 = cyclic_action(6);

  // wrong map count
  CHECK_THROWS_AS(Tower::create({c2, c4}, {}), InputError);
  // sizes must divide
  CHECK_THROWS_AS(Tower::create({c4, c6}, {{0, 1, 2, 3, 0, 1}}), InputError);
  // sizes must increase
  CHECK_THROWS_AS(Tower::create({c4, c2}, {{0, 1}}), InputError);
  // non-equivariant map: swap the fibers of one point
  std::vector<int> bad_map = {0, 0, 1, 1}; // equivariant would be x mod 2
  CHECK_THROWS_AS(Tower::create({c2, c4}, {bad_map}), InputError);
  // non-uniform fibers
  std::vector<int> lopsided = {0, 0, 0, 1};
  CHECK_THROWS_AS(Tower::create({c2, c4}, {lopsided}), InputError);
  // the honest map passes
  Tower ok = Tower::create({c2, c4}, {{0, 1, 0, 1}});
  CHECK(ok.depth() == 2);
}

TEST_CASE("pullback partitions") {
  Tower t = odometer_tower(2, 3);
  FinitePartition p = FinitePartition::singletons(2);
  CHECK(pullback_partition(t, 0, 0, p) == p);
  FinitePartition deep = pullback_partition(t, 0, 2, p);
  CHECK(deep.assign == std::vector<int>{0, 1, 0, 1, 0, 1, 0, 1}); // parity classes
  // measures preserved
  CHECK(deep.block_sizes() == std::vector<long long>{4, 4});
  CHECK_THROWS_AS(pullback_partition(t, 2, 0, p), InputError);
}

TEST_CASE("pullbacks preserve measures on random level partitions") {
  Tower t = odometer_tower(3, 3);
  Rng rng(17);
  for (int it = 0; it < 20; ++it) {
    FinitePartition p = testutil::random_partition(rng, t.level(1).size, 3);
    FinitePartition q = pullback_partition(t, 1, 2, p);
    auto ps = p.block_sizes();
    auto qs = q.block_sizes();
    long long ratio = t.level(2).size / t.level(1).size;
    for (size_t i = 0; i < ps.size(); ++i) CHECK(qs[i] == ps[i] * ratio);
  }
}

TEST_CASE("default probe words") {
  WordList probes = default_probe_words(2, 3);
  CHECK(probes.size() == 4 + 12 + 36);
  for (const auto& w : probes) {
    CHECK(!w.empty());
    CHECK(w.length() <= 3);
    CHECK(GroupWord::reduce(w.letters()) == w);
  }
  WordList one_gen = default_probe_words(1, 3);
  CHECK(one_gen.size() == 6); // a, A, aa, AA, aaa, AAA
}

TEST_CASE("random sofic approximations are reproducible") {
  SoficApproximation s1 = random_sofic(2, {20, 40}, 7);
  SoficApproximation s2 = random_sofic(2, {20, 40}, 7);
  CHECK(s1.sequence[0].gens == s2.sequence[0].gens);
  CHECK(s1.sequence[1].gens == s2.sequence[1].gens);
  CHECK(s1.kernel_words.empty());
  CHECK(s1.probe_words.size() == 52);
  SoficApproximation s3 = random_sofic(2, {20, 40}, 8);
  CHECK(s1.sequence[0].gens != s3.sequence[0].gens);
  // the identity fixes everything on any stage
  CHECK(fix_ratio(s1.sequence[0], GroupWord()) == Rat(1));
}

TEST_CASE("diagonal products") {
  FiniteAction c2 = cyclic_action(2);
  FiniteAction p = diagonal_product(c2, c2);
  REQUIRE(p.size == 4);
  CHECK(fix_ratio(p, GroupWord::parse("a")) == Rat(0));
  CHECK(fix_ratio(p, GroupWord::power(0, 2)) == Rat(1));

  FiniteAction any = random_action(5, 2, 3);
  FiniteAction with_point = diagonal_product(any, trivial_action(1, 2));
  CHECK(with_point.size == any.size);
  CHECK(with_point.gens == any.gens);

  CHECK_THROWS_AS(diagonal_product(c2, trivial_action(2, 2)), InputError);
}

TEST_CASE("fix ratios multiply across diagonal products") {
  Rng rng(55);
  for (int it = 0; it < 30; ++it) {
    FiniteAction a = random_action(2 + static_cast<int>(rng.below(5)), 2, rng.next());
    FiniteAction b = random_action(2 + static_cast<int>(rng.below(5)), 2, rng.next());
    GroupWord w = random_word(rng, 2, 4);
    CHECK(fix_ratio(diagonal_product(a, b), w) == fix_ratio(a, w) * fix_ratio(b, w));
  }
}

TEST_CASE("validating the odometer as an approximation of the integers") {
  Tower t = odometer_tower(2, 8);
  SoficApproximation sigma;
  sigma.sequence = t.levels();
  sigma.probe_words = {GroupWord::parse("a"), GroupWord::power(0, 2), GroupWord::power(0, 3)};
  SoficValidation v = validate_sofic(sigma, 0.30, 0.70);
  CHECK(v.pass);
  REQUIRE(v.trajectories.size() == 3);
  // a^2 fixes everything only on the two-point level
  CHECK(v.trajectories[1].fix_ratios[0] == Rat(1));
  CHECK(v.trajectories[1].fix_ratios[1] == Rat(0));
}

TEST_CASE("odometer probes pass for powers of bounded dyadic depth") {
  // a^k acts freely in the limit for k != 0; the finite-stage check sees
  // that whenever 2^j || k stays below the final-third levels
  for (int depth = 4; depth <= 8; ++depth) {
    Tower t = odometer_tower(2, depth);
    SoficApproximation sigma;
    sigma.sequence = t.levels();
    for (int k : {1, 2, 3, 4, 5, 6, 7, 9, 10, 11, 12, 13}) {
      sigma.probe_words = {GroupWord::power(0, k)};
      CHECK(validate_sofic(sigma, 0.30, 0.70).pass);
    }
  }
  // a deep dyadic power defeats the finite window even though it is free
  // in the limit: the report is evidence at this depth, not a proof
  Tower t = odometer_tower(2, 4);
  SoficApproximation sigma;
  sigma.sequence = t.levels();
  sigma.probe_words = {GroupWord::power(0, 8)};
  CHECK(!validate_sofic(sigma, 0.30, 0.70).pass);
}

TEST_CASE("random approximations of the free group pass validation") {
  for (uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    SoficApproximation sigma = random_sofic(2, {60, 90, 120, 160, 200}, seed);
    SoficValidation v = validate_sofic(sigma);
    CHECK(v.pass); // probe fix ratios concentrate near 1/n
  }
}

TEST_CASE("identity sequences fail the probe band") {
  SoficApproximation sigma;
  for (int i = 0; i < 5; ++i) sigma.sequence.push_back(trivial_action(4));
  sigma.probe_words = {GroupWord::parse("a")};
  SoficValidation v = validate_sofic(sigma);
  CHECK(!v.pass);
  CHECK(v.trajectories[0].fix_ratios.back() == Rat(1));
}

TEST_CASE("trivially acting kernel words pass") {
  // two generators, the second acting trivially at every stage
  SoficApproximation sigma;
  for (int i = 2; i <= 6; ++i) {
    FiniteAction a = cyclic_action(1 << i, 2);
    a.gens[1] = trivial_action(1 << i).gens[0];
    sigma.sequence.push_back(a);
  }
  sigma.kernel_words = {GroupWord::parse("b")};
  sigma.probe_words = {GroupWord::parse("a")};
  SoficValidation v = validate_sofic(sigma);
  CHECK(v.pass);

  // vacuous word lists pass as well
  SoficApproximation empty_words;
  empty_words.sequence = sigma.sequence;
  CHECK(validate_sofic(empty_words).pass);
}

} // TEST_SUITE
