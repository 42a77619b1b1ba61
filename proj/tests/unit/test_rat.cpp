#include <doctest.h>

#include "soficlab/rat.hpp"

using soficlab::Rat;

TEST_SUITE("rat") {

TEST_CASE("normalization and arithmetic") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(1, 2) - Rat(1, 3) == Rat(1, 6));
  CHECK(Rat(2, 3) * Rat(3, 4) == Rat(1, 2));
  CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
  CHECK((-Rat(1, 2)).abs() == Rat(1, 2));
  CHECK(Rat(1, 3) < Rat(1, 2));
  CHECK(Rat(-1) < Rat(0));
}

TEST_CASE("string forms") {
  CHECK(Rat(0).str() == "0/1");
  CHECK(Rat(5, 2).str() == "5/2");
  CHECK(Rat(-3, 6).str() == "-1/2");
  CHECK(Rat::parse("5/2") == Rat(5, 2));
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat::parse("-2/8") == Rat(-1, 4));
  CHECK_THROWS(Rat::parse("a/b"));
  CHECK_THROWS(Rat::parse("1/0"));
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
  CHECK_THROWS_AS(Rat(1, 2) / Rat(0), std::domain_error);
  Rat big(INT64_MAX / 2, 3);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("large intermediates reduce back into range") {
  Rat a(1, 1'000'003);
  Rat b(1, 999'983);
  Rat s = a + b; // denominators are coprime, product is ~1e12
  CHECK(s.den() == 1'000'003LL * 999'983LL);
  CHECK(s == Rat(1'000'003 + 999'983, 1'000'003LL * 999'983LL));
}

} // TEST_SUITE
