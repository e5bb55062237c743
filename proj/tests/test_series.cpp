#include <doctest.h>

#include "dloop/expr.hpp"
#include "dloop/random_gen.hpp"
#include "dloop/series.hpp"

using namespace dloop;

namespace {

LaurentSeries inner(const std::string& text, const TestRing& R, int tp = 12) {
  IterSeries v = parse_series(text, R, tp, 8);
  if (v.slices().empty()) return LaurentSeries::zero(R);
  return v.slice(0);
}

}  // namespace

TEST_CASE("series arithmetic basics") {
  auto R = parse_ring("Q[e]/(e^2)");
  // telescoping product against a truncated inverse
  LaurentSeries one_plus_t = inner("1 + t", *R);
  LaurentSeries geo = invert_series(one_plus_t, 4);
  LaurentSeries prod = one_plus_t * geo;
  CHECK(prod.prec() == 4);
  CHECK(prod.at(0) == RingElement::one(*R));
  CHECK(prod.at(1).is_zero());
  CHECK(prod.at(2).is_zero());
  CHECK(prod.at(3).is_zero());

  // (e t^-1)^2 = 0 exactly
  LaurentSeries et = inner("e*t^-1", *R);
  CHECK((et * et).is_known_zero());
  CHECK((et * et).exact());

  // (t^-1 + t)*t = 1 + t^2 exactly
  LaurentSeries f = inner("t^-1 + t", *R);
  LaurentSeries t = inner("t", *R);
  CHECK(f * t == inner("1 + t^2", *R));
}

TEST_CASE("invert: geometric series") {
  auto R = parse_ring("Q");
  LaurentSeries g = invert_series(inner("1 + t", *R), 4);
  CHECK(g == inner("1 - t + t^2 - t^3 + O(t^4)", *R, 4));
}

TEST_CASE("invert: unit degree above a nilpotent tail") {
  auto R = parse_ring("Q[e]/(e^2)");
  LaurentSeries f = inner("t + e", *R);
  LaurentSeries g = invert_series(f, 3);
  // (t+e)^{-1} = t^{-1} - e t^{-2}
  LaurentSeries prod = (f * g);
  CHECK(prod.at(0) == RingElement::one(*R));
  for (int d = -3; d < 3; ++d)
    if (d != 0 && prod.known(d)) CHECK(prod.at(d).is_zero());
  CHECK(g.at(-1) == RingElement::one(*R));
  CHECK(g.at(-2) == -inner("e", *R).at(0));
  CHECK_THROWS_AS(invert_series(inner("e", *R), 4), not_invertible);
}

TEST_CASE("unit decomposition") {
  auto R = parse_ring("Q");
  UnitDecomposition d1 = unit_decompose(inner("t^2 + t^3", *R));
  REQUIRE(d1.groups.size() == 1);
  CHECK(d1.groups[0].d == 2);

  auto R2 = parse_ring("Q[e]/(e^2)");
  UnitDecomposition d2 = unit_decompose(inner("e*t^-1 + 1", *R2));
  REQUIRE(d2.groups.size() == 1);
  CHECK(d2.groups[0].d == 0);

  auto RP = parse_ring("QxQ");
  UnitDecomposition d3 = unit_decompose(parse_series("(1,0) + (0,1)*t", *RP).slice(0));
  REQUIRE(d3.groups.size() == 2);
  CHECK(d3.groups[0].d == 0);
  CHECK(d3.groups[0].factors == std::vector<size_t>{0});
  CHECK(d3.groups[1].d == 1);
  CHECK(d3.groups[1].factors == std::vector<size_t>{1});

  CHECK_THROWS_AS(unit_decompose(inner("e*t^-1", *R2)), not_invertible);
}

TEST_CASE("positive/negative parts") {
  auto R = parse_ring("Q[e]/(e^2)");
  LaurentSeries f = inner("t^-2 + 3 + t", *R);
  CHECK(f.positive_part() == inner("3 + t", *R));
  CHECK(f.negative_part() == inner("t^-2", *R));
  CHECK(inner("t^-1", *R).positive_part().is_known_zero());
  CHECK(inner("e + e*t^-1", *R).positive_part() == inner("e", *R));
  // idempotent and complementary
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    LaurentSeries g = random_invertible_series(*R, rng);
    CHECK(g.positive_part().positive_part() == g.positive_part());
    CHECK(g.positive_part() + g.negative_part() == g);
  }
}

TEST_CASE("random inverses satisfy f*g = 1 to precision") {
  for (const char* rs : {"Q[e]/(e^2)", "F3[e1,e2]/(e1^2,e2^2)"}) {
    auto R = parse_ring(rs);
    Rng rng(1001);
    for (int i = 0; i < 500; ++i) {
      LaurentSeries f = random_invertible_series(*R, rng);
      const int P = 5;
      LaurentSeries g = invert_series(f, P);
      LaurentSeries prod = f * g;
      REQUIRE(prod.prec() >= P + std::min(0, f.floor_bound()));
      for (int d = -20; d < prod.prec(); ++d)
        if (prod.known(d)) {
          if (d == 0)
            CHECK(prod.at(d) == RingElement::one(*R));
          else
            CHECK(prod.at(d).is_zero());
        }
    }
  }
}

TEST_CASE("precision is prefix stable") {
  auto R = parse_ring("Q[e]/(e^2)");
  Rng rng(555);
  for (int i = 0; i < 100; ++i) {
    LaurentSeries f = random_invertible_series(*R, rng);
    LaurentSeries g1 = invert_series(f, 4);
    LaurentSeries g2 = invert_series(f, 8);
    CHECK(g2.truncated(4) == g1);
  }
}
