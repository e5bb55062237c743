#include <doctest.h>

#include "dloop/expr.hpp"

using namespace dloop;

TEST_CASE("ring literals parse and print back") {
  for (const char* rs : {"Q", "F2", "Q[e]/(e^2)", "F3[e1,e2]/(e1^2,e2^2)", "Q[e]/(e^2) x Q",
                         "Q[a,b]/(a^3,b^2,a*b)"}) {
    auto R = parse_ring(rs);
    auto R2 = parse_ring(ring_str(*R));
    CHECK(ring_str(*R) == ring_str(*R2));
  }
  CHECK(parse_ring("QxQ")->num_factors() == 2);
  CHECK_THROWS_AS(parse_ring("Q[t]/(t^2)"), parse_error);
  CHECK_THROWS_AS(parse_ring("Z[e]/(e^2)"), parse_error);
  CHECK_THROWS_AS(parse_ring("Q[e]/(f^2)"), parse_error);
  CHECK_THROWS_AS(parse_ring("F4[e]/(e^2)"), std::invalid_argument);
}

TEST_CASE("series expressions and canonical round trips") {
  auto R = parse_ring("Q[e]/(e^2)");
  for (const char* ex :
       {"1 + e*t^-1", "-2/5 + t^3*s^-2", "(1 - e)*t^-1", "e*t^-1*s^2 + 3*s^4", "0"}) {
    IterSeries v = parse_series(ex, *R);
    std::string c1 = canonical_str(v);
    IterSeries v2 = parse_series(c1, *R);
    CHECK(v == v2);
    CHECK(canonical_str(v2) == c1);
  }
  // x and y alias the inner and outer variables
  CHECK(parse_series("x^2*y", *R) == parse_series("t^2*s", *R));
  // inv of a unit composes with multiplication
  IterSeries f = parse_series("1 + t", *R);
  IterSeries g = parse_series("inv(1 + t)", *R, 6, 4);
  IterSeries prod = f * g;
  CHECK(prod.coeff(0, 0) == RingElement::one(*R));
  CHECK(prod.coeff(3, 0).is_zero());
}

TEST_CASE("tuples select ring factors") {
  auto R = parse_ring("Q x Q[e]/(e^2)");
  IterSeries v = parse_series("(1, e)", *R);
  CHECK(v.coeff(0, 0).constant_term(0) == 1);
  CHECK(v.coeff(0, 0).constant_term(1) == 0);
  IterSeries w = parse_series("(1,0) + (0,1)*t", *R);
  CHECK(w.coeff(0, 0) == RingElement::factor_unit(*R, 0));
  CHECK(w.coeff(1, 0) == RingElement::factor_unit(*R, 1));
  CHECK_THROWS_AS(parse_series("(1,2,3)", *R), parse_error);
  // ambiguous generators are resolved by tuple position
  auto R2 = parse_ring("Q[e]/(e^2) x Q[e]/(e^3)");
  IterSeries u = parse_series("(e, e^2)", *R2);
  CHECK_FALSE(u.coeff(0, 0).comp(0).empty());
  CHECK_FALSE(u.coeff(0, 0).comp(1).empty());
  CHECK_THROWS_AS(parse_series("e", *R2), parse_error);
}

TEST_CASE("truncation markers parse") {
  auto R = parse_ring("Q");
  IterSeries v = parse_series("1 + t + O(t^4)", *R);
  CHECK_FALSE(v.slice(0).exact());
  CHECK(v.slice(0).prec() == 4);
  IterSeries w = parse_series("1 + O(s^3)", *R);
  CHECK(w.outer_prec() == 3);
}
