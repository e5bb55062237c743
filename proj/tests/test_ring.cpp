#include <doctest.h>

#include <random>

#include "dloop/expr.hpp"
#include "dloop/random_gen.hpp"
#include "dloop/ring.hpp"

using namespace dloop;

namespace {

RingElement gen(const TestRing& R, const std::string& name) {
  for (size_t f = 0; f < R.num_factors(); ++f) {
    const auto& gs = R.factors()[f].gens();
    for (size_t g = 0; g < gs.size(); ++g)
      if (gs[g] == name) return RingElement::generator(R, f, g);
  }
  throw std::runtime_error("no such generator");
}

}  // namespace

TEST_CASE("dual numbers: defining relation and units") {
  auto R = parse_ring("Q[e]/(e^2)");
  RingElement e = gen(*R, "e");
  CHECK((e * e).is_zero());
  RingElement one = RingElement::one(*R);
  CHECK((one + e) * (one - e) == one);

  auto ni = is_nilpotent(e);
  CHECK(ni.nilpotent);
  CHECK(*ni.index == 2);
  CHECK_FALSE(is_nilpotent(one + e).nilpotent);

  auto u = is_unit_ring(one + e);
  CHECK(u.unit);
  CHECK(*u.inverse == one - e);
  CHECK_FALSE(is_unit_ring(e).unit);
}

TEST_CASE("two dual generators: square of the sum") {
  auto R = parse_ring("Q[e1,e2]/(e1^2,e2^2)");
  RingElement e1 = gen(*R, "e1"), e2 = gen(*R, "e2");
  RingElement sq = (e1 + e2) * (e1 + e2);
  CHECK(sq == (e1 * e2).scaled(2));
  auto ni = is_nilpotent(e1 + e2);
  CHECK(ni.nilpotent);
  CHECK(*ni.index == 3);

  // characteristic 2 collapses the cross term
  auto R2 = parse_ring("F2[e1,e2]/(e1^2,e2^2)");
  RingElement f1 = gen(*R2, "e1"), f2 = gen(*R2, "e2");
  CHECK(((f1 + f2) * (f1 + f2)).is_zero());
  CHECK(*is_nilpotent(f1 + f2).index == 2);
}

TEST_CASE("unit inverse with nilpotent correction") {
  auto R = parse_ring("Q[e1,e2]/(e1^2,e2^2)");
  RingElement n = gen(*R, "e1") * gen(*R, "e2");
  RingElement a = RingElement::scalar(*R, 2) + n;
  auto u = is_unit_ring(a);
  REQUIRE(u.unit);
  // (2+n)^{-1} = 1/2 - n/4 for n^2 = 0
  RingElement expect = RingElement::scalar(*R, Rational(1) / 2) + n.scaled(Rational(-1) / 4);
  CHECK(*u.inverse == expect);
  CHECK(a * *u.inverse == RingElement::one(*R));
}

TEST_CASE("ideal nilpotency indices") {
  auto R = parse_ring("Q[e]/(e^2)");
  CHECK(ideal_nilpotency({gen(*R, "e")}).index == 2);
  auto R2 = parse_ring("Q[e1,e2]/(e1^2,e2^2)");
  CHECK(ideal_nilpotency({gen(*R2, "e1"), gen(*R2, "e2")}).index == 3);
  CHECK(ideal_nilpotency({}).index == 1);
  CHECK_THROWS_AS(ideal_nilpotency({RingElement::one(*R)}), not_invertible);
  // minimality: some (Q-1)-fold product is nonzero
  RingElement prod = gen(*R2, "e1") * gen(*R2, "e2");
  CHECK_FALSE(prod.is_zero());
}

TEST_CASE("factor splitting and reassembly") {
  auto R = parse_ring("QxQ");
  IterSeries v = parse_series("(3, 5)", *R);
  RingElement a = v.coeff(0, 0);
  auto parts = split_factors(a);
  REQUIRE(parts.size() == 2);
  RingElement sum = parts[0] + parts[1];
  CHECK(sum == a);
  // 1 projects to 1 in every factor
  auto ones = split_factors(RingElement::one(*R));
  for (size_t f = 0; f < ones.size(); ++f) CHECK(ones[f] == RingElement::factor_unit(*R, f));
  // mixed product ring
  auto R3 = parse_ring("Q x Q[e]/(e^2)");
  IterSeries w = parse_series("(1, e)", *R3);
  auto p3 = split_factors(w.coeff(0, 0));
  CHECK(p3[0] == RingElement::factor_unit(*R3, 0));
  CHECK(p3[1] == gen(*R3, "e"));
}

TEST_CASE("ring axioms on random triples") {
  for (const char* rs : {"Q[e]/(e^2)", "F3[e1,e2]/(e1^2,e2^2)", "Q[u]/(u^3) x Q"}) {
    auto R = parse_ring(rs);
    Rng rng(12345);
    for (int i = 0; i < 1000; ++i) {
      RingElement a = random_element(*R, rng), b = random_element(*R, rng),
                  c = random_element(*R, rng);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
    }
  }
}

TEST_CASE("local dichotomy: nilpotent xor unit per factor") {
  auto R = parse_ring("F2[e]/(e^2)");
  for (const auto& a : enumerate_ring(*R)) {
    bool n = is_nilpotent(a).nilpotent;
    bool u = is_unit_ring(a).unit;
    CHECK(n != u);
  }
  // in products: unit iff unit in every factor
  auto RP = parse_ring("F2[e]/(e^2) x F2");
  for (const auto& a : enumerate_ring(*RP)) {
    bool u = is_unit_ring(a).unit;
    bool per_factor = true;
    for (size_t f = 0; f < RP->num_factors(); ++f)
      per_factor = per_factor && !RP->field().is_zero(a.constant_term(f));
    CHECK(u == per_factor);
  }
}

TEST_CASE("nilpotency index is sharp") {
  auto R = parse_ring("Q[u]/(u^4)");
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    RingElement a = random_nilpotent(*R, rng);
    auto ni = is_nilpotent(a);
    REQUIRE(ni.nilpotent);
    CHECK(a.pow(static_cast<unsigned>(*ni.index)).is_zero());
    if (*ni.index > 1) CHECK_FALSE(a.pow(static_cast<unsigned>(*ni.index - 1)).is_zero());
  }
}

TEST_CASE("mixed monomial relations") {
  auto R = parse_ring("Q[a,b]/(a^3,b^2,a^2*b)");
  RingElement a = gen(*R, "a"), b = gen(*R, "b");
  CHECK((a * a * b).is_zero());
  CHECK_FALSE((a * b).is_zero());
  CHECK_FALSE((a * a).is_zero());
  // surviving monomials are 1, a, a^2, b, a*b; the deepest has degree 2
  CHECK(R->factors()[0].nil_index() == 3);
}
