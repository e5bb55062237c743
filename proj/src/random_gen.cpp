#include "dloop/random_gen.hpp"

namespace dloop {

namespace {

Rational random_scalar(const TestRing& R, Rng& rng, bool nonzero) {
  long p = R.field().characteristic();
  for (int tries = 0; tries < 64; ++tries) {
    long v;
    if (p == 0)
      v = static_cast<long>(rng() % 7) - 3;
    else
      v = static_cast<long>(rng() % static_cast<unsigned long>(p));
    if (v == 0 && nonzero) continue;
    return Rational(v);
  }
  return Rational(1);
}

}  // namespace

RingElement random_element(const TestRing& R, Rng& rng, int density) {
  RingElement e(R);
  for (size_t f = 0; f < R.num_factors(); ++f) {
    const auto& basis = R.factors()[f].basis();
    for (int k = 0; k < density; ++k) {
      const Monomial& m = basis[rng() % basis.size()];
      e.set_term(f, m, random_scalar(R, rng, false));
    }
  }
  return e;
}

RingElement random_nilpotent(const TestRing& R, Rng& rng) {
  RingElement e = random_element(R, rng);
  // drop constant terms
  RingElement out(R);
  for (size_t f = 0; f < R.num_factors(); ++f)
    for (const auto& [m, c] : e.comp(f))
      if (total_degree(m) > 0) out.set_term(f, m, c);
  return out;
}

RingElement random_unit(const TestRing& R, Rng& rng) {
  RingElement n = random_nilpotent(R, rng);
  RingElement c(R);
  for (size_t f = 0; f < R.num_factors(); ++f)
    c.set_term(f, Monomial(R.factors()[f].gens().size(), 0), random_scalar(R, rng, true));
  return c + n;
}

LaurentSeries random_invertible_series(const TestRing& R, Rng& rng, int lo, int hi) {
  LaurentSeries f(R);
  for (size_t fac = 0; fac < R.num_factors(); ++fac) {
    RingElement mask = RingElement::factor_unit(R, fac);
    int span = hi - lo + 1;
    int d = lo + static_cast<int>(rng() % static_cast<unsigned>(span));
    f = f + LaurentSeries::monomial(R, random_unit(R, rng) * mask, d);
    for (int deg = lo; deg <= hi; ++deg) {
      if (deg == d || rng() % 3 != 0) continue;
      RingElement c = (deg < d) ? random_nilpotent(R, rng) : random_element(R, rng);
      f = f + LaurentSeries::monomial(R, c * mask, deg);
    }
  }
  return f;
}

IterSeries random_invertible_iter(const TestRing& R, Rng& rng, int t_lo, int t_hi, int s_lo,
                                  int s_hi) {
  IterSeries f(R);
  for (size_t fac = 0; fac < R.num_factors(); ++fac) {
    RingElement mask = RingElement::factor_unit(R, fac);
    int span = s_hi - s_lo + 1;
    int d = s_lo + static_cast<int>(rng() % static_cast<unsigned>(span));
    // unit slice at s^d: invertible in R((t)) on this factor
    LaurentSeries unit_slice = random_invertible_series(R, rng, t_lo, t_hi).scaled(mask);
    f = f + IterSeries::from_inner(unit_slice, d);
    for (int j = s_lo; j <= s_hi; ++j) {
      if (j == d || rng() % 3 != 0) continue;
      LaurentSeries sl(R);
      for (int i = t_lo; i <= t_hi; ++i) {
        if (rng() % 3 != 0) continue;
        RingElement c = (j < d) ? random_nilpotent(R, rng) : random_element(R, rng);
        sl.set_coeff(i, c * mask);
      }
      if (!sl.is_known_zero()) f = f + IterSeries::from_inner(sl, j);
    }
  }
  return f;
}

IterSeries random_subgroup_unit(const TestRing& R, Rng& rng, SubringTag tag, int t_hi, int s_hi,
                                int neg_span) {
  IterSeries q(R);
  auto random_jet = [&](int lo_t) {
    LaurentSeries sl(R);
    for (int i = lo_t; i <= t_hi; ++i)
      if (rng() % 3 == 0) sl.set_coeff(i, random_element(R, rng));
    return sl;
  };
  switch (tag) {
    case SubringTag::JJ: {
      q = IterSeries::monomial(R, random_unit(R, rng), 0, 0);
      for (int j = 0; j <= s_hi; ++j) {
        LaurentSeries sl = random_jet(j == 0 ? 1 : 0);
        if (!sl.is_known_zero()) q = q + IterSeries::from_inner(sl, j);
      }
      return q;
    }
    case SubringTag::LJ: {
      // slice 0 invertible in R((t)); higher slices arbitrary with negatives
      LaurentSeries s0 = random_invertible_series(R, rng, -neg_span, t_hi);
      q = IterSeries::from_inner(s0, 0);
      for (int j = 1; j <= s_hi; ++j) {
        LaurentSeries sl = random_jet(-neg_span);
        if (!sl.is_known_zero()) q = q + IterSeries::from_inner(sl, j);
      }
      return q;
    }
    case SubringTag::JL: {
      // s^b * (unit of R[[t]][[s]]) with nilpotent lower slices in R[[t]]
      int b = -neg_span + static_cast<int>(rng() % static_cast<unsigned>(2 * neg_span + 1));
      q = IterSeries::monomial(R, random_unit(R, rng), 0, b);
      LaurentSeries j0 = random_jet(1);
      if (!j0.is_known_zero()) q = q + IterSeries::from_inner(j0, b);
      for (int j = b + 1; j <= b + s_hi; ++j) {
        LaurentSeries sl = random_jet(0);
        if (!sl.is_known_zero()) q = q + IterSeries::from_inner(sl, j);
      }
      {
        // one nilpotent lower slice keeps it a unit of R[[t]]((s))
        LaurentSeries sl(R);
        for (int i = 0; i <= t_hi; ++i)
          if (rng() % 3 == 0) sl.set_coeff(i, random_nilpotent(R, rng));
        if (!sl.is_known_zero()) q = q + IterSeries::from_inner(sl, b - 1);
      }
      return q;
    }
    case SubringTag::O2: {
      // slice 0 a unit of R[[t]]; positive slices unrestricted in t
      q = IterSeries::monomial(R, random_unit(R, rng), 0, 0);
      LaurentSeries j0 = random_jet(1);
      if (!j0.is_known_zero()) q = q + IterSeries::from_inner(j0, 0);
      for (int j = 1; j <= s_hi; ++j) {
        LaurentSeries sl = random_jet(-neg_span);
        if (!sl.is_known_zero()) q = q + IterSeries::from_inner(sl, j);
      }
      return q;
    }
    case SubringTag::LL:
      return random_invertible_iter(R, rng);
  }
  return IterSeries::one(R);
}

IterSeries random_lsigma(const TestRing& R, Rng& rng, int max_tail, int t_lo, int t_hi) {
  int m = static_cast<int>(rng() % 3) - 1;
  IterSeries f = IterSeries::monomial(R, RingElement::one(R), 0, m);
  int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_tail));
  for (int l = 1; l <= n; ++l) {
    LaurentSeries sl(R);
    for (int i = t_lo; i <= t_hi; ++i)
      if (rng() % 2 == 0) sl.set_coeff(i, random_nilpotent(R, rng));
    if (!sl.is_known_zero()) f = f + IterSeries::from_inner(sl, m - l);
  }
  return f;
}

}  // namespace dloop
