#pragma once

#include <limits>

#include "dloop/ring.hpp"

namespace dloop {

// Degree bound arithmetic with an "exact / +infinity" sentinel.
constexpr int kPrecExact = std::numeric_limits<int>::max();
int prec_add(int a, int b);  // saturating at kPrecExact

// Laurent series in one variable over a TestRing. Stored coefficients are
// reduced and nonzero; every unstored degree below prec() is exactly zero,
// degrees at or above a finite prec() are unknown. prec() == kPrecExact means
// finite support known completely.
class LaurentSeries {
 public:
  explicit LaurentSeries(const TestRing& ring, char var = 't');
  static LaurentSeries zero(const TestRing& ring, char var = 't') { return LaurentSeries(ring, var); }
  static LaurentSeries scalar(const TestRing& ring, const Rational& c, char var = 't');
  static LaurentSeries one(const TestRing& ring, char var = 't') { return scalar(ring, 1, var); }
  static LaurentSeries monomial(const TestRing& ring, const RingElement& c, int deg, char var = 't');

  const TestRing& ring() const { return *ring_; }
  char var() const { return var_; }
  int prec() const { return prec_; }
  bool exact() const { return prec_ == kPrecExact; }
  const std::map<int, RingElement>& terms() const { return c_; }
  bool known(int d) const { return exact() || d < prec_; }
  // zero if unstored and known; throws indeterminate_error if unknown
  RingElement at(int d) const;
  bool is_known_zero() const { return c_.empty() && exact(); }
  // lowest possible support degree (kPrecExact when identically zero)
  int floor_bound() const;
  int top_degree() const;  // highest stored degree (requires nonempty)
  bool empty() const { return c_.empty(); }

  LaurentSeries operator+(const LaurentSeries& o) const;
  LaurentSeries operator-(const LaurentSeries& o) const;
  LaurentSeries operator*(const LaurentSeries& o) const;
  LaurentSeries operator-() const;
  LaurentSeries scaled(const RingElement& c) const;
  LaurentSeries shifted(int k) const;       // multiply by t^k
  LaurentSeries truncated(int prec) const;  // drop degrees >= prec
  LaurentSeries positive_part() const;      // degrees >= 0
  LaurentSeries negative_part() const;      // degrees < 0
  // keep only the given ring factor's component in every coefficient
  LaurentSeries project(size_t f) const;

  bool operator==(const LaurentSeries& o) const;
  bool operator!=(const LaurentSeries& o) const { return !(*this == o); }

  void set_coeff(int d, const RingElement& c);
  void set_prec(int p);

  // exact finite support and every coefficient nilpotent
  bool is_nilpotent_exact() const;
  std::string str() const;

 private:
  void check_compat(const LaurentSeries& o) const;
  const TestRing* ring_;
  char var_;
  std::map<int, RingElement> c_;
  int prec_;
};

struct UnitGroup {
  std::vector<size_t> factors;  // ring factor indices sharing the same d
  int d = 0;                    // least degree whose coefficient is a unit
};

// Lemma-style invertibility decomposition: per connected factor, the least
// degree d with unit coefficient and nilpotent coefficients below it; factors
// grouped by d (equal d's merged).
struct UnitDecomposition {
  std::vector<UnitGroup> groups;  // sorted by d
  int d_for_factor(size_t f) const;
};

UnitDecomposition unit_decompose(const LaurentSeries& f);
// g with f*g == 1 up to the requested precision
LaurentSeries invert_series(const LaurentSeries& f, int prec);
// same, but returns whatever precision a working length of `len` reaches
// (used inside reductions whose outer loops control the input precision)
LaurentSeries invert_series_best(const LaurentSeries& f, int len);

}  // namespace dloop
