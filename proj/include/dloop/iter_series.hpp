#pragma once

#include "dloop/series.hpp"

namespace dloop {

// Distinguished subrings of R((t))((s)).
enum class SubringTag { LL, LJ, JL, JJ, O2 };
std::string to_string(SubringTag t);
std::string subring_desc(SubringTag t, char inner = 't', char outer = 's');

enum class Tri { True, False, Indeterminate };

// Iterated Laurent series: outer variable s with LaurentSeries coefficients in
// the inner variable t. Slices are stored when nonempty or inner-truncated;
// a missing slice below outer_prec() is exactly zero.
class IterSeries {
 public:
  explicit IterSeries(const TestRing& ring);
  static IterSeries zero(const TestRing& ring) { return IterSeries(ring); }
  static IterSeries scalar(const TestRing& ring, const Rational& c);
  static IterSeries one(const TestRing& ring) { return scalar(ring, 1); }
  static IterSeries monomial(const TestRing& ring, const RingElement& c, int tdeg, int sdeg);
  static IterSeries from_inner(const LaurentSeries& inner, int sdeg = 0);

  const TestRing& ring() const { return *ring_; }
  int outer_prec() const { return oprec_; }
  bool outer_exact() const { return oprec_ == kPrecExact; }
  // exact in both variables
  bool exact() const;
  const std::map<int, LaurentSeries>& slices() const { return c_; }
  bool known_slice(int j) const { return outer_exact() || j < oprec_; }
  LaurentSeries slice(int j) const;  // exact zero slice if unstored and known
  RingElement coeff(int tdeg, int sdeg) const;
  bool coeff_known(int tdeg, int sdeg) const;
  bool is_known_zero() const;
  int outer_floor_bound() const;
  int outer_top() const;

  IterSeries operator+(const IterSeries& o) const;
  IterSeries operator-(const IterSeries& o) const;
  IterSeries operator*(const IterSeries& o) const;
  IterSeries operator-() const;
  IterSeries scaled(const RingElement& c) const;
  IterSeries shifted_outer(int k) const;  // multiply by s^k
  IterSeries shifted_inner(int k) const;  // multiply by t^k
  IterSeries truncated_outer(int p) const;
  IterSeries truncated_inner(int p) const;
  IterSeries outer_positive_part() const;  // outer degrees >= 0
  IterSeries outer_negative_part() const;
  IterSeries project(size_t f) const;

  bool operator==(const IterSeries& o) const;
  bool operator!=(const IterSeries& o) const { return !(*this == o); }

  void set_slice(int j, const LaurentSeries& s);
  void set_outer_prec(int p);

  std::string str() const;

 private:
  void check_compat(const IterSeries& o) const;
  void prune();
  const TestRing* ring_;
  std::map<int, LaurentSeries> c_;
  int oprec_;
};

// Three-valued membership in a distinguished subring: False on a visible
// violation, Indeterminate when truncation hides a constrained position.
Tri membership(const IterSeries& f, SubringTag tag);
// Same test restricted to positions inside the given window.
struct Window {
  int t_lo, t_hi, s_lo, s_hi;
};
Tri membership_on_window(const IterSeries& f, SubringTag tag, const Window& w);

// Invertibility decomposition of f in B((s)), B = R((t)): per connected ring
// factor, the least outer degree with a B-unit coefficient and nilpotent
// B-coefficients below. Requires outer-exact input.
UnitDecomposition unit_decompose_outer(const IterSeries& f);

// Full inverse in R((t))((s)) to the requested precisions.
IterSeries invert_full(const IterSeries& f, int t_prec, int s_prec);

}  // namespace dloop
