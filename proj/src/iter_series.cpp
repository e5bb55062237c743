#include "dloop/iter_series.hpp"

#include <algorithm>
#include <sstream>

namespace dloop {

std::string to_string(SubringTag t) {
  switch (t) {
    case SubringTag::LL: return "LL";
    case SubringTag::LJ: return "LJ";
    case SubringTag::JL: return "JL";
    case SubringTag::JJ: return "JJ";
    case SubringTag::O2: return "O2";
  }
  return "?";
}

std::string subring_desc(SubringTag t, char inner, char outer) {
  std::string ti(1, inner), so(1, outer);
  switch (t) {
    case SubringTag::LL: return "R((" + ti + "))((" + so + "))";
    case SubringTag::LJ: return "R((" + ti + "))[[" + so + "]]";
    case SubringTag::JL: return "R[[" + ti + "]]((" + so + "))";
    case SubringTag::JJ: return "R[[" + ti + "," + so + "]]";
    case SubringTag::O2:
      return "R[[" + ti + "]] + sum_{i>0} R((" + ti + "))" + so + "^i";
  }
  return "?";
}

IterSeries::IterSeries(const TestRing& ring) : ring_(&ring), oprec_(kPrecExact) {}

IterSeries IterSeries::scalar(const TestRing& ring, const Rational& c) {
  IterSeries s(ring);
  LaurentSeries inner = LaurentSeries::scalar(ring, c);
  if (!inner.empty()) s.c_.emplace(0, inner);
  return s;
}

IterSeries IterSeries::monomial(const TestRing& ring, const RingElement& c, int tdeg, int sdeg) {
  IterSeries s(ring);
  if (!c.is_zero()) s.c_.emplace(sdeg, LaurentSeries::monomial(ring, c, tdeg));
  return s;
}

IterSeries IterSeries::from_inner(const LaurentSeries& inner, int sdeg) {
  IterSeries s(inner.ring());
  if (!(inner.empty() && inner.exact())) s.c_.emplace(sdeg, inner);
  return s;
}

bool IterSeries::exact() const {
  if (!outer_exact()) return false;
  for (const auto& [j, sl] : c_)
    if (!sl.exact()) return false;
  return true;
}

LaurentSeries IterSeries::slice(int j) const {
  auto it = c_.find(j);
  if (it != c_.end()) return it->second;
  if (!known_slice(j)) throw indeterminate_error("slice beyond outer precision");
  return LaurentSeries::zero(*ring_);
}

RingElement IterSeries::coeff(int tdeg, int sdeg) const { return slice(sdeg).at(tdeg); }

bool IterSeries::coeff_known(int tdeg, int sdeg) const {
  if (!known_slice(sdeg)) return false;
  auto it = c_.find(sdeg);
  if (it == c_.end()) return true;
  return it->second.known(tdeg);
}

bool IterSeries::is_known_zero() const {
  if (!outer_exact()) return false;
  for (const auto& [j, sl] : c_)
    if (!sl.is_known_zero()) return false;
  return true;
}

int IterSeries::outer_floor_bound() const {
  if (!c_.empty()) return c_.begin()->first;
  return oprec_;
}

int IterSeries::outer_top() const {
  if (c_.empty()) throw std::logic_error("outer_top of empty series");
  return c_.rbegin()->first;
}

void IterSeries::check_compat(const IterSeries& o) const {
  if (ring_ != o.ring_) throw ring_mismatch("series over different rings");
}

void IterSeries::prune() {
  for (auto it = c_.begin(); it != c_.end();) {
    if (it->second.is_known_zero())
      it = c_.erase(it);
    else
      ++it;
  }
  if (oprec_ != kPrecExact) c_.erase(c_.lower_bound(oprec_), c_.end());
}

IterSeries IterSeries::operator+(const IterSeries& o) const {
  check_compat(o);
  IterSeries r(*ring_);
  r.oprec_ = std::min(oprec_, o.oprec_);
  r.c_ = c_;
  for (const auto& [j, sl] : o.c_) {
    auto it = r.c_.find(j);
    if (it == r.c_.end())
      r.c_.emplace(j, sl);
    else
      it->second = it->second + sl;
  }
  r.prune();
  return r;
}

IterSeries IterSeries::operator-(const IterSeries& o) const { return *this + (-o); }

IterSeries IterSeries::operator-() const {
  IterSeries r(*ring_);
  r.oprec_ = oprec_;
  for (const auto& [j, sl] : c_) r.c_.emplace(j, -sl);
  return r;
}

IterSeries IterSeries::operator*(const IterSeries& o) const {
  check_compat(o);
  IterSeries r(*ring_);
  if ((c_.empty() && outer_exact()) || (o.c_.empty() && o.outer_exact())) return r;
  int p1 = outer_exact() ? kPrecExact : prec_add(oprec_, o.outer_floor_bound());
  int p2 = o.outer_exact() ? kPrecExact : prec_add(o.oprec_, outer_floor_bound());
  r.oprec_ = std::min(p1, p2);
  for (const auto& [j1, s1] : c_)
    for (const auto& [j2, s2] : o.c_) {
      int j = j1 + j2;
      if (r.oprec_ != kPrecExact && j >= r.oprec_) continue;
      LaurentSeries prod = s1 * s2;
      auto it = r.c_.find(j);
      if (it == r.c_.end())
        r.c_.emplace(j, prod);
      else
        it->second = it->second + prod;
    }
  r.prune();
  return r;
}

IterSeries IterSeries::scaled(const RingElement& c) const {
  IterSeries r(*ring_);
  r.oprec_ = oprec_;
  for (const auto& [j, sl] : c_) r.c_.emplace(j, sl.scaled(c));
  r.prune();
  return r;
}

IterSeries IterSeries::shifted_outer(int k) const {
  IterSeries r(*ring_);
  r.oprec_ = prec_add(oprec_, k);
  for (const auto& [j, sl] : c_) r.c_.emplace(j + k, sl);
  return r;
}

IterSeries IterSeries::shifted_inner(int k) const {
  IterSeries r(*ring_);
  r.oprec_ = oprec_;
  for (const auto& [j, sl] : c_) r.c_.emplace(j, sl.shifted(k));
  return r;
}

IterSeries IterSeries::truncated_outer(int p) const {
  IterSeries r(*ring_);
  r.oprec_ = std::min(oprec_, p);
  for (const auto& [j, sl] : c_)
    if (j < r.oprec_) r.c_.emplace(j, sl);
  return r;
}

IterSeries IterSeries::truncated_inner(int p) const {
  IterSeries r(*ring_);
  r.oprec_ = oprec_;
  for (const auto& [j, sl] : c_) r.c_.emplace(j, sl.truncated(p));
  r.prune();
  return r;
}

IterSeries IterSeries::outer_positive_part() const {
  IterSeries r(*ring_);
  r.oprec_ = oprec_;
  for (const auto& [j, sl] : c_)
    if (j >= 0) r.c_.emplace(j, sl);
  return r;
}

IterSeries IterSeries::outer_negative_part() const {
  IterSeries r(*ring_);
  r.oprec_ = (oprec_ >= 0) ? kPrecExact : oprec_;
  for (const auto& [j, sl] : c_)
    if (j < 0) r.c_.emplace(j, sl);
  return r;
}

IterSeries IterSeries::project(size_t f) const {
  IterSeries r(*ring_);
  r.oprec_ = oprec_;
  for (const auto& [j, sl] : c_) r.c_.emplace(j, sl.project(f));
  r.prune();
  return r;
}

bool IterSeries::operator==(const IterSeries& o) const {
  return ring_ == o.ring_ && oprec_ == o.oprec_ && c_ == o.c_;
}

void IterSeries::set_slice(int j, const LaurentSeries& s) {
  if (oprec_ != kPrecExact && j >= oprec_) throw std::logic_error("slice beyond outer precision");
  if (s.is_known_zero())
    c_.erase(j);
  else
    c_.insert_or_assign(j, s);
}

void IterSeries::set_outer_prec(int p) {
  oprec_ = p;
  if (oprec_ != kPrecExact) c_.erase(c_.lower_bound(oprec_), c_.end());
}

std::string IterSeries::str() const {
  std::ostringstream os;
  bool first = true;
  int min_inner_prec = kPrecExact;
  for (const auto& [j, sl] : c_) {
    min_inner_prec = std::min(min_inner_prec, sl.prec());
    for (const auto& [i, c] : sl.terms()) {
      if (!first) os << " + ";
      first = false;
      os << c.str();
      if (i != 0) os << "*t^" << i;
      if (j != 0) os << "*s^" << j;
    }
  }
  if (first) os << "0";
  if (min_inner_prec != kPrecExact) os << " + O(t^" << min_inner_prec << ")";
  if (!outer_exact()) os << " + O(s^" << oprec_ << ")";
  return os.str();
}

namespace {

bool position_constrained(SubringTag tag, int i, int j) {
  switch (tag) {
    case SubringTag::LL: return false;
    case SubringTag::LJ: return j < 0;
    case SubringTag::JL: return i < 0;
    case SubringTag::JJ: return i < 0 || j < 0;
    case SubringTag::O2: return j < 0 || (j == 0 && i < 0);
  }
  return false;
}

}  // namespace

Tri membership(const IterSeries& f, SubringTag tag) {
  // visible violations first
  for (const auto& [j, sl] : f.slices())
    for (const auto& [i, c] : sl.terms()) {
      (void)c;
      if (position_constrained(tag, i, j)) return Tri::False;
    }
  if (tag == SubringTag::LL) return Tri::True;
  // unknown outer slices j >= oprec: indeterminate when they contain
  // constrained positions
  if (!f.outer_exact()) {
    bool outer_constrains = false;
    switch (tag) {
      case SubringTag::LJ:
        outer_constrains = f.outer_prec() < 0;  // unknown j's include j < 0
        break;
      case SubringTag::JL:
      case SubringTag::JJ:
        outer_constrains = true;  // every unknown slice has i < 0 positions
        break;
      case SubringTag::O2:
        outer_constrains = f.outer_prec() <= 0;
        break;
      default:
        break;
    }
    if (outer_constrains) return Tri::Indeterminate;
  }
  // unknown inner regions of stored slices
  for (const auto& [j, sl] : f.slices()) {
    if (sl.exact()) continue;
    bool inner_constrains = false;
    switch (tag) {
      case SubringTag::JL:
      case SubringTag::JJ:
        inner_constrains = sl.prec() < 0;
        break;
      case SubringTag::O2:
        inner_constrains = (j == 0) && sl.prec() < 0;
        break;
      default:
        break;
    }
    if (inner_constrains) return Tri::Indeterminate;
  }
  return Tri::True;
}

Tri membership_on_window(const IterSeries& f, SubringTag tag, const Window& w) {
  Tri out = Tri::True;
  for (int j = w.s_lo; j <= w.s_hi; ++j)
    for (int i = w.t_lo; i <= w.t_hi; ++i) {
      if (!position_constrained(tag, i, j)) continue;
      if (!f.coeff_known(i, j)) {
        out = Tri::Indeterminate;
        continue;
      }
      if (!f.coeff(i, j).is_zero()) return Tri::False;
    }
  return out;
}

UnitDecomposition unit_decompose_outer(const IterSeries& f) {
  const TestRing& R = f.ring();
  std::map<int, std::vector<size_t>> by_d;
  for (size_t fac = 0; fac < R.num_factors(); ++fac) {
    std::optional<int> d;
    for (const auto& [j, sl] : f.slices()) {
      LaurentSeries pr = sl.project(fac);
      if (pr.empty()) continue;
      // a B-coefficient is a unit iff it has a unit coefficient above a
      // nilpotent tail, i.e. some coefficient has nonzero constant term
      bool unit = false;
      for (const auto& [i, c] : pr.terms()) {
        (void)i;
        if (!R.field().is_zero(c.constant_term(fac))) {
          unit = true;
          break;
        }
      }
      if (unit) {
        d = j;
        break;
      }
      // otherwise all coefficients in this slice must be nilpotent, which for
      // exact slices is exactly "all constant terms vanish"; unknown inner
      // tails keep nilpotency undecided
      if (!pr.exact()) throw indeterminate_error("inner-truncated lower slice");
    }
    if (!d) {
      if (f.outer_exact()) throw not_invertible("no unit slice in factor " + std::to_string(fac));
      throw indeterminate_error("no unit slice within outer precision");
    }
    by_d[*d].push_back(fac);
  }
  UnitDecomposition out;
  for (auto& [d, facs] : by_d) out.groups.push_back(UnitGroup{std::move(facs), d});
  return out;
}

IterSeries invert_full(const IterSeries& f, int t_prec, int s_prec) {
  const TestRing& R = f.ring();
  // fast path: single monomial with unit coefficient inverts exactly
  if (f.outer_exact() && f.slices().size() == 1) {
    const auto& [j, sl] = *f.slices().begin();
    if (sl.exact() && sl.terms().size() == 1) {
      const auto& [i, c] = *sl.terms().begin();
      UnitInfo u = is_unit_ring(c);
      if (u.unit) return IterSeries::monomial(R, *u.inverse, -i, -j);
    }
  }
  UnitDecomposition dec = unit_decompose_outer(f);
  IterSeries acc = IterSeries::zero(R);
  for (const auto& grp : dec.groups) {
    RingElement mask = RingElement::zero(R);
    for (size_t fac : grp.factors) mask = mask + RingElement::factor_unit(R, fac);
    IterSeries g = f.scaled(mask).shifted_outer(-grp.d);
    // g = C + lower nilpotent tail + positive part, C a B-unit at s^0
    IterSeries tail = g.outer_negative_part();
    if (!tail.exact()) throw indeterminate_error("nilpotent outer tail not fully known");
    IterSeries jet = g - tail;
    // invert the jet part s-adically: jet = C*(1 + N), N in s*B[[s]]
    LaurentSeries C = jet.slice(0);
    LaurentSeries Cinv =
        invert_series_best(C + LaurentSeries::monomial(R, RingElement::one(R) - mask, 0),
                           t_prec + 8)
            .scaled(mask);
    IterSeries N =
        (jet * IterSeries::from_inner(Cinv) - IterSeries::monomial(R, mask, 0, 0)).truncated_outer(s_prec + 2);
    IterSeries jetinv = IterSeries::monomial(R, mask, 0, 0);
    IterSeries term = jetinv;
    for (int k = 1; k < s_prec + 2; ++k) {
      term = (-(term * N)).truncated_outer(s_prec + 2);
      if (term.is_known_zero()) break;
      jetinv = jetinv + term;
    }
    jetinv = jetinv * IterSeries::from_inner(Cinv);
    // full inverse: (jet + tail)^{-1} = sum_k (-jetinv*tail)^k * jetinv
    int K = 1;
    if (!tail.is_known_zero()) {
      std::vector<RingElement> gens;
      for (const auto& [j2, sl] : tail.slices()) {
        (void)j2;
        for (const auto& [i2, c2] : sl.terms()) {
          (void)i2;
          gens.push_back(c2);
        }
      }
      K = ideal_nilpotency(gens).index;
    }
    IterSeries step = -(jetinv * tail);
    IterSeries t2 = IterSeries::monomial(R, mask, 0, 0);
    IterSeries geo = IterSeries::zero(R);
    for (int k = 0; k < K; ++k) {
      geo = geo + t2;
      t2 = t2 * step;
    }
    acc = acc + (geo * jetinv).shifted_outer(-grp.d);
  }
  return acc.truncated_outer(s_prec).truncated_inner(t_prec);
}

}  // namespace dloop
