#include "dloop/series.hpp"

#include <algorithm>
#include <sstream>

namespace dloop {

int prec_add(int a, int b) {
  if (a == kPrecExact || b == kPrecExact) return kPrecExact;
  long s = static_cast<long>(a) + b;
  if (s >= kPrecExact) return kPrecExact - 1;
  if (s <= std::numeric_limits<int>::min()) return std::numeric_limits<int>::min() + 1;
  return static_cast<int>(s);
}

LaurentSeries::LaurentSeries(const TestRing& ring, char var)
    : ring_(&ring), var_(var), prec_(kPrecExact) {}

LaurentSeries LaurentSeries::scalar(const TestRing& ring, const Rational& c, char var) {
  LaurentSeries s(ring, var);
  RingElement e = RingElement::scalar(ring, c);
  if (!e.is_zero()) s.c_.insert_or_assign(0, e);
  return s;
}

LaurentSeries LaurentSeries::monomial(const TestRing& ring, const RingElement& c, int deg, char var) {
  LaurentSeries s(ring, var);
  if (!c.is_zero()) s.c_.insert_or_assign(deg, c);
  return s;
}

RingElement LaurentSeries::at(int d) const {
  auto it = c_.find(d);
  if (it != c_.end()) return it->second;
  if (!known(d)) throw indeterminate_error("coefficient beyond precision");
  return RingElement::zero(*ring_);
}

int LaurentSeries::floor_bound() const {
  if (!c_.empty()) return c_.begin()->first;
  return prec_;  // support, if any, starts at or above prec
}

int LaurentSeries::top_degree() const {
  if (c_.empty()) throw std::logic_error("top_degree of empty series");
  return c_.rbegin()->first;
}

void LaurentSeries::check_compat(const LaurentSeries& o) const {
  if (ring_ != o.ring_) throw ring_mismatch("series over different rings");
  if (var_ != o.var_) throw ring_mismatch("series in different variables");
}

LaurentSeries LaurentSeries::operator+(const LaurentSeries& o) const {
  check_compat(o);
  LaurentSeries r(*ring_, var_);
  r.prec_ = std::min(prec_, o.prec_);
  r.c_ = c_;
  for (const auto& [d, c] : o.c_) {
    auto it = r.c_.find(d);
    if (it == r.c_.end()) {
      r.c_.insert_or_assign(d, c);
    } else {
      RingElement v = it->second + c;
      if (v.is_zero())
        r.c_.erase(it);
      else
        it->second = v;
    }
  }
  if (r.prec_ != kPrecExact)
    r.c_.erase(r.c_.lower_bound(r.prec_), r.c_.end());
  return r;
}

LaurentSeries LaurentSeries::operator-(const LaurentSeries& o) const { return *this + (-o); }

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r(*ring_, var_);
  r.prec_ = prec_;
  for (const auto& [d, c] : c_) r.c_.insert_or_assign(d, -c);
  return r;
}

LaurentSeries LaurentSeries::operator*(const LaurentSeries& o) const {
  check_compat(o);
  LaurentSeries r(*ring_, var_);
  if (c_.empty() && exact()) return r;
  if (o.c_.empty() && o.exact()) return r;
  int p1 = exact() ? kPrecExact : prec_add(prec_, o.floor_bound());
  int p2 = o.exact() ? kPrecExact : prec_add(o.prec_, floor_bound());
  r.prec_ = std::min(p1, p2);
  for (const auto& [d1, c1] : c_)
    for (const auto& [d2, c2] : o.c_) {
      int d = d1 + d2;
      if (r.prec_ != kPrecExact && d >= r.prec_) continue;
      RingElement v = c1 * c2;
      if (v.is_zero()) continue;
      auto it = r.c_.find(d);
      if (it == r.c_.end()) {
        r.c_.insert_or_assign(d, v);
      } else {
        it->second = it->second + v;
        if (it->second.is_zero()) r.c_.erase(it);
      }
    }
  return r;
}

LaurentSeries LaurentSeries::scaled(const RingElement& c) const {
  LaurentSeries r(*ring_, var_);
  r.prec_ = prec_;
  for (const auto& [d, v] : c_) {
    RingElement w = v * c;
    if (!w.is_zero()) r.c_.insert_or_assign(d, w);
  }
  return r;
}

LaurentSeries LaurentSeries::shifted(int k) const {
  LaurentSeries r(*ring_, var_);
  r.prec_ = prec_add(prec_, k);
  for (const auto& [d, c] : c_) r.c_.insert_or_assign(d + k, c);
  return r;
}

LaurentSeries LaurentSeries::truncated(int prec) const {
  LaurentSeries r(*ring_, var_);
  r.prec_ = std::min(prec_, prec);
  for (const auto& [d, c] : c_)
    if (d < r.prec_) r.c_.insert_or_assign(d, c);
  return r;
}

LaurentSeries LaurentSeries::positive_part() const {
  LaurentSeries r(*ring_, var_);
  r.prec_ = prec_;
  for (const auto& [d, c] : c_)
    if (d >= 0) r.c_.insert_or_assign(d, c);
  return r;
}

LaurentSeries LaurentSeries::negative_part() const {
  LaurentSeries r(*ring_, var_);
  r.prec_ = (prec_ >= 0) ? kPrecExact : prec_;
  for (const auto& [d, c] : c_)
    if (d < 0) r.c_.insert_or_assign(d, c);
  return r;
}

LaurentSeries LaurentSeries::project(size_t f) const {
  LaurentSeries r(*ring_, var_);
  r.prec_ = prec_;
  for (const auto& [d, c] : c_) {
    RingElement v = c.project(f);
    if (!v.is_zero()) r.c_.insert_or_assign(d, v);
  }
  return r;
}

bool LaurentSeries::operator==(const LaurentSeries& o) const {
  return ring_ == o.ring_ && var_ == o.var_ && prec_ == o.prec_ && c_ == o.c_;
}

void LaurentSeries::set_coeff(int d, const RingElement& c) {
  if (prec_ != kPrecExact && d >= prec_) throw std::logic_error("coefficient beyond precision");
  if (c.is_zero())
    c_.erase(d);
  else
    c_.insert_or_assign(d, c);
}

void LaurentSeries::set_prec(int p) {
  prec_ = p;
  if (prec_ != kPrecExact) c_.erase(c_.lower_bound(prec_), c_.end());
}

bool LaurentSeries::is_nilpotent_exact() const {
  if (!exact()) return false;
  for (const auto& [d, c] : c_)
    if (!is_nilpotent(c).nilpotent) return false;
  return true;
}

std::string LaurentSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [d, c] : c_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    if (d != 0) os << "*" << var_ << "^" << d;
  }
  if (first) os << "0";
  if (!exact()) os << " + O(" << var_ << "^" << prec_ << ")";
  return os.str();
}

int UnitDecomposition::d_for_factor(size_t f) const {
  for (const auto& g : groups)
    for (size_t i : g.factors)
      if (i == f) return g.d;
  throw std::logic_error("factor not in decomposition");
}

UnitDecomposition unit_decompose(const LaurentSeries& f) {
  const TestRing& R = f.ring();
  std::map<int, std::vector<size_t>> by_d;
  for (size_t fac = 0; fac < R.num_factors(); ++fac) {
    std::optional<int> d;
    for (const auto& [deg, c] : f.terms()) {
      Rational ct = c.constant_term(fac);
      if (!R.field().is_zero(ct)) {
        d = deg;
        break;
      }
    }
    if (!d) {
      if (f.exact()) throw not_invertible("no unit coefficient in factor " + std::to_string(fac));
      throw indeterminate_error("no unit coefficient within precision window");
    }
    // coefficients below d must be nilpotent in this factor: their constant
    // terms vanish by the choice of d, and the factor ideal is monomial, so
    // zero constant term already certifies nilpotency
    by_d[*d].push_back(fac);
  }
  UnitDecomposition out;
  for (auto& [d, facs] : by_d) out.groups.push_back(UnitGroup{std::move(facs), d});
  return out;
}

namespace {

// inverse of one unit group at a given working length; may come back with a
// shorter precision than asked for, in which case the caller retries longer
LaurentSeries invert_group(const LaurentSeries& f, const UnitGroup& grp, int len) {
  const TestRing& R = f.ring();
  RingElement mask = RingElement::zero(R);
  for (size_t fac : grp.factors) mask = mask + RingElement::factor_unit(R, fac);
  int d = grp.d;
  LaurentSeries shifted = f.scaled(mask).shifted(-d);
  LaurentSeries eps = shifted.negative_part();
  if (!eps.exact()) throw indeterminate_error("nilpotent tail not fully known");
  LaurentSeries A = shifted - eps;  // jet part, unit constant term on the group
  int K = 1;
  if (!eps.empty()) {
    std::vector<RingElement> gens;
    for (const auto& [deg, c] : eps.terms()) {
      (void)deg;
      gens.push_back(c);
    }
    K = ideal_nilpotency(gens).index;
  }
  // power series inverse of A
  RingElement c0 = A.at(0);
  UnitInfo u = is_unit_ring(c0 + (RingElement::one(R) - mask));
  if (!u.unit) throw not_invertible("leading coefficient not a unit");
  RingElement c0inv = *u.inverse * mask;
  int avail = A.exact() ? len : std::min(len, A.prec());
  LaurentSeries Ainv(R, f.var());
  Ainv.set_prec(avail);
  std::vector<RingElement> inv;
  inv.push_back(c0inv);
  for (int n = 1; n < avail; ++n) {
    RingElement s = RingElement::zero(R);
    for (int k = 1; k <= n; ++k) s = s + A.at(k) * inv[static_cast<size_t>(n - k)];
    inv.push_back(-(c0inv * s));
  }
  for (int n = 0; n < avail; ++n) Ainv.set_coeff(n, inv[static_cast<size_t>(n)]);
  // (A + eps)^{-1} = sum_{k<K} (-Ainv*eps)^k * Ainv, finite by nilpotency
  LaurentSeries step = -(Ainv * eps);
  LaurentSeries term = LaurentSeries::monomial(R, mask, 0, f.var());
  LaurentSeries geo = LaurentSeries::zero(R, f.var());
  for (int k = 0; k < K; ++k) {
    geo = geo + term;
    term = term * step;
  }
  return (geo * Ainv).shifted(-d);
}

}  // namespace

LaurentSeries invert_series_best(const LaurentSeries& f, int len) {
  UnitDecomposition dec = unit_decompose(f);
  LaurentSeries acc = LaurentSeries::zero(f.ring(), f.var());
  for (const auto& grp : dec.groups)
    acc = acc + invert_group(f, grp, len + std::abs(grp.d));
  return acc;
}

LaurentSeries invert_series(const LaurentSeries& f, int prec) {
  int len = std::max(8, prec + 8);
  int last_prec = std::numeric_limits<int>::min();
  for (int attempt = 0; attempt < 24; ++attempt) {
    LaurentSeries acc = invert_series_best(f, len);
    if (acc.prec() >= prec) return acc.truncated(prec);
    if (acc.prec() <= last_prec) break;  // truncated input caps what is reachable
    last_prec = acc.prec();
    len *= 2;
  }
  throw indeterminate_error("inverse precision shortfall");
}

}  // namespace dloop
