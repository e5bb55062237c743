#include "dloop/ring.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dloop {

BaseField::BaseField(long p) : p_(p) {
  if (p < 0) throw std::invalid_argument("negative characteristic");
  if (p > 0) {
    if (p < 2) throw std::invalid_argument("characteristic must be prime");
    for (long d = 2; d * d <= p; ++d)
      if (p % d == 0) throw std::invalid_argument("characteristic must be prime");
  }
}

Rational BaseField::normalize(const Rational& a) const {
  if (p_ == 0) return a;
  // values in F_p are kept as integers in [0, p)
  boost::multiprecision::cpp_int num = numerator(a);
  boost::multiprecision::cpp_int den = denominator(a);
  boost::multiprecision::cpp_int pp(p_);
  boost::multiprecision::cpp_int n = num % pp;
  if (n < 0) n += pp;
  boost::multiprecision::cpp_int d = den % pp;
  if (d < 0) d += pp;
  if (d == 0) throw std::domain_error("division by p in F_p");
  if (d != 1) {
    // d^{-1} mod p by Fermat
    boost::multiprecision::cpp_int inv = 1, base = d, e = pp - 2;
    while (e > 0) {
      if ((e & 1) != 0) inv = inv * base % pp;
      base = base * base % pp;
      e >>= 1;
    }
    n = n * inv % pp;
  }
  return Rational(n);
}

Rational BaseField::inv(const Rational& a) const {
  Rational v = normalize(a);
  if (v == 0) throw not_invertible("scalar 0 has no inverse");
  if (p_ == 0) return 1 / v;
  return normalize(Rational(1) / v);
}

int total_degree(const Monomial& m) {
  int d = 0;
  for (unsigned e : m) d += static_cast<int>(e);
  return d;
}

bool divides(const Monomial& a, const Monomial& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

std::string monomial_str(const Monomial& m, const std::vector<std::string>& gens) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) os << "*";
    os << gens[i];
    if (m[i] > 1) os << "^" << m[i];
    first = false;
  }
  if (first) return "1";
  return os.str();
}

LocalFactor::LocalFactor(std::vector<std::string> gens, std::vector<Monomial> relations)
    : gens_(std::move(gens)), relations_(std::move(relations)) {
  for (const auto& r : relations_)
    if (r.size() != gens_.size()) throw std::invalid_argument("relation arity mismatch");
  // every generator needs a pure power in the ideal
  std::vector<unsigned> bound(gens_.size(), 0);
  for (size_t g = 0; g < gens_.size(); ++g) {
    for (const auto& r : relations_) {
      bool pure = r[g] > 0;
      for (size_t j = 0; pure && j < r.size(); ++j)
        if (j != g && r[j] > 0) pure = false;
      if (pure && (bound[g] == 0 || r[g] < bound[g])) bound[g] = r[g];
    }
    if (bound[g] == 0)
      throw std::invalid_argument("generator " + gens_[g] + " has no pure power relation");
  }
  // enumerate reduced monomials
  Monomial cur(gens_.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == gens_.size()) {
      if (!monomial_is_zero(cur)) basis_.push_back(cur);
      return;
    }
    for (unsigned e = 0; e < bound[i]; ++e) {
      cur[i] = e;
      rec(i + 1);
    }
    cur[i] = 0;
  };
  rec(0);
  std::sort(basis_.begin(), basis_.end());
  int maxdeg = 0;
  for (size_t i = 0; i < basis_.size(); ++i) {
    basis_pos_[basis_[i]] = static_cast<int>(i);
    maxdeg = std::max(maxdeg, total_degree(basis_[i]));
  }
  nil_index_ = maxdeg + 1;
}

bool LocalFactor::monomial_is_zero(const Monomial& m) const {
  for (const auto& r : relations_)
    if (divides(r, m)) return true;
  return false;
}

int LocalFactor::basis_index(const Monomial& m) const {
  auto it = basis_pos_.find(m);
  return it == basis_pos_.end() ? -1 : it->second;
}

TestRing::TestRing(BaseField field, std::vector<LocalFactor> factors)
    : field_(field), factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("ring needs at least one factor");
}

int TestRing::max_nil_index() const {
  int m = 1;
  for (const auto& f : factors_) m = std::max(m, f.nil_index());
  return m;
}

bool TestRing::is_field() const {
  return factors_.size() == 1 && factors_[0].gens().empty();
}

long TestRing::dimension() const {
  long d = 0;
  for (const auto& f : factors_) d += static_cast<long>(f.basis().size());
  return d;
}

RingElement::RingElement(const TestRing& ring) : ring_(&ring), comp_(ring.num_factors()) {}

RingElement RingElement::scalar(const TestRing& ring, const Rational& c) {
  RingElement r(ring);
  Rational v = ring.field().normalize(c);
  if (v != 0)
    for (size_t f = 0; f < ring.num_factors(); ++f)
      r.comp_[f][Monomial(ring.factors()[f].gens().size(), 0)] = v;
  return r;
}

RingElement RingElement::generator(const TestRing& ring, size_t factor, size_t gen) {
  RingElement r(ring);
  Monomial m(ring.factors()[factor].gens().size(), 0);
  m[gen] = 1;
  if (!ring.factors()[factor].monomial_is_zero(m)) r.comp_[factor][m] = 1;
  return r;
}

RingElement RingElement::factor_unit(const TestRing& ring, size_t factor) {
  RingElement r(ring);
  r.comp_[factor][Monomial(ring.factors()[factor].gens().size(), 0)] = 1;
  return r;
}

void RingElement::check_same(const RingElement& o) const {
  if (ring_ != o.ring_) throw ring_mismatch("ring mismatch");
}

bool RingElement::is_zero() const {
  for (const auto& c : comp_)
    if (!c.empty()) return false;
  return true;
}

bool RingElement::operator==(const RingElement& o) const {
  return ring_ == o.ring_ && comp_ == o.comp_;
}

Rational RingElement::constant_term(size_t f) const {
  Monomial one(ring_->factors()[f].gens().size(), 0);
  auto it = comp_[f].find(one);
  return it == comp_[f].end() ? Rational(0) : it->second;
}

RingElement RingElement::operator+(const RingElement& o) const {
  check_same(o);
  RingElement r(*ring_);
  const BaseField& k = ring_->field();
  for (size_t f = 0; f < comp_.size(); ++f) {
    r.comp_[f] = comp_[f];
    for (const auto& [m, c] : o.comp_[f]) {
      Rational v = k.add(r.comp_[f].count(m) ? r.comp_[f][m] : Rational(0), c);
      if (v == 0)
        r.comp_[f].erase(m);
      else
        r.comp_[f][m] = v;
    }
  }
  return r;
}

RingElement RingElement::operator-(const RingElement& o) const { return *this + (-o); }

RingElement RingElement::operator-() const {
  RingElement r(*ring_);
  const BaseField& k = ring_->field();
  for (size_t f = 0; f < comp_.size(); ++f)
    for (const auto& [m, c] : comp_[f]) r.comp_[f][m] = k.neg(c);
  return r;
}

RingElement RingElement::scaled(const Rational& c) const {
  RingElement r(*ring_);
  const BaseField& k = ring_->field();
  Rational cv = k.normalize(c);
  if (cv == 0) return r;
  for (size_t f = 0; f < comp_.size(); ++f)
    for (const auto& [m, v] : comp_[f]) {
      Rational w = k.mul(v, cv);
      if (w != 0) r.comp_[f][m] = w;
    }
  return r;
}

RingElement RingElement::operator*(const RingElement& o) const {
  check_same(o);
  RingElement r(*ring_);
  const BaseField& k = ring_->field();
  for (size_t f = 0; f < comp_.size(); ++f) {
    const LocalFactor& fac = ring_->factors()[f];
    for (const auto& [m1, c1] : comp_[f])
      for (const auto& [m2, c2] : o.comp_[f]) {
        Monomial m(m1.size());
        for (size_t i = 0; i < m.size(); ++i) m[i] = m1[i] + m2[i];
        if (fac.monomial_is_zero(m)) continue;
        Rational v = k.add(r.comp_[f].count(m) ? r.comp_[f][m] : Rational(0), k.mul(c1, c2));
        if (v == 0)
          r.comp_[f].erase(m);
        else
          r.comp_[f][m] = v;
      }
  }
  return r;
}

RingElement RingElement::pow(unsigned n) const {
  RingElement r = one(*ring_);
  for (unsigned i = 0; i < n; ++i) r = r * *this;
  return r;
}

RingElement RingElement::project(size_t f) const {
  RingElement r(*ring_);
  r.comp_[f] = comp_[f];
  return r;
}

void RingElement::set_term(size_t f, const Monomial& m, const Rational& c) {
  Rational v = ring_->field().normalize(c);
  if (ring_->factors()[f].monomial_is_zero(m) || v == 0)
    comp_[f].erase(m);
  else
    comp_[f][m] = v;
}

std::string RingElement::str() const {
  auto comp_str = [&](size_t f) {
    if (comp_[f].empty()) return std::string("0");
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : comp_[f]) {
      Rational cv = c;
      bool neg = cv < 0;
      if (!first)
        os << (neg ? " - " : " + ");
      else if (neg)
        os << "-";
      first = false;
      if (neg) cv = -cv;
      std::string ms = monomial_str(m, ring_->factors()[f].gens());
      if (ms == "1")
        os << cv.str();
      else if (cv == 1)
        os << ms;
      else
        os << cv.str() << "*" << ms;
    }
    return os.str();
  };
  if (comp_.size() == 1) return comp_str(0);
  std::ostringstream os;
  os << "(";
  for (size_t f = 0; f < comp_.size(); ++f) {
    if (f) os << ", ";
    os << comp_str(f);
  }
  os << ")";
  return os.str();
}

NilpotencyInfo is_nilpotent(const RingElement& a) {
  NilpotencyInfo out;
  for (size_t f = 0; f < a.ring().num_factors(); ++f)
    if (!a.ring().field().is_zero(a.constant_term(f))) return out;
  out.nilpotent = true;
  // least n with a^n = 0, bounded by the worst factor nilradical index
  int bound = a.ring().max_nil_index();
  RingElement p = a;
  int n = 1;
  while (!p.is_zero()) {
    p = p * a;
    ++n;
    if (n > bound + 1) throw std::logic_error("nilpotency bound exceeded");
  }
  out.index = n;
  return out;
}

UnitInfo is_unit_ring(const RingElement& a) {
  UnitInfo out;
  const TestRing& R = a.ring();
  for (size_t f = 0; f < R.num_factors(); ++f)
    if (R.field().is_zero(a.constant_term(f))) return out;
  out.unit = true;
  // a = c + n with n nilpotent: a^{-1} = c^{-1} sum (-n/c)^k
  RingElement c(R);
  for (size_t f = 0; f < R.num_factors(); ++f)
    c.set_term(f, Monomial(R.factors()[f].gens().size(), 0), a.constant_term(f));
  RingElement cinv(R);
  for (size_t f = 0; f < R.num_factors(); ++f)
    cinv.set_term(f, Monomial(R.factors()[f].gens().size(), 0), R.field().inv(a.constant_term(f)));
  RingElement n = a - c;
  RingElement term = RingElement::one(R);
  RingElement acc = RingElement::zero(R);
  RingElement step = -(n * cinv);
  while (!term.is_zero()) {
    acc = acc + term;
    term = term * step;
  }
  out.inverse = acc * cinv;
  return out;
}

namespace {

// dense vectors over the factor basis, used to span ideal powers
using Vec = std::vector<Rational>;

Vec to_vec(const RingElement& a, size_t f) {
  const LocalFactor& fac = a.ring().factors()[f];
  Vec v(fac.basis().size(), Rational(0));
  for (const auto& [m, c] : a.comp(f)) v[fac.basis_index(m)] = c;
  return v;
}

// reduce v against rows (echelon, pivot col per row); append if independent
bool add_to_span(std::vector<Vec>& rows, std::vector<int>& pivots, Vec v, const BaseField& k) {
  for (size_t r = 0; r < rows.size(); ++r) {
    int p = pivots[r];
    if (k.is_zero(v[p])) continue;
    Rational f = k.mul(v[p], k.inv(rows[r][p]));
    for (size_t j = 0; j < v.size(); ++j) v[j] = k.sub(v[j], k.mul(f, rows[r][j]));
  }
  for (size_t j = 0; j < v.size(); ++j)
    if (!k.is_zero(v[j])) {
      rows.push_back(v);
      pivots.push_back(static_cast<int>(j));
      return true;
    }
  return false;
}

}  // namespace

NilpotencyCertificate ideal_nilpotency(const std::vector<RingElement>& gens) {
  NilpotencyCertificate cert;
  cert.generators = gens;
  if (gens.empty()) {
    cert.index = 1;
    return cert;
  }
  const TestRing& R = gens[0].ring();
  const BaseField& k = R.field();
  for (const auto& g : gens) {
    if (&g.ring() != &R) throw ring_mismatch("ring mismatch");
    if (!is_nilpotent(g).nilpotent) throw not_invertible("non-nilpotent ideal generator");
  }
  int Q = 1;
  for (size_t f = 0; f < R.num_factors(); ++f) {
    // spanning sets of I^j restricted to factor f
    std::vector<RingElement> cur;
    for (const auto& g : gens) {
      for (const auto& b : R.factors()[f].basis()) {
        RingElement e(R);
        e.set_term(f, b, 1);
        RingElement prod = g.project(f) * e;
        if (!prod.is_zero()) cur.push_back(prod);
      }
    }
    int j = 1;
    while (!cur.empty()) {
      // reduce to a basis
      std::vector<Vec> rows;
      std::vector<int> pivots;
      std::vector<RingElement> basis_elems;
      for (const auto& e : cur)
        if (add_to_span(rows, pivots, to_vec(e, f), k)) basis_elems.push_back(e);
      if (basis_elems.empty()) break;
      // next power
      std::vector<RingElement> next;
      for (const auto& g : gens)
        for (const auto& e : basis_elems) {
          RingElement prod = g.project(f) * e;
          if (!prod.is_zero()) next.push_back(prod);
        }
      cur = std::move(next);
      ++j;
    }
    Q = std::max(Q, j);
  }
  cert.index = Q;
  return cert;
}

std::vector<RingElement> split_factors(const RingElement& a) {
  std::vector<RingElement> out;
  for (size_t f = 0; f < a.ring().num_factors(); ++f) out.push_back(a.project(f));
  return out;
}

std::vector<RingElement> enumerate_ring(const TestRing& ring) {
  if (ring.field().characteristic() == 0)
    throw std::invalid_argument("cannot enumerate a ring over Q");
  long p = ring.field().characteristic();
  std::vector<std::pair<size_t, Monomial>> slots;
  for (size_t f = 0; f < ring.num_factors(); ++f)
    for (const auto& b : ring.factors()[f].basis()) slots.emplace_back(f, b);
  std::vector<RingElement> out;
  std::vector<long> odo(slots.size(), 0);
  while (true) {
    RingElement e(ring);
    for (size_t i = 0; i < slots.size(); ++i)
      if (odo[i] != 0) e.set_term(slots[i].first, slots[i].second, Rational(odo[i]));
    out.push_back(e);
    size_t i = 0;
    while (i < slots.size() && ++odo[i] == p) odo[i++] = 0;
    if (i == slots.size()) break;
  }
  return out;
}

}  // namespace dloop
