#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dloop {

using Rational = boost::multiprecision::cpp_rational;

struct ring_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct not_invertible : std::domain_error {
  using std::domain_error::domain_error;
};
struct indeterminate_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Base field of a test ring: the rationals (p == 0) or a prime field F_p.
class BaseField {
 public:
  explicit BaseField(long p = 0);
  long characteristic() const { return p_; }
  Rational normalize(const Rational& a) const;
  Rational add(const Rational& a, const Rational& b) const { return normalize(a + b); }
  Rational sub(const Rational& a, const Rational& b) const { return normalize(a - b); }
  Rational mul(const Rational& a, const Rational& b) const { return normalize(a * b); }
  Rational neg(const Rational& a) const { return normalize(-a); }
  Rational inv(const Rational& a) const;
  bool is_zero(const Rational& a) const { return normalize(a) == 0; }

 private:
  long p_;
};

// Exponent vector of a monomial in one local factor; index order matches the
// factor's generator list.
using Monomial = std::vector<unsigned>;

int total_degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
std::string monomial_str(const Monomial& m, const std::vector<std::string>& gens);

// One connected factor k[g_1,...,g_n]/(monomial ideal). Every generator must
// have a pure power in the ideal, so the factor is finite dimensional and its
// nilradical is the augmentation ideal.
class LocalFactor {
 public:
  LocalFactor(std::vector<std::string> gens, std::vector<Monomial> relations);

  const std::vector<std::string>& gens() const { return gens_; }
  const std::vector<Monomial>& relations() const { return relations_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  // 1 + max total degree of a nonzero monomial; least k with m^k = 0.
  int nil_index() const { return nil_index_; }
  bool monomial_is_zero(const Monomial& m) const;
  int basis_index(const Monomial& m) const;  // -1 if zero

 private:
  std::vector<std::string> gens_;
  std::vector<Monomial> relations_;
  std::vector<Monomial> basis_;
  std::map<Monomial, int> basis_pos_;
  int nil_index_;
};

// Finite product of local monomial-quotient algebras over Q or F_p.
class TestRing {
 public:
  TestRing(BaseField field, std::vector<LocalFactor> factors);

  const BaseField& field() const { return field_; }
  const std::vector<LocalFactor>& factors() const { return factors_; }
  size_t num_factors() const { return factors_.size(); }
  // max nil_index over factors
  int max_nil_index() const;
  bool is_field() const;
  // total k-dimension; 0 means infinite (never happens for valid rings)
  long dimension() const;
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

 private:
  BaseField field_;
  std::vector<LocalFactor> factors_;
  std::string name_;
};

// Element of a TestRing: one reduced sparse polynomial per factor.
class RingElement {
 public:
  explicit RingElement(const TestRing& ring);
  static RingElement scalar(const TestRing& ring, const Rational& c);
  static RingElement one(const TestRing& ring) { return scalar(ring, 1); }
  static RingElement zero(const TestRing& ring) { return RingElement(ring); }
  static RingElement generator(const TestRing& ring, size_t factor, size_t gen);
  // unit on the given factor, zero elsewhere
  static RingElement factor_unit(const TestRing& ring, size_t factor);

  const TestRing& ring() const { return *ring_; }
  const std::map<Monomial, Rational>& comp(size_t f) const { return comp_[f]; }
  bool is_zero() const;
  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }
  Rational constant_term(size_t f) const;

  RingElement operator+(const RingElement& o) const;
  RingElement operator-(const RingElement& o) const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator-() const;
  RingElement scaled(const Rational& c) const;
  RingElement pow(unsigned n) const;

  // keep only the given factor's component
  RingElement project(size_t f) const;

  void set_term(size_t f, const Monomial& m, const Rational& c);  // reduces, drops zeros
  std::string str() const;

 private:
  void check_same(const RingElement& o) const;
  const TestRing* ring_;
  std::vector<std::map<Monomial, Rational>> comp_;
};

struct NilpotencyInfo {
  bool nilpotent = false;
  std::optional<int> index;  // least n with a^n = 0
};

struct UnitInfo {
  bool unit = false;
  std::optional<RingElement> inverse;
};

struct NilpotencyCertificate {
  std::vector<RingElement> generators;
  int index = 1;  // least Q with I^Q = 0
};

NilpotencyInfo is_nilpotent(const RingElement& a);
UnitInfo is_unit_ring(const RingElement& a);
NilpotencyCertificate ideal_nilpotency(const std::vector<RingElement>& gens);
std::vector<RingElement> split_factors(const RingElement& a);

// All elements of a finite ring (throws if the scalar field is Q).
std::vector<RingElement> enumerate_ring(const TestRing& ring);

}  // namespace dloop
