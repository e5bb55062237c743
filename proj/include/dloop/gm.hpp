#pragma once

#include "dloop/iter_series.hpp"

namespace dloop {

enum class Quotient { Gr1D, GrJ, LGr, GrBig, GrL, Gr2 };
std::string to_string(Quotient q);
Quotient quotient_from_string(const std::string& s);
// subgroup of the quotient, as a subring tag (units of that ring)
SubringTag subgroup_tag(Quotient q);
// the ambient group the quotient's numerator lives in
SubringTag numerator_tag(Quotient q);

enum class Verdict { Verified, Failed, Indeterminate };
std::string to_string(Verdict v);

// Per connected ring factor, the structured parts of a G_m representative.
struct SigmaTail {
  int m = 0;
  LaurentSeries tail;  // exact, degrees < m, nilpotent coefficients
};

struct JetPart {
  int m = 0;
  int p = 1;                           // tail nilpotency exponent for the s^0 slice
  std::map<int, LaurentSeries> slices; // j >= 0; exact finite inner tails, degrees < m
  int outer_prec = 0;                  // slices computed for j < outer_prec
};

struct LoopPart {
  int m = 0;
  std::map<int, LaurentSeries> slices; // j < m; nilpotent coefficients, inner truncated
};

struct LoopMinusPart {
  std::map<int, LaurentSeries> tails;  // l >= 1 maps to eps_l in t^{-1}R[t^{-1}], exact
};

struct GmFactorNF {
  size_t factor = 0;
  std::optional<SigmaTail> sigma;      // Gr1D, Gr2 fiber component
  std::optional<JetPart> jet;          // GrJ, GrBig, GrL
  std::optional<LoopPart> loop;        // LGr, GrBig, Gr2
  std::optional<LoopMinusPart> lminus; // GrL
};

struct NormalFormResult {
  std::string group = "gm";
  Quotient quot = Quotient::Gr1D;
  IterSeries rep;      // assembled representative, f * witness = rep
  IterSeries witness;  // truncated element of the quotient's subgroup
  std::vector<GmFactorNF> factors;
  Window window{0, 0, 0, 0};
  Verdict verdict = Verdict::Indeterminate;
  NormalFormResult(const TestRing& ring) : rep(ring), witness(ring) {}
};

// --- one-variable reduction (LG/JG) -----------------------------------------
NormalFormResult reduce_gr1d(const LaurentSeries& f, int prec);

// Strict splitting solver: for nilpotent eps in t^{-1}R[t^{-1}] and any beta,
// the unique gamma in R[[t]] with beta - (1+eps)*gamma supported in strictly
// negative degrees. Returns (gamma, residual).
std::pair<LaurentSeries, LaurentSeries> lemma_split_solve(const LaurentSeries& eps,
                                                          const LaurentSeries& beta);

// --- two-variable reductions -------------------------------------------------
NormalFormResult reduce_grj(const IterSeries& f, int t_prec, int s_prec);
NormalFormResult reduce_lgr(const IterSeries& f, int t_prec, int s_prec);
NormalFormResult reduce_grbig(const IterSeries& f, int t_prec, int s_prec);
NormalFormResult reduce_grl(const IterSeries& f, int t_prec, int s_prec);
NormalFormResult reduce_gr2(const IterSeries& f, int t_prec, int s_prec);

// dispatch by tag; Gr1D expects f constant in s
NormalFormResult reduce_gm(const IterSeries& f, Quotient q, int t_prec, int s_prec);

// Reduction of an L(Sigma) element modulo J(Sigma): witness h = 1 + sum h_l s^{-l}
// with h_l in R[[t]] nilpotent; the recursion terminates. Returns (rep, witness).
struct LoopMinusReduction {
  LoopMinusPart rep;
  IterSeries witness;
  int last_nonzero = 0;  // largest l with h_l != 0
};
LoopMinusReduction reduce_lsigma_mod_jsigma(const IterSeries& f, int t_prec);

// Bound M = 3Q for vanishing of nested positive-part products (and the
// exhaustive check of that vanishing over all index sequences of length M).
struct NestedBound {
  int d = 0;
  int Q = 1;
  int M = 3;
  bool vanish_ok = true;
  unsigned long long sequences = 0;
};
NestedBound nested_positive_bound(const std::vector<LaurentSeries>& eps,
                                  unsigned long long cap = 1u << 22);

}  // namespace dloop
