#pragma once

#include "dloop/verify.hpp"

namespace dloop {

struct WindowSpec {
  int t_lo = -1, t_hi = 1, s_lo = -1, s_hi = 1;
};

struct UniquenessReport {
  Quotient quot = Quotient::Gr1D;
  std::string ring;
  WindowSpec window;
  std::string method;  // "pairs" or "filtration"
  unsigned long long sigma_count = 0;
  unsigned long long subgroup_count = 0;
  unsigned long long pairs_covered = 0;
  unsigned long long products_covered = 0;
  std::vector<std::string> violations;  // reproducer expressions
  bool passed = false;
  double seconds = 0;
};

struct BruteOptions {
  unsigned long long cap = 2'000'000;  // plain-mode enumeration cap
  bool force_plain = false;            // disable the filtration strategy
};

// Exhaustive distinct-coset check for all window-supported Sigma elements, and
// the sweep confirming sigma*q lands in Sigma only for q = 1. Over F_p the
// check is plain pairwise arithmetic; over F_p[e]/(e^2) it splits along the
// nilpotent filtration, covering all pairs by field-level sweeps plus
// linear-algebra rank certificates on the e-parts.
UniquenessReport brute_force_uniqueness(const TestRing& ring, Quotient q, const WindowSpec& win,
                                        const BruteOptions& opts = {});

}  // namespace dloop
