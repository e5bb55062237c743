#pragma once

#include "dloop/gm.hpp"

namespace dloop {

// Coefficientwise direct-sum splitting for the additive group: the input is
// written exactly as representative + subgroup part, the representative lying
// in the quotient's canonical complement.
struct AdditiveSplit {
  Quotient quot;
  IterSeries rep;
  IterSeries sub;
  // minimal chart parameters of the representative: outer floor h and the
  // per-slice inner floors alpha_j
  int chart_h = 0;
  std::map<int, int> chart_alpha;
  AdditiveSplit(const TestRing& R) : quot(Quotient::Gr1D), rep(R), sub(R) {}
};

AdditiveSplit reduce_ga(const IterSeries& f, Quotient q);

// Same split on (possibly truncated) input: only known coefficients are
// routed; the parts inherit the input's precision windows.
AdditiveSplit additive_split_windowed(const IterSeries& f, Quotient q);

}  // namespace dloop
