#include "dloop/ga.hpp"

namespace dloop {

namespace {

// positions kept by the representative (the complement of the subgroup)
bool rep_position(Quotient q, int i, int j) {
  switch (q) {
    case Quotient::Gr1D: return i < 0;
    case Quotient::GrJ: return i < 0;           // within s-degrees >= 0
    case Quotient::LGr: return j < 0;           // complement of R((t))[[s]]
    case Quotient::GrL: return i < 0;           // complement of R[[t]]((s))
    case Quotient::GrBig: return i < 0 || j < 0;
    case Quotient::Gr2: return j < 0 || (j == 0 && i < 0);
  }
  return false;
}

}  // namespace

AdditiveSplit additive_split_windowed(const IterSeries& f, Quotient q) {
  const TestRing& R = f.ring();
  if (q == Quotient::GrJ && membership(f, SubringTag::LJ) == Tri::False)
    throw std::invalid_argument("jet quotient input must lie in R((t))[[s]]");
  if (q == Quotient::Gr1D && !f.slices().empty() &&
      !(f.outer_floor_bound() == 0 && f.outer_top() == 0))
    throw std::invalid_argument("GR1D input must be constant in s");
  AdditiveSplit out(R);
  out.quot = q;
  out.rep.set_outer_prec(f.outer_prec());
  out.sub.set_outer_prec(f.outer_prec());
  for (const auto& [j, sl] : f.slices()) {
    LaurentSeries rep_slice(R), sub_slice(R);
    rep_slice.set_prec(sl.prec());
    sub_slice.set_prec(sl.prec());
    for (const auto& [i, c] : sl.terms()) {
      if (rep_position(q, i, j))
        rep_slice.set_coeff(i, c);
      else
        sub_slice.set_coeff(i, c);
    }
    if (!rep_slice.is_known_zero()) out.rep.set_slice(j, rep_slice);
    if (!sub_slice.is_known_zero()) out.sub.set_slice(j, sub_slice);
  }
  // chart parameters of the representative
  if (!out.rep.slices().empty()) {
    out.chart_h = out.rep.outer_floor_bound();
    for (const auto& [j, sl] : out.rep.slices())
      if (!sl.empty()) out.chart_alpha[j] = sl.floor_bound();
  }
  return out;
}

AdditiveSplit reduce_ga(const IterSeries& f, Quotient q) {
  if (!f.exact()) throw indeterminate_error("additive split needs exact input");
  return additive_split_windowed(f, q);
}

}  // namespace dloop
