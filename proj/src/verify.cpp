#include "dloop/verify.hpp"

#include <algorithm>

namespace dloop {

namespace {

// box hull of the known regions of a list of series
struct Box {
  int t_lo = 0, t_hi = -1, s_lo = 0, s_hi = -1;
  bool any = false;
};

void widen(Box& b, const IterSeries& f, int cap_hi_t, int cap_hi_s) {
  int shi = f.outer_exact() ? (f.slices().empty() ? 0 : f.outer_top()) + 1 : f.outer_prec() - 1;
  shi = std::min(shi, cap_hi_s);
  int slo = f.slices().empty() ? 0 : f.outer_floor_bound();
  int tlo = 0, thi = kPrecExact;
  for (const auto& [j, sl] : f.slices()) {
    if (!sl.empty()) tlo = std::min(tlo, sl.floor_bound());
    if (!sl.exact()) thi = std::min(thi, sl.prec() - 1);
  }
  if (thi == kPrecExact) {
    int top = 0;
    for (const auto& [j, sl] : f.slices())
      if (!sl.empty()) top = std::max(top, sl.top_degree());
    thi = top + 1;
  }
  thi = std::min(thi, cap_hi_t);
  if (!b.any) {
    b = Box{tlo, thi, slo, shi, true};
  } else {
    b.t_lo = std::min(b.t_lo, tlo);
    b.t_hi = std::min(b.t_hi, thi);
    b.s_lo = std::min(b.s_lo, slo);
    b.s_hi = std::min(b.s_hi, shi);
  }
}

bool sigma_tail_ok(const SigmaTail& st) {
  if (!st.tail.exact()) return false;
  for (const auto& [d, c] : st.tail.terms()) {
    if (d >= st.m) return false;
    if (!is_nilpotent(c).nilpotent) return false;
  }
  return true;
}

bool jet_part_ok(const JetPart& jp) {
  for (const auto& [j, sl] : jp.slices) {
    if (j < 0) return false;
    if (!sl.exact()) return false;
    for (const auto& [i, c] : sl.terms()) {
      if (i >= jp.m) return false;
      if (j == 0) {
        NilpotencyInfo ni = is_nilpotent(c);
        if (!ni.nilpotent || *ni.index > jp.p) return false;
      }
    }
  }
  return jp.outer_prec >= 1;
}

bool loop_part_ok(const LoopPart& lp) {
  for (const auto& [j, sl] : lp.slices) {
    if (j >= lp.m) return false;
    for (const auto& [i, c] : sl.terms()) {
      (void)i;
      if (!is_nilpotent(c).nilpotent) return false;
    }
  }
  return true;
}

bool lminus_part_ok(const LoopMinusPart& lm) {
  for (const auto& [l, tail] : lm.tails) {
    if (l < 1) return false;
    if (!tail.exact()) return false;
    for (const auto& [i, c] : tail.terms()) {
      if (i >= 0) return false;
      if (!is_nilpotent(c).nilpotent) return false;
    }
  }
  return true;
}

bool structural_ok(const NormalFormResult& r) {
  for (const auto& nf : r.factors) {
    if (nf.sigma && !sigma_tail_ok(*nf.sigma)) return false;
    if (nf.jet && !jet_part_ok(*nf.jet)) return false;
    if (nf.loop && !loop_part_ok(*nf.loop)) return false;
    if (nf.lminus && !lminus_part_ok(*nf.lminus)) return false;
  }
  return true;
}

}  // namespace

Tri subgroup_unit_check(const IterSeries& w, SubringTag tag) {
  try {
    switch (tag) {
      case SubringTag::JJ: {
        if (!w.coeff_known(0, 0)) return Tri::Indeterminate;
        return is_unit_ring(w.coeff(0, 0)).unit ? Tri::True : Tri::False;
      }
      case SubringTag::LJ: {
        if (!w.known_slice(0)) return Tri::Indeterminate;
        unit_decompose(w.slice(0));
        return Tri::True;
      }
      case SubringTag::O2: {
        if (!w.known_slice(0)) return Tri::Indeterminate;
        if (!w.slice(0).known(0)) return Tri::Indeterminate;
        return is_unit_ring(w.slice(0).at(0)).unit ? Tri::True : Tri::False;
      }
      case SubringTag::JL: {
        // per factor: the first slice carrying a unit of R((t)) must in fact
        // be a unit of R[[t]]; earlier slices only store nilpotent data
        const TestRing& R = w.ring();
        for (size_t fac = 0; fac < R.num_factors(); ++fac) {
          std::optional<int> d;
          for (const auto& [j, sl] : w.slices()) {
            bool unit_here = false;
            for (const auto& [i, c] : sl.terms()) {
              (void)i;
              if (!R.field().is_zero(c.constant_term(fac))) {
                unit_here = true;
                break;
              }
            }
            if (unit_here) {
              d = j;
              break;
            }
          }
          if (!d) return w.outer_exact() ? Tri::False : Tri::Indeterminate;
          LaurentSeries sl = w.slice(*d);
          if (!sl.known(0)) return Tri::Indeterminate;
          if (R.field().is_zero(sl.at(0).constant_term(fac))) return Tri::False;
        }
        return Tri::True;
      }
      case SubringTag::LL: {
        unit_decompose_outer(w);
        return Tri::True;
      }
    }
  } catch (const not_invertible&) {
    return Tri::False;
  } catch (const indeterminate_error&) {
    return Tri::Indeterminate;
  }
  return Tri::Indeterminate;
}

Window checkable_window(const IterSeries& f, const NormalFormResult& r) {
  IterSeries prod = f * r.witness;
  Box b;
  widen(b, prod, 64, 64);
  widen(b, r.rep, 64, 64);
  return Window{b.t_lo, b.t_hi, b.s_lo, b.s_hi};
}

bool series_agree_on_window(const IterSeries& a, const IterSeries& b, const Window& w) {
  for (int j = w.s_lo; j <= w.s_hi; ++j)
    for (int i = w.t_lo; i <= w.t_hi; ++i) {
      if (!a.coeff_known(i, j) || !b.coeff_known(i, j)) continue;
      if (a.coeff(i, j) != b.coeff(i, j)) return false;
    }
  return true;
}

Verdict verify_reduction(const IterSeries& f, NormalFormResult& r) {
  IterSeries prod = f * r.witness;
  Window w = checkable_window(f, r);
  r.window = w;
  Verdict v = Verdict::Verified;
  // the identity f * witness = rep, coefficientwise on the window
  for (int j = w.s_lo; j <= w.s_hi && v != Verdict::Failed; ++j)
    for (int i = w.t_lo; i <= w.t_hi; ++i) {
      bool pk = prod.coeff_known(i, j);
      bool rk = r.rep.coeff_known(i, j);
      if (!pk || !rk) {
        v = Verdict::Indeterminate;
        continue;
      }
      if (prod.coeff(i, j) != r.rep.coeff(i, j)) {
        v = Verdict::Failed;
        break;
      }
    }
  if (v == Verdict::Failed) {
    r.verdict = v;
    return v;
  }
  // witness lies in the subgroup (within the window) and is a unit there
  SubringTag tag = subgroup_tag(r.quot);
  Tri mem = membership_on_window(r.witness, tag, w);
  Tri unit = subgroup_unit_check(r.witness, tag);
  if (mem == Tri::False || unit == Tri::False) {
    r.verdict = Verdict::Failed;
    return r.verdict;
  }
  if (mem == Tri::Indeterminate || unit == Tri::Indeterminate) v = Verdict::Indeterminate;
  // structural invariants of the representative
  if (!structural_ok(r)) {
    r.verdict = Verdict::Failed;
    return r.verdict;
  }
  r.verdict = v;
  return v;
}

NormalFormResult reduce_verified(const IterSeries& f, Quotient q, int t_prec, int s_prec) {
  int tp = t_prec, sp = s_prec;
  for (int attempt = 0;; ++attempt) {
    NormalFormResult r = reduce_gm(f, q, tp, sp);
    Verdict v = verify_reduction(f, r);
    if (v != Verdict::Indeterminate || attempt >= 4) return r;
    tp *= 2;
    sp += 2;
  }
}

namespace {

bool valuation_data_equal(const NormalFormResult& a, const NormalFormResult& b) {
  if (a.factors.size() != b.factors.size()) return false;
  for (const auto& x : a.factors) {
    const GmFactorNF* y = nullptr;
    for (const auto& cand : b.factors)
      if (cand.factor == x.factor) y = &cand;
    if (!y) return false;
    if (x.sigma.has_value() != y->sigma.has_value()) return false;
    if (x.sigma && x.sigma->m != y->sigma->m) return false;
    if (x.jet.has_value() != y->jet.has_value()) return false;
    if (x.jet && x.jet->m != y->jet->m) return false;
    if (x.loop.has_value() != y->loop.has_value()) return false;
    if (x.loop && x.loop->m != y->loop->m) return false;
  }
  return true;
}

}  // namespace

bool coset_equal(const IterSeries& f, const IterSeries& g, Quotient q, int t_prec, int s_prec) {
  NormalFormResult rf = reduce_verified(f, q, t_prec, s_prec);
  NormalFormResult rg = reduce_verified(g, q, t_prec, s_prec);
  if (!valuation_data_equal(rf, rg)) return false;
  Window w{std::max(rf.window.t_lo, rg.window.t_lo), std::min(rf.window.t_hi, rg.window.t_hi),
           std::max(rf.window.s_lo, rg.window.s_lo), std::min(rf.window.s_hi, rg.window.s_hi)};
  return series_agree_on_window(rf.rep, rg.rep, w);
}

}  // namespace dloop
