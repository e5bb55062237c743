#include "dloop/gm.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dloop {

std::string to_string(Quotient q) {
  switch (q) {
    case Quotient::Gr1D: return "GR1D";
    case Quotient::GrJ: return "GRJ";
    case Quotient::LGr: return "LGR";
    case Quotient::GrBig: return "GRBIG";
    case Quotient::GrL: return "GRL";
    case Quotient::Gr2: return "GR2";
  }
  return "?";
}

Quotient quotient_from_string(const std::string& s) {
  std::string u;
  for (char c : s) u += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (u == "GR1D") return Quotient::Gr1D;
  if (u == "GRJ") return Quotient::GrJ;
  if (u == "LGR") return Quotient::LGr;
  if (u == "GRBIG" || u == "BIG") return Quotient::GrBig;
  if (u == "GRL") return Quotient::GrL;
  if (u == "GR2") return Quotient::Gr2;
  throw std::invalid_argument("unknown quotient tag: " + s);
}

SubringTag subgroup_tag(Quotient q) {
  switch (q) {
    case Quotient::Gr1D: return SubringTag::JJ;  // R[[t]], constant in s
    case Quotient::GrJ: return SubringTag::JJ;
    case Quotient::LGr: return SubringTag::LJ;
    case Quotient::GrBig: return SubringTag::JJ;
    case Quotient::GrL: return SubringTag::JL;
    case Quotient::Gr2: return SubringTag::O2;
  }
  return SubringTag::JJ;
}

SubringTag numerator_tag(Quotient q) {
  return q == Quotient::GrJ ? SubringTag::LJ : SubringTag::LL;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Verified: return "verified";
    case Verdict::Failed: return "failed";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

RingElement factor_mask(const TestRing& R, size_t fac) { return RingElement::factor_unit(R, fac); }

// lift a factor-masked unit candidate to a global one (1 on the other factors)
RingElement lift_unit(const TestRing& R, const RingElement& masked, const RingElement& mask) {
  return masked + (RingElement::one(R) - mask);
}

template <class Fn>
auto with_precision_retry(Fn&& fn, int w0, int attempts = 10) {
  int w = std::max(w0, 4);
  for (int i = 0;; ++i) {
    try {
      return fn(w);
    } catch (const indeterminate_error&) {
      if (i + 1 >= attempts) throw;
      w *= 2;
    }
  }
}

// ---------------------------------------------------------------------------
// one-variable reduction core
// ---------------------------------------------------------------------------

struct Gr1dFactorOut {
  size_t factor = 0;
  SigmaTail sig;
  LaurentSeries witness;  // in R[[t]], masked to the factor
  Gr1dFactorOut(const TestRing& R) : sig{0, LaurentSeries(R)}, witness(R) {}
};

Gr1dFactorOut gr1d_factor(const LaurentSeries& f, size_t fac, int d, int W) {
  const TestRing& R = f.ring();
  RingElement mask = factor_mask(R, fac);
  LaurentSeries g = f.project(fac).shifted(-d).truncated(W);
  LaurentSeries tail0 = g.negative_part();
  if (!tail0.exact()) throw indeterminate_error("tail not fully known");
  std::vector<RingElement> gens;
  for (const auto& [deg, c] : tail0.terms()) {
    (void)deg;
    gens.push_back(c);
  }
  int K = ideal_nilpotency(gens).index;
  LaurentSeries a = LaurentSeries::monomial(R, mask, 0);
  for (int k = 0;; ++k) {
    RingElement c0 = g.at(0);
    UnitInfo u = is_unit_ring(lift_unit(R, c0, mask));
    if (!u.unit) throw not_invertible("constant term not a unit");
    RingElement c0inv = *u.inverse * mask;
    g = g.scaled(c0inv);
    a = a.scaled(c0inv);
    if (k == K) break;
    LaurentSeries pos = g.positive_part() - LaurentSeries::monomial(R, g.at(0), 0);
    if (pos.empty() && pos.exact()) break;
    LaurentSeries uinv = invert_series_best(LaurentSeries::one(R) + pos, W).scaled(mask);
    g = (g * uinv).truncated(W);
    a = (a * uinv).truncated(W);
  }
  Gr1dFactorOut out(R);
  out.factor = fac;
  LaurentSeries tail = g.negative_part();
  if (!tail.exact()) throw indeterminate_error("sigma tail not exact");
  if (g.prec() < 1) throw indeterminate_error("insufficient precision for the jet residue");
  // the strictly positive part is provably zero now; a stored residue would be
  // a computation bug
  for (const auto& [deg, c] : g.terms())
    if (deg > 0 && !c.is_zero()) throw std::logic_error("nonzero jet residue after reduction");
  out.sig.m = d;
  out.sig.tail = tail.shifted(d);  // absolute degrees < m
  out.witness = a;
  return out;
}

struct Gr1dOut {
  std::vector<Gr1dFactorOut> factors;
  LaurentSeries rep;      // exact
  LaurentSeries witness;  // truncated, in R[[t]]^*
  Gr1dOut(const TestRing& R) : rep(R), witness(R) {}
};

Gr1dOut gr1d_core(const LaurentSeries& f, int prec) {
  const TestRing& R = f.ring();
  if (!f.exact()) prec = std::min(prec, f.prec() - 1);
  UnitDecomposition dec = unit_decompose(f);
  int depth = 1;
  for (const auto& grp : dec.groups) {
    LaurentSeries g = f.shifted(-grp.d);
    if (!g.empty()) depth = std::max(depth, -std::min(0, g.floor_bound()));
  }
  int W0 = prec + (R.max_nil_index() + 2) * depth + 8;
  return with_precision_retry(
      [&](int W) {
        Gr1dOut out(R);
        for (const auto& grp : dec.groups)
          for (size_t fac : grp.factors) {
            Gr1dFactorOut fo = gr1d_factor(f, fac, grp.d, W);
            LaurentSeries sigma =
                LaurentSeries::monomial(R, factor_mask(R, fac), fo.sig.m) + fo.sig.tail;
            out.rep = out.rep + sigma;
            out.witness = out.witness + fo.witness;
            out.factors.push_back(std::move(fo));
          }
        if (out.witness.prec() < prec) throw indeterminate_error("witness precision shortfall");
        return out;
      },
      W0);
}

// ---------------------------------------------------------------------------
// jet-group reduction core
// ---------------------------------------------------------------------------

struct GrjFactorOut {
  size_t factor = 0;
  JetPart jet;
  IterSeries witness;  // masked, in R[[t]][[s]]
  GrjFactorOut(const TestRing& R) : witness(R) {}
};

struct GrjOut {
  std::vector<GrjFactorOut> factors;
  IterSeries rep;
  IterSeries witness;
  GrjOut(const TestRing& R) : rep(R), witness(R) {}
};

IterSeries assemble_jet(const TestRing& R, size_t fac, const JetPart& jp) {
  IterSeries rep = IterSeries::monomial(R, factor_mask(R, fac), jp.m, 0);
  for (const auto& [j, sl] : jp.slices)
    if (!sl.empty()) rep = rep + IterSeries::from_inner(sl, j);
  rep.set_outer_prec(jp.outer_prec);
  return rep;
}

GrjFactorOut grj_factor(const IterSeries& f, const Gr1dFactorOut& base, int s_prec, int Wt) {
  const TestRing& R = f.ring();
  size_t fac = base.factor;
  RingElement mask = factor_mask(R, fac);
  int m = base.sig.m;
  LaurentSeries eps = base.sig.tail.shifted(-m);  // strictly negative, exact, nilpotent
  // F = f * a * t^-m on this factor; its s^0 slice equals 1 + eps
  IterSeries F =
      (f.project(fac) * IterSeries::from_inner(base.witness)).shifted_inner(-m).truncated_inner(Wt);
  std::vector<LaurentSeries> h;
  h.push_back(LaurentSeries::monomial(R, mask, 0).truncated(Wt));
  GrjFactorOut out(R);
  out.factor = fac;
  out.jet.m = m;
  std::vector<RingElement> gens;
  for (const auto& [deg, c] : eps.terms()) {
    (void)deg;
    gens.push_back(c);
  }
  out.jet.p = ideal_nilpotency(gens).index;
  out.jet.outer_prec = s_prec;
  if (!base.sig.tail.empty()) out.jet.slices.insert_or_assign(0, base.sig.tail);
  for (int l = 1; l < s_prec; ++l) {
    LaurentSeries beta = LaurentSeries::zero(R);
    for (int k = 1; k <= l; ++k) {
      if (!F.known_slice(k)) throw indeterminate_error("input slice unknown");
      beta = beta + F.slice(k) * h[static_cast<size_t>(l - k)];
    }
    auto [gamma, residual] = lemma_split_solve(eps, beta);
    if (!residual.exact()) throw indeterminate_error("jet slice residual not exact");
    h.push_back(-gamma);
    if (!residual.empty()) out.jet.slices.insert_or_assign(l, residual.shifted(m));
  }
  IterSeries hseries = IterSeries::zero(R);
  for (int l = 0; l < s_prec; ++l)
    if (!h[static_cast<size_t>(l)].is_known_zero()) hseries.set_slice(l, h[static_cast<size_t>(l)]);
  hseries.set_outer_prec(s_prec);
  out.witness = IterSeries::from_inner(base.witness) * hseries;
  return out;
}

GrjOut grj_core(const IterSeries& f, int t_prec, int s_prec) {
  const TestRing& R = f.ring();
  if (!f.slices().empty() && f.outer_floor_bound() < 0)
    throw std::invalid_argument("jet reduction needs nonnegative s-degrees");
  LaurentSeries f0 = f.slice(0);
  int depth = 1;
  for (const auto& [j, sl] : f.slices())
    if (!sl.empty()) depth = std::max(depth, -std::min(0, sl.floor_bound()));
  int W0 = t_prec + (R.max_nil_index() + 2) * depth * (s_prec + 2) + 8;
  return with_precision_retry(
      [&](int Wt) {
        GrjOut out(R);
        Gr1dOut base = gr1d_core(f0, Wt);
        for (const auto& bf : base.factors) {
          GrjFactorOut fo = grj_factor(f, bf, s_prec, Wt);
          out.rep = out.rep + assemble_jet(R, bf.factor, fo.jet);
          out.witness = out.witness + fo.witness;
          out.factors.push_back(std::move(fo));
        }
        return out;
      },
      W0);
}

// ---------------------------------------------------------------------------
// loop-Grassmannian reduction core (the one-variable story over B = R((t)))
// ---------------------------------------------------------------------------

struct LgrFactorOut {
  size_t factor = 0;
  LoopPart loop;
  IterSeries witness;  // masked, in B[[s]]
  std::vector<RingElement> tail_gens;
  LgrFactorOut(const TestRing& R) : witness(R) {}
};

struct LgrOut {
  std::vector<LgrFactorOut> factors;
  IterSeries rep;
  IterSeries witness;
  LgrOut(const TestRing& R) : rep(R), witness(R) {}
};

IterSeries assemble_loop(const TestRing& R, size_t fac, const LoopPart& lp) {
  IterSeries rep = IterSeries::monomial(R, factor_mask(R, fac), 0, lp.m);
  for (const auto& [j, sl] : lp.slices) rep = rep + IterSeries::from_inner(sl, j);
  return rep;
}

LgrFactorOut lgr_factor(const IterSeries& f, size_t fac, int d, int Wt, int Ws) {
  const TestRing& R = f.ring();
  RingElement mask = factor_mask(R, fac);
  IterSeries G = f.project(fac).shifted_outer(-d);
  IterSeries tail0 = G.outer_negative_part();
  if (!tail0.exact()) throw indeterminate_error("outer tail not fully known");
  std::vector<RingElement> gens;
  for (const auto& [j, sl] : tail0.slices()) {
    (void)j;
    for (const auto& [i, c] : sl.terms()) {
      (void)i;
      gens.push_back(c);
    }
  }
  int K = ideal_nilpotency(gens).index;
  IterSeries A = IterSeries::monomial(R, mask, 0, 0);
  for (int k = 0;; ++k) {
    LaurentSeries C = G.slice(0);
    LaurentSeries Cinv =
        invert_series_best(C + LaurentSeries::monomial(R, RingElement::one(R) - mask, 0), Wt)
            .scaled(mask);
    IterSeries cinv2 = IterSeries::from_inner(Cinv);
    G = (G * cinv2).truncated_inner(Wt);
    A = (A * cinv2).truncated_inner(Wt);
    if (k == K) break;
    IterSeries pos = G.outer_positive_part() - IterSeries::from_inner(G.slice(0));
    if (pos.is_known_zero()) break;
    // (1 + pos)^{-1} s-adically; pos has outer floor >= 1
    IterSeries uinv = IterSeries::monomial(R, mask, 0, 0);
    IterSeries term = uinv;
    for (int j = 1; j < Ws + 2; ++j) {
      term = (-(term * pos)).truncated_outer(Ws + 2).truncated_inner(Wt);
      if (term.is_known_zero()) break;
      uinv = uinv + term;
    }
    G = (G * uinv).truncated_outer(Ws + 2).truncated_inner(Wt);
    A = (A * uinv).truncated_outer(Ws + 2).truncated_inner(Wt);
  }
  LgrFactorOut out(R);
  out.factor = fac;
  out.loop.m = d;
  out.tail_gens = gens;
  for (const auto& [j, sl] : G.slices())
    if (j < 0) out.loop.slices.insert_or_assign(j + d, sl);  // absolute outer degree < d
  out.witness = A;
  return out;
}

LgrOut lgr_core(const IterSeries& f, int t_prec, int s_prec) {
  const TestRing& R = f.ring();
  UnitDecomposition dec = unit_decompose_outer(f);
  int Wt0 = t_prec + 8;
  return with_precision_retry(
      [&](int Wt) {
        LgrOut out(R);
        for (const auto& grp : dec.groups)
          for (size_t fac : grp.factors) {
            LgrFactorOut fo = lgr_factor(f, fac, grp.d, Wt, s_prec);
            out.rep = out.rep + assemble_loop(R, fac, fo.loop);
            out.witness = out.witness + fo.witness;
            out.factors.push_back(std::move(fo));
          }
        return out;
      },
      Wt0);
}

LoopMinusReduction reduce_lsigma_core(const IterSeries& f, int t_prec,
                                      const std::vector<RingElement>* extra_gens) {
  const TestRing& R = f.ring();
  if (!f.outer_exact() || f.slices().empty())
    throw std::invalid_argument("input not of L(Sigma) shape");
  int m = f.outer_top();
  LaurentSeries top = f.slice(m);
  if (!(top.exact() && top.terms().size() == 1 && top.terms().count(0) &&
        top.at(0) == RingElement::one(R)))
    throw std::invalid_argument("leading s-coefficient must be exactly 1");
  std::map<int, LaurentSeries> eps;  // eps_l = -slice(m - l), l >= 1
  std::vector<RingElement> gens;
  if (extra_gens) gens = *extra_gens;
  int N = 0;
  for (const auto& [j, sl] : f.slices()) {
    if (j == m) continue;
    int l = m - j;
    N = std::max(N, l);
    eps.emplace(l, -sl);
    for (const auto& [i, c] : sl.terms()) {
      (void)i;
      if (!is_nilpotent(c).nilpotent) throw std::invalid_argument("lower slice not nilpotent");
      gens.push_back(c);
    }
  }
  LoopMinusReduction out{LoopMinusPart{}, IterSeries(R), 0};
  if (eps.empty()) {
    out.witness = IterSeries::monomial(R, RingElement::one(R), 0, -m);
    return out;
  }
  int Q = ideal_nilpotency(gens).index;
  int Lmax = N * (Q - 1);
  auto eps_at = [&](int l) -> LaurentSeries {
    auto it = eps.find(l);
    return it == eps.end() ? LaurentSeries::zero(R) : it->second;
  };
  bool all_exact = true;
  for (const auto& [l, e] : eps) {
    (void)l;
    all_exact = all_exact && e.exact();
  }
  std::vector<LaurentSeries> h;
  h.push_back(all_exact ? LaurentSeries::one(R) : LaurentSeries::one(R).truncated(t_prec));
  for (int l = 1; l <= Lmax; ++l) {
    LaurentSeries acc = LaurentSeries::zero(R);
    for (int k = 1; k <= std::min(l, N); ++k)
      acc = acc + eps_at(k) * h[static_cast<size_t>(l - k)];
    LaurentSeries hl = acc.positive_part();
    h.push_back(all_exact ? hl : hl.truncated(t_prec));
  }
  for (int l = Lmax; l >= 1; --l)
    if (!h[static_cast<size_t>(l)].empty()) {
      out.last_nonzero = l;
      break;
    }
  // representative tails: minus the negative part of sum eps_k h_{l-k}
  for (int l = 1; l <= Lmax + N; ++l) {
    LaurentSeries acc = LaurentSeries::zero(R);
    for (int k = 1; k <= std::min(l, N); ++k) {
      int idx = l - k;
      if (idx > Lmax) continue;
      acc = acc + eps_at(k) * h[static_cast<size_t>(idx)];
    }
    LaurentSeries tail = -acc.negative_part();
    if (!tail.exact()) throw indeterminate_error("loop-minus tail not exact");
    if (!tail.empty()) out.rep.tails.insert_or_assign(l, tail);
  }
  IterSeries w = IterSeries::zero(R);
  w.set_slice(0, h[0]);
  for (int l = 1; l <= Lmax; ++l)
    if (!h[static_cast<size_t>(l)].is_known_zero()) w.set_slice(-l, h[static_cast<size_t>(l)]);
  out.witness = w.shifted_outer(-m);
  return out;
}

IterSeries assemble_lminus(const TestRing& R, size_t fac, const LoopMinusPart& lm) {
  IterSeries rep = IterSeries::monomial(R, factor_mask(R, fac), 0, 0);
  for (const auto& [l, tail] : lm.tails) rep = rep + IterSeries::from_inner(tail, -l);
  return rep;
}

struct BigOut {
  LgrOut lgr;
  GrjOut grj;
  IterSeries rep;
  IterSeries witness;
  BigOut(const TestRing& R) : lgr(R), grj(R), rep(R), witness(R) {}
};

BigOut grbig_core(const IterSeries& f, int t_prec, int s_prec) {
  const TestRing& R = f.ring();
  int Wt0 = 2 * t_prec + 8;
  return with_precision_retry(
      [&](int Wt) {
        BigOut out(R);
        out.lgr = lgr_core(f, Wt, s_prec + 2);
        int s_extra = 0;
        for (const auto& lo : out.lgr.factors) s_extra = std::max(s_extra, std::abs(lo.loop.m));
        IterSeries Ainv = invert_full(out.lgr.witness, Wt, s_prec + s_extra + 2);
        out.grj = grj_core(Ainv, t_prec, s_prec + s_extra);
        out.rep = (out.grj.rep * out.lgr.rep).truncated_inner(2 * Wt).truncated_outer(s_prec);
        out.witness = out.grj.witness;
        return out;
      },
      Wt0);
}

}  // namespace

// ---------------------------------------------------------------------------
// public operations
// ---------------------------------------------------------------------------

std::pair<LaurentSeries, LaurentSeries> lemma_split_solve(const LaurentSeries& eps,
                                                          const LaurentSeries& beta) {
  const TestRing& R = eps.ring();
  if (!eps.exact()) throw std::invalid_argument("eps must be exact");
  if (!eps.empty() && eps.top_degree() >= 0)
    throw std::invalid_argument("eps must be strictly negative");
  if (!eps.is_nilpotent_exact()) throw not_invertible("eps must be nilpotent");
  std::vector<RingElement> gens;
  for (const auto& [d, c] : eps.terms()) {
    (void)d;
    gens.push_back(c);
  }
  int p = ideal_nilpotency(gens).index;
  LaurentSeries gamma = LaurentSeries::zero(R);
  LaurentSeries bn = beta;
  for (int n = 0; n < p; ++n) {
    LaurentSeries an = bn.positive_part();
    gamma = gamma + an;
    bn = bn.negative_part() - eps * an;
  }
  LaurentSeries residual = bn.negative_part();
  if (!residual.exact()) throw indeterminate_error("residual not exact");
  for (const auto& [d, c] : bn.positive_part().terms())
    if (!c.is_zero())
      throw std::logic_error("split solver left a positive term at degree " + std::to_string(d));
  return {gamma, residual};
}

NormalFormResult reduce_gr1d(const LaurentSeries& f, int prec) {
  const TestRing& R = f.ring();
  Gr1dOut core = gr1d_core(f, prec);
  NormalFormResult out(R);
  out.quot = Quotient::Gr1D;
  out.rep = IterSeries::from_inner(core.rep);
  out.witness = IterSeries::from_inner(core.witness);
  for (auto& fo : core.factors) {
    GmFactorNF nf;
    nf.factor = fo.factor;
    nf.sigma = fo.sig;
    out.factors.push_back(std::move(nf));
  }
  return out;
}

NormalFormResult reduce_grj(const IterSeries& f, int t_prec, int s_prec) {
  const TestRing& R = f.ring();
  if (membership(f, SubringTag::LJ) == Tri::False)
    throw std::invalid_argument("jet reduction expects an element of R((t))[[s]]");
  GrjOut core = grj_core(f, t_prec, s_prec);
  NormalFormResult out(R);
  out.quot = Quotient::GrJ;
  out.rep = core.rep;
  out.witness = core.witness;
  for (auto& fo : core.factors) {
    GmFactorNF nf;
    nf.factor = fo.factor;
    nf.jet = fo.jet;
    out.factors.push_back(std::move(nf));
  }
  return out;
}

NormalFormResult reduce_lgr(const IterSeries& f, int t_prec, int s_prec) {
  const TestRing& R = f.ring();
  LgrOut core = lgr_core(f, t_prec, s_prec);
  NormalFormResult out(R);
  out.quot = Quotient::LGr;
  out.rep = core.rep;
  out.witness = core.witness;
  for (auto& fo : core.factors) {
    GmFactorNF nf;
    nf.factor = fo.factor;
    nf.loop = fo.loop;
    out.factors.push_back(std::move(nf));
  }
  return out;
}

NormalFormResult reduce_grbig(const IterSeries& f, int t_prec, int s_prec) {
  const TestRing& R = f.ring();
  BigOut core = grbig_core(f, t_prec, s_prec);
  NormalFormResult out(R);
  out.quot = Quotient::GrBig;
  out.rep = core.rep;
  out.witness = core.witness;
  for (auto& fo : core.grj.factors) {
    GmFactorNF nf;
    nf.factor = fo.factor;
    nf.jet = fo.jet;
    for (auto& lo : core.lgr.factors)
      if (lo.factor == fo.factor) nf.loop = lo.loop;
    out.factors.push_back(std::move(nf));
  }
  return out;
}

LoopMinusReduction reduce_lsigma_mod_jsigma(const IterSeries& f, int t_prec) {
  return reduce_lsigma_core(f, t_prec, nullptr);
}

NormalFormResult reduce_grl(const IterSeries& f, int t_prec, int s_prec) {
  const TestRing& R = f.ring();
  int Wt0 = 2 * t_prec + 8;
  return with_precision_retry(
      [&](int Wt) {
        BigOut big = grbig_core(f, Wt, s_prec + 2);
        NormalFormResult out(R);
        out.quot = Quotient::GrL;
        out.rep = IterSeries::zero(R);
        IterSeries w2_total = IterSeries::zero(R);
        for (auto& fo : big.grj.factors) {
          GmFactorNF g;
          g.factor = fo.factor;
          g.jet = fo.jet;
          const LoopPart* lp = nullptr;
          for (auto& lo : big.lgr.factors)
            if (lo.factor == fo.factor) lp = &lo.loop;
          const std::vector<RingElement>* gens = nullptr;
          for (auto& lo : big.lgr.factors)
            if (lo.factor == fo.factor) gens = &lo.tail_gens;
          RingElement mask = factor_mask(R, fo.factor);
          IterSeries sigmaL = assemble_loop(R, fo.factor, *lp) +
                              IterSeries::monomial(R, RingElement::one(R) - mask, 0, lp->m);
          LoopMinusReduction lm = reduce_lsigma_core(sigmaL, Wt, gens);
          w2_total = w2_total + lm.witness.scaled(mask);
          g.lminus = lm.rep;
          out.rep =
              out.rep + assemble_jet(R, fo.factor, *g.jet) * assemble_lminus(R, fo.factor, lm.rep);
          out.factors.push_back(std::move(g));
        }
        out.witness = (big.witness * w2_total).truncated_inner(Wt);
        out.rep = out.rep.truncated_outer(s_prec);
        return out;
      },
      Wt0);
}

NormalFormResult reduce_gr2(const IterSeries& f, int t_prec, int s_prec) {
  const TestRing& R = f.ring();
  int Wt0 = 2 * t_prec + 8;
  return with_precision_retry(
      [&](int Wt) {
        LgrOut r1 = lgr_core(f, Wt, s_prec);
        LaurentSeries A0 = r1.witness.slice(0);
        LaurentSeries u0 = invert_series_best(A0, Wt);
        Gr1dOut fib = gr1d_core(u0, t_prec);
        NormalFormResult out(R);
        out.quot = Quotient::Gr2;
        out.rep = (IterSeries::from_inner(fib.rep) * r1.rep).truncated_inner(2 * Wt);
        out.witness =
            (r1.witness * IterSeries::from_inner(fib.rep)).truncated_inner(Wt);
        for (auto& lo : r1.factors) {
          GmFactorNF nf;
          nf.factor = lo.factor;
          nf.loop = lo.loop;
          for (auto& sf : fib.factors)
            if (sf.factor == lo.factor) nf.sigma = sf.sig;
          out.factors.push_back(std::move(nf));
        }
        return out;
      },
      Wt0);
}

NormalFormResult reduce_gm(const IterSeries& f, Quotient q, int t_prec, int s_prec) {
  switch (q) {
    case Quotient::Gr1D: {
      if (!f.outer_exact() ||
          (!f.slices().empty() && (f.outer_floor_bound() != 0 || f.outer_top() != 0)))
        throw std::invalid_argument("GR1D input must be constant in s");
      return reduce_gr1d(f.slice(0), t_prec);
    }
    case Quotient::GrJ: return reduce_grj(f, t_prec, s_prec);
    case Quotient::LGr: return reduce_lgr(f, t_prec, s_prec);
    case Quotient::GrBig: return reduce_grbig(f, t_prec, s_prec);
    case Quotient::GrL: return reduce_grl(f, t_prec, s_prec);
    case Quotient::Gr2: return reduce_gr2(f, t_prec, s_prec);
  }
  throw std::invalid_argument("bad quotient");
}

namespace {

// sparse echelon over the base field for spans of Laurent series
using FlatKey = std::tuple<int, size_t, Monomial>;
using FlatVec = std::map<FlatKey, Rational>;

FlatVec flatten_series(const LaurentSeries& s) {
  FlatVec v;
  for (const auto& [deg, c] : s.terms())
    for (size_t fc = 0; fc < s.ring().num_factors(); ++fc)
      for (const auto& [mon, coef] : c.comp(fc)) v[{deg, fc, mon}] = coef;
  return v;
}

struct Echelon {
  const BaseField& k;
  std::map<FlatKey, FlatVec> rows;  // keyed by leading position
  explicit Echelon(const BaseField& field) : k(field) {}
  // returns true if v was independent (and absorbed)
  bool insert(FlatVec v) {
    while (!v.empty()) {
      auto lead = v.begin()->first;
      auto it = rows.find(lead);
      if (it == rows.end()) {
        rows.emplace(lead, std::move(v));
        return true;
      }
      Rational fct = k.mul(v.begin()->second, k.inv(it->second.begin()->second));
      for (const auto& [key, c] : it->second) {
        auto jt = v.find(key);
        Rational nv = k.sub(jt == v.end() ? Rational(0) : jt->second, k.mul(fct, c));
        if (nv == 0) {
          if (jt != v.end()) v.erase(jt);
        } else {
          v[key] = nv;
        }
      }
    }
    return false;
  }
};

}  // namespace

NestedBound nested_positive_bound(const std::vector<LaurentSeries>& eps, unsigned long long cap) {
  if (eps.empty()) throw std::invalid_argument("need at least one series");
  const TestRing& R = eps[0].ring();
  NestedBound out;
  int floor = 0;
  for (const auto& e : eps) {
    if (!e.exact()) throw std::invalid_argument("eps must be exact");
    if (!e.is_nilpotent_exact()) throw not_invertible("eps must be nilpotent");
    if (!e.empty()) floor = std::min(floor, e.floor_bound());
  }
  out.d = std::max(0, -floor);
  std::vector<LaurentSeries> gens;
  for (const auto& e : eps) {
    if (e.empty()) continue;
    gens.push_back(e);
    for (const auto& [deg, c] : e.terms())
      if (deg >= -out.d && deg <= out.d) gens.push_back(LaurentSeries::monomial(R, c, 0));
  }
  // least Q with every Q-fold product of generators zero
  int Q = 1;
  {
    std::vector<LaurentSeries> level;
    {
      Echelon ech(R.field());
      for (const auto& g : gens)
        if (ech.insert(flatten_series(g))) level.push_back(g);
    }
    while (!level.empty()) {
      Echelon ech(R.field());
      std::vector<LaurentSeries> next;
      for (const auto& g : gens)
        for (const auto& b : level) {
          LaurentSeries prod = g * b;
          if (!prod.empty() && ech.insert(flatten_series(prod))) next.push_back(prod);
        }
      level = std::move(next);
      ++Q;
    }
  }
  out.Q = Q;
  out.M = 3 * Q;
  size_t n = eps.size();
  double total = 1;
  for (int i = 0; i < out.M; ++i) total *= static_cast<double>(n);
  if (total > static_cast<double>(cap))
    throw std::invalid_argument("enumeration cap exceeded in nested_positive_bound");
  out.sequences = 1;
  for (int i = 0; i < out.M; ++i) out.sequences *= n;
  // exhaustive over all index sequences, with distinct-value deduplication per
  // nesting level (a zero value stays zero under every extension)
  std::vector<LaurentSeries> values;
  for (const auto& e : eps) values.push_back(e.positive_part());
  for (int step = 1; step < out.M; ++step) {
    std::vector<LaurentSeries> next;
    for (const auto& v : values) {
      if (v.empty()) continue;
      for (const auto& e : eps) next.push_back((e * v).positive_part());
    }
    std::vector<LaurentSeries> ded;
    for (auto& x : next) {
      bool seen = false;
      for (const auto& y : ded)
        if (x == y) {
          seen = true;
          break;
        }
      if (!seen) ded.push_back(std::move(x));
    }
    values = std::move(ded);
    if (values.empty()) break;
  }
  out.vanish_ok = true;
  for (const auto& v : values)
    if (!v.empty()) out.vanish_ok = false;
  return out;
}

}  // namespace dloop
