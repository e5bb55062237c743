#pragma once

#include "dloop/gm.hpp"

namespace dloop {

// Largest box on which f * witness is fully known and comparable to rep.
Window checkable_window(const IterSeries& f, const NormalFormResult& r);

// Recompute f * witness, compare with the representative on the window, check
// subgroup membership and unit-ness of the witness, and the representative's
// structural invariants. Fills r.window and r.verdict.
Verdict verify_reduction(const IterSeries& f, NormalFormResult& r);

// reduce + verify, retrying at higher precision while the verdict is
// indeterminate
NormalFormResult reduce_verified(const IterSeries& f, Quotient q, int t_prec, int s_prec);

// Window-bounded semi-decision of coset equality: reduce both sides and
// compare representatives (and valuation data) on the common window.
bool coset_equal(const IterSeries& f, const IterSeries& g, Quotient q, int t_prec, int s_prec);

bool series_agree_on_window(const IterSeries& a, const IterSeries& b, const Window& w);

// subgroup-unit test for a (possibly truncated) element of the tagged subring
Tri subgroup_unit_check(const IterSeries& w, SubringTag tag);

}  // namespace dloop
