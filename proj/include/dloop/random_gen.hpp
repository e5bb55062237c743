#pragma once

#include <random>

#include "dloop/gm.hpp"

namespace dloop {

using Rng = std::mt19937_64;

// random reduced element, coefficients small
RingElement random_element(const TestRing& R, Rng& rng, int density = 2);
RingElement random_nilpotent(const TestRing& R, Rng& rng);
RingElement random_unit(const TestRing& R, Rng& rng);

// exact invertible Laurent series: per factor a unit coefficient at a random
// degree, nilpotent coefficients below, arbitrary above
LaurentSeries random_invertible_series(const TestRing& R, Rng& rng, int lo = -3, int hi = 3);

// exact invertible element of R((t))((s)) in the invertibility normal shape
IterSeries random_invertible_iter(const TestRing& R, Rng& rng, int t_lo = -2, int t_hi = 2,
                                  int s_lo = -2, int s_hi = 2);

// exact finite unit of the tagged subgroup ring
IterSeries random_subgroup_unit(const TestRing& R, Rng& rng, SubringTag tag, int t_hi = 2,
                                int s_hi = 2, int neg_span = 2);

// random L(Sigma)-shaped element: s^m + nilpotent lower slices, exact
IterSeries random_lsigma(const TestRing& R, Rng& rng, int max_tail = 3, int t_lo = -2,
                         int t_hi = 2);

}  // namespace dloop
