#pragma once

#include <memory>

#include "dloop/iter_series.hpp"

namespace dloop {

struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Ring declaration grammar: `Q`, `F2`, `Q[e1,e2]/(e1^2,e2^2)`, products joined
// by `x` as `Q[e]/(e^2) x Q`. Generator names may not be t, s, x, y or inv.
std::shared_ptr<const TestRing> parse_ring(const std::string& text);
std::string ring_str(const TestRing& ring);

// Series expression grammar: rational literals, ring generators by name,
// variables t, s (x, y accepted as aliases), integer exponents (negative
// allowed), + - *, parentheses, inv(expr), truncation markers O(t^N)/O(s^M),
// and per-factor tuples `(a, b)` over product rings.
IterSeries parse_series(const std::string& text, const TestRing& ring, int t_prec = 12,
                        int s_prec = 8);

// Canonical output: terms sorted by (outer degree, inner degree), coefficient
// text parenthesized whenever it would not re-parse as a single factor.
std::string canonical_str(const IterSeries& f, char inner = 't', char outer = 's');
std::string canonical_str(const LaurentSeries& f);

}  // namespace dloop
