#include "dloop/expr.hpp"

#include <cctype>
#include <sstream>

namespace dloop {

namespace {

bool reserved_name(const std::string& n) {
  return n == "t" || n == "s" || n == "x" || n == "y" || n == "inv" || n == "O";
}

struct Lexer {
  std::string text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool accept(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) throw parse_error(std::string("expected '") + c + "' at offset " + std::to_string(pos));
  }
  bool ident_ahead() {
    skip_ws();
    return pos < text.size() && (std::isalpha(static_cast<unsigned char>(text[pos])) || text[pos] == '_');
  }
  std::string ident() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw parse_error("expected identifier at offset " + std::to_string(pos));
    return text.substr(start, pos - start);
  }
  bool digit_ahead() {
    skip_ws();
    return pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]));
  }
  long integer() {
    skip_ws();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
      neg = text[pos] == '-';
      ++pos;
    }
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      throw parse_error("expected integer at offset " + std::to_string(pos));
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    return neg ? -v : v;
  }
};

Monomial parse_relation(Lexer& lx, const std::vector<std::string>& gens) {
  Monomial m(gens.size(), 0);
  while (true) {
    std::string g = lx.ident();
    auto it = std::find(gens.begin(), gens.end(), g);
    if (it == gens.end()) throw parse_error("unknown generator in relation: " + g);
    long e = 1;
    if (lx.accept('^')) e = lx.integer();
    if (e < 1) throw parse_error("relation exponents must be positive");
    m[static_cast<size_t>(it - gens.begin())] += static_cast<unsigned>(e);
    if (!lx.accept('*')) break;
  }
  return m;
}

LocalFactor parse_factor(const std::string& text, long& char_out) {
  Lexer lx{text};
  std::string base = lx.ident();
  long p = 0;
  if (base == "Q") {
    p = 0;
  } else if (base.size() >= 2 && base[0] == 'F') {
    p = std::stol(base.substr(1));
  } else {
    throw parse_error("unknown base field: " + base);
  }
  char_out = p;
  std::vector<std::string> gens;
  std::vector<Monomial> rels;
  if (lx.accept('[')) {
    while (true) {
      std::string g = lx.ident();
      if (reserved_name(g)) throw parse_error("reserved generator name: " + g);
      gens.push_back(g);
      if (!lx.accept(',')) break;
    }
    lx.expect(']');
    lx.expect('/');
    lx.expect('(');
    while (true) {
      rels.push_back(parse_relation(lx, gens));
      if (!lx.accept(',')) break;
    }
    lx.expect(')');
  }
  if (!lx.eof()) throw parse_error("trailing input in ring factor: " + text);
  return LocalFactor(gens, rels);
}

}  // namespace

std::shared_ptr<const TestRing> parse_ring(const std::string& text) {
  // split into factors at top-level 'x'
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    if (c == 'x' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  std::vector<LocalFactor> factors;
  long p = -1;
  for (const auto& part : parts) {
    long pf = 0;
    factors.push_back(parse_factor(part, pf));
    if (p == -1)
      p = pf;
    else if (p != pf)
      throw parse_error("mixed characteristics in product ring");
  }
  auto ring = std::make_shared<TestRing>(BaseField(p), std::move(factors));
  ring->set_name(ring_str(*ring));
  return ring;
}

std::string ring_str(const TestRing& ring) {
  std::ostringstream os;
  long p = ring.field().characteristic();
  for (size_t f = 0; f < ring.num_factors(); ++f) {
    if (f) os << " x ";
    if (p == 0)
      os << "Q";
    else
      os << "F" << p;
    const LocalFactor& fac = ring.factors()[f];
    if (!fac.gens().empty()) {
      os << "[";
      for (size_t g = 0; g < fac.gens().size(); ++g) {
        if (g) os << ",";
        os << fac.gens()[g];
      }
      os << "]/(";
      for (size_t r = 0; r < fac.relations().size(); ++r) {
        if (r) os << ",";
        os << monomial_str(fac.relations()[r], fac.gens());
      }
      os << ")";
    }
  }
  return os.str();
}

namespace {

struct SeriesParser {
  Lexer lx;
  const TestRing& ring;
  int t_prec, s_prec;
  // when >= 0, identifiers resolve in this factor only (inside a tuple)
  int factor_scope = -1;

  IterSeries parse_expr() {
    bool neg = lx.accept('-');
    IterSeries v = parse_term();
    if (neg) v = -v;
    while (true) {
      if (lx.accept('+'))
        v = v + parse_term();
      else if (lx.accept('-'))
        v = v - parse_term();
      else
        break;
    }
    return v;
  }

  IterSeries parse_term() {
    IterSeries v = parse_power();
    while (lx.accept('*')) v = v * parse_power();
    return v;
  }

  IterSeries parse_power() {
    IterSeries v = parse_atom();
    if (lx.accept('^')) {
      long e = lx.integer();
      IterSeries base = v;
      if (e < 0) {
        base = invert_full(base, t_prec, s_prec);
        e = -e;
      }
      IterSeries r = IterSeries::one(ring);
      for (long i = 0; i < e; ++i) r = r * base;
      v = r;
    }
    return v;
  }

  IterSeries resolve_ident(const std::string& name) {
    if (name == "t" || name == "x") return IterSeries::monomial(ring, RingElement::one(ring), 1, 0);
    if (name == "s" || name == "y") return IterSeries::monomial(ring, RingElement::one(ring), 0, 1);
    std::optional<std::pair<size_t, size_t>> hit;
    for (size_t f = 0; f < ring.num_factors(); ++f) {
      if (factor_scope >= 0 && f != static_cast<size_t>(factor_scope)) continue;
      const auto& gens = ring.factors()[f].gens();
      for (size_t g = 0; g < gens.size(); ++g)
        if (gens[g] == name) {
          if (hit) throw parse_error("ambiguous generator name: " + name);
          hit = {f, g};
        }
    }
    if (!hit) throw parse_error("unknown identifier: " + name);
    return IterSeries::monomial(ring, RingElement::generator(ring, hit->first, hit->second), 0, 0);
  }

  // does the paren group starting at lx.pos contain a top-level comma?
  bool tuple_ahead() {
    size_t p = lx.pos;
    int depth = 0;
    for (; p < lx.text.size(); ++p) {
      char c = lx.text[p];
      if (c == '(') ++depth;
      if (c == ')') {
        --depth;
        if (depth == 0) return false;
      }
      if (c == ',' && depth == 1) return true;
    }
    return false;
  }

  IterSeries parse_atom() {
    if (lx.peek() == '(') {
      bool tuple = tuple_ahead();
      lx.expect('(');
      if (tuple) {
        if (factor_scope >= 0) throw parse_error("nested tuples are not supported");
        std::vector<IterSeries> comps;
        while (true) {
          factor_scope = static_cast<int>(comps.size());
          if (factor_scope >= static_cast<int>(ring.num_factors()))
            throw parse_error("tuple has more components than ring factors");
          comps.push_back(parse_expr());
          if (!lx.accept(',')) break;
        }
        factor_scope = -1;
        lx.expect(')');
        if (comps.size() != ring.num_factors())
          throw parse_error("tuple arity does not match ring factor count");
        IterSeries out = IterSeries::zero(ring);
        for (size_t f = 0; f < comps.size(); ++f)
          out = out + comps[f].scaled(RingElement::factor_unit(ring, f));
        return out;
      }
      IterSeries v = parse_expr();
      lx.expect(')');
      return v;
    }
    if (lx.digit_ahead()) {
      long num = lx.integer();
      if (lx.accept('/')) {
        long den = lx.integer();
        return IterSeries::scalar(ring, Rational(num) / den);
      }
      return IterSeries::scalar(ring, Rational(num));
    }
    if (lx.ident_ahead()) {
      std::string name = lx.ident();
      if (name == "inv") {
        lx.expect('(');
        IterSeries v = parse_expr();
        lx.expect(')');
        return invert_full(v, t_prec, s_prec);
      }
      if (name == "O") {
        lx.expect('(');
        std::string var = lx.ident();
        lx.expect('^');
        long n = lx.integer();
        lx.expect(')');
        IterSeries out = IterSeries::zero(ring);
        if (var == "t" || var == "x") {
          LaurentSeries z(ring);
          z.set_prec(static_cast<int>(n));
          out.set_slice(0, z);
        } else if (var == "s" || var == "y") {
          out.set_outer_prec(static_cast<int>(n));
        } else {
          throw parse_error("unknown variable in O(): " + var);
        }
        return out;
      }
      return resolve_ident(name);
    }
    throw parse_error("unexpected input at offset " + std::to_string(lx.pos));
  }
};

}  // namespace

IterSeries parse_series(const std::string& text, const TestRing& ring, int t_prec, int s_prec) {
  SeriesParser p{Lexer{text}, ring, t_prec, s_prec};
  IterSeries v = p.parse_expr();
  if (!p.lx.eof()) throw parse_error("trailing input at offset " + std::to_string(p.lx.pos));
  return v;
}

namespace {

// coefficient text plus whether it needs parentheses and whether it is plain 1
struct CoefText {
  std::string text;
  bool needs_parens = false;
  bool is_one = false;
  bool is_minus_one = false;
};

CoefText coef_text(const RingElement& c) {
  CoefText out;
  const TestRing& R = c.ring();
  out.text = c.str();
  if (R.num_factors() > 1) {
    // already printed as a tuple, which re-parses
    out.needs_parens = false;
    return out;
  }
  const auto& m = c.comp(0);
  if (m.size() == 1) {
    const auto& [mon, v] = *m.begin();
    if (total_degree(mon) == 0) {
      out.is_one = (v == 1);
      out.is_minus_one = (v == -1);
      out.needs_parens = false;
    } else {
      out.needs_parens = (v < 0);
    }
  } else {
    out.needs_parens = true;
  }
  return out;
}

void emit_term(std::ostringstream& os, bool& first, const RingElement& c, int i, int j, char tv,
               char sv) {
  CoefText ct = coef_text(c);
  std::string sep = first ? "" : " + ";
  first = false;
  std::ostringstream vars;
  if (i != 0) vars << tv << "^" << i;
  if (j != 0) {
    if (i != 0) vars << "*";
    vars << sv << "^" << j;
  }
  std::string vs = vars.str();
  if (vs.empty()) {
    if (!sep.empty() && !ct.needs_parens && !ct.text.empty() && ct.text[0] == '-')
      os << " - " << ct.text.substr(1);
    else
      os << sep << (ct.needs_parens ? "(" + ct.text + ")" : ct.text);
    return;
  }
  if (ct.is_one) {
    os << sep << vs;
  } else if (ct.is_minus_one) {
    os << sep << "-" << vs;
  } else if (ct.needs_parens) {
    os << sep << "(" << ct.text << ")*" << vs;
  } else {
    os << sep << ct.text << "*" << vs;
  }
}

}  // namespace

std::string canonical_str(const IterSeries& f, char inner, char outer) {
  std::ostringstream os;
  bool first = true;
  int min_inner = kPrecExact;
  for (const auto& [j, sl] : f.slices()) {
    min_inner = std::min(min_inner, sl.prec());
    for (const auto& [i, c] : sl.terms()) emit_term(os, first, c, i, j, inner, outer);
  }
  if (first) os << "0";
  if (min_inner != kPrecExact) os << " + O(" << inner << "^" << min_inner << ")";
  if (!f.outer_exact()) os << " + O(" << outer << "^" << f.outer_prec() << ")";
  return os.str();
}

std::string canonical_str(const LaurentSeries& f) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : f.terms()) emit_term(os, first, c, i, 0, f.var(), 's');
  if (first) os << "0";
  if (!f.exact()) os << " + O(" << f.var() << "^" << f.prec() << ")";
  return os.str();
}

}  // namespace dloop
