#include "dloop/tower.hpp"

#include <cctype>
#include <sstream>

namespace dloop {

void TowerDescriptor::validate() const {
  std::vector<std::string> gm_names;
  std::vector<std::string> all;
  for (const auto& l : layers) {
    if (l.name.empty()) throw std::invalid_argument("unnamed tower layer");
    for (const auto& n : all)
      if (n == l.name) throw std::invalid_argument("duplicate layer name: " + l.name);
    all.push_back(l.name);
    if (l.kind == TowerLayer::Kind::Gm) {
      if (!l.character.empty()) throw std::invalid_argument("Gm layers carry no character");
      gm_names.push_back(l.name);
    } else {
      for (const auto& [n, e] : l.character) {
        (void)e;
        bool ok = false;
        for (const auto& g : gm_names) ok = ok || g == n;
        if (!ok) throw std::invalid_argument("character references unknown Gm layer: " + n);
      }
    }
  }
}

size_t TowerDescriptor::layer_index(const std::string& name) const {
  for (size_t i = 0; i < layers.size(); ++i)
    if (layers[i].name == name) return i;
  throw std::invalid_argument("unknown layer: " + name);
}

std::string TowerDescriptor::str() const {
  std::ostringstream os;
  os << "tower(";
  for (size_t i = 0; i < layers.size(); ++i) {
    if (i) os << ",";
    os << (layers[i].kind == TowerLayer::Kind::Gm ? "Gm" : "Ga") << ":" << layers[i].name;
    if (!layers[i].character.empty()) {
      os << "[";
      bool first = true;
      for (const auto& [n, e] : layers[i].character) {
        if (!first) os << " ";
        first = false;
        os << n;
        if (e != 1) os << "^" << e;
      }
      os << "]";
    }
  }
  os << ")";
  return os.str();
}

TowerDescriptor parse_tower(const std::string& text) {
  size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto ident = [&] {
    skip();
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos) throw std::invalid_argument("tower: expected identifier");
    return text.substr(start, pos - start);
  };
  auto expect = [&](char c) {
    skip();
    if (pos >= text.size() || text[pos] != c)
      throw std::invalid_argument(std::string("tower: expected '") + c + "'");
    ++pos;
  };
  auto integer = [&] {
    skip();
    bool neg = false;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) neg = text[pos++] == '-';
    int v = 0;
    bool any = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos++] - '0');
      any = true;
    }
    if (!any) throw std::invalid_argument("tower: expected integer");
    return neg ? -v : v;
  };
  if (ident() != "tower") throw std::invalid_argument("tower literal must start with 'tower('");
  expect('(');
  TowerDescriptor d;
  int gm_count = 0, ga_count = 0;
  const char* gm_defaults[] = {"a", "d"};
  const char* ga_defaults[] = {"u", "v"};
  while (true) {
    std::string kind = ident();
    TowerLayer layer;
    if (kind == "Gm")
      layer.kind = TowerLayer::Kind::Gm;
    else if (kind == "Ga")
      layer.kind = TowerLayer::Kind::Ga;
    else
      throw std::invalid_argument("tower: unknown layer kind " + kind);
    skip();
    if (pos < text.size() && text[pos] == ':') {
      ++pos;
      layer.name = ident();
    } else if (layer.kind == TowerLayer::Kind::Gm) {
      layer.name = gm_count < 2 ? gm_defaults[gm_count] : "c" + std::to_string(gm_count + 1);
    } else {
      layer.name = ga_count < 2 ? ga_defaults[ga_count] : "w" + std::to_string(ga_count + 1);
    }
    if (layer.kind == TowerLayer::Kind::Gm)
      ++gm_count;
    else
      ++ga_count;
    skip();
    if (pos < text.size() && text[pos] == '[') {
      ++pos;
      while (true) {
        std::string n = ident();
        int e = 1;
        skip();
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          e = integer();
        }
        layer.character[n] += e;
        skip();
        if (pos < text.size() && text[pos] == '*') {
          ++pos;
          continue;
        }
        if (pos < text.size() && text[pos] == ']') break;
        if (pos >= text.size()) throw std::invalid_argument("tower: unterminated character");
      }
      expect(']');
    }
    d.layers.push_back(std::move(layer));
    skip();
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    break;
  }
  expect(')');
  skip();
  if (pos != text.size()) throw std::invalid_argument("tower: trailing input");
  d.validate();
  return d;
}

TowerElement tower_identity(const TowerDescriptor& d, const TestRing& R) {
  TowerElement e{&d, {}};
  for (const auto& l : d.layers)
    e.coords.push_back(l.kind == TowerLayer::Kind::Gm ? IterSeries::one(R) : IterSeries::zero(R));
  return e;
}

namespace {

void check_same(const TowerElement& a, const TowerElement& b) {
  if (a.desc != b.desc) throw std::invalid_argument("tower descriptor mismatch");
  if (a.coords.size() != b.coords.size() || a.coords.empty())
    throw std::invalid_argument("tower arity mismatch");
  if (&a.coords[0].ring() != &b.coords[0].ring()) throw ring_mismatch("tower ring mismatch");
}

// evaluate the character of a Ga layer on the torus part of g
IterSeries character_value(const TowerElement& g, const TowerLayer& layer, int t_prec,
                           int s_prec) {
  const TestRing& R = g.coords[0].ring();
  IterSeries v = IterSeries::one(R);
  for (const auto& [name, e] : layer.character) {
    if (e == 0) continue;
    const IterSeries& coord = g.coords[g.desc->layer_index(name)];
    IterSeries base = e > 0 ? coord : invert_full(coord, t_prec, s_prec);
    for (int i = 0; i < std::abs(e); ++i) v = v * base;
  }
  return v;
}

}  // namespace

TowerElement tower_mul(const TowerElement& a, const TowerElement& b, int t_prec, int s_prec) {
  check_same(a, b);
  TowerElement r{a.desc, {}};
  for (size_t i = 0; i < a.coords.size(); ++i) {
    const TowerLayer& layer = a.desc->layers[i];
    if (layer.kind == TowerLayer::Kind::Gm) {
      r.coords.push_back(a.coords[i] * b.coords[i]);
    } else {
      IterSeries chi = character_value(b, layer, t_prec, s_prec);
      r.coords.push_back(chi * a.coords[i] + b.coords[i]);
    }
  }
  return r;
}

TowerElement tower_inv(const TowerElement& a, int t_prec, int s_prec) {
  TowerElement r{a.desc, {}};
  for (size_t i = 0; i < a.coords.size(); ++i) {
    const TowerLayer& layer = a.desc->layers[i];
    if (layer.kind == TowerLayer::Kind::Gm) {
      r.coords.push_back(invert_full(a.coords[i], t_prec, s_prec));
    } else {
      // chi(a)^{-1} evaluated via the character on the inverse torus part
      r.coords.push_back(IterSeries::zero(a.coords[i].ring()));
    }
  }
  for (size_t i = 0; i < a.coords.size(); ++i) {
    const TowerLayer& layer = a.desc->layers[i];
    if (layer.kind == TowerLayer::Kind::Ga) {
      IterSeries chi_inv = character_value(r, layer, t_prec, s_prec);
      r.coords[i] = -(chi_inv * a.coords[i]);
    }
  }
  return r;
}

TowerNormalForm reduce_tower(const TowerElement& g, Quotient q, int t_prec, int s_prec) {
  if (g.coords.empty()) throw std::invalid_argument("empty tower element");
  const TestRing& R = g.coords[0].ring();
  const TowerDescriptor& D = *g.desc;
  TowerNormalForm out{TowerElement{&D, {}}, TowerElement{&D, {}}, {}};
  // reduce the torus image componentwise and build the section of the witness
  TowerElement qsec{&D, {}};
  for (size_t i = 0; i < D.layers.size(); ++i) {
    if (D.layers[i].kind == TowerLayer::Kind::Gm) {
      NormalFormResult r = reduce_gm(g.coords[i], q, t_prec, s_prec);
      qsec.coords.push_back(r.witness);
      TowerLayerNF nf;
      nf.name = D.layers[i].name;
      nf.kind = TowerLayer::Kind::Gm;
      nf.gm = std::move(r);
      out.layers.push_back(std::move(nf));
    } else {
      qsec.coords.push_back(IterSeries::zero(R));
      TowerLayerNF nf;
      nf.name = D.layers[i].name;
      nf.kind = TowerLayer::Kind::Ga;
      out.layers.push_back(std::move(nf));
    }
  }
  // transport: g * section(witness) fixes the torus part and rescales the
  // unipotent coordinates by the characters of the witnesses
  TowerElement moved = tower_mul(g, qsec, t_prec, s_prec);
  out.rep.coords.resize(D.layers.size(), IterSeries::zero(R));
  out.witness.coords = qsec.coords;
  size_t gm_seen = 0;
  for (size_t i = 0; i < D.layers.size(); ++i) {
    if (D.layers[i].kind == TowerLayer::Kind::Gm) {
      out.rep.coords[i] = out.layers[i].gm->rep;
      ++gm_seen;
    } else {
      AdditiveSplit split = additive_split_windowed(moved.coords[i], q);
      out.rep.coords[i] = split.rep;
      out.witness.coords[i] = -split.sub;
      TowerLayerNF& nf = out.layers[i];
      nf.ga = std::move(split);
    }
  }
  (void)gm_seen;
  return out;
}

}  // namespace dloop
