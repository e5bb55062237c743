#pragma once

#include "dloop/ga.hpp"

namespace dloop {

// Split solvable group given as a tower of Gm and Ga layers. A Ga layer
// carries a character: integer exponents on the previous Gm coordinates; the
// torus acts on it by multiplication with that character.
struct TowerLayer {
  enum class Kind { Gm, Ga };
  Kind kind = Kind::Gm;
  std::string name;
  std::map<std::string, int> character;  // Ga layers only; keys are Gm names
};

struct TowerDescriptor {
  std::vector<TowerLayer> layers;
  void validate() const;
  size_t layer_index(const std::string& name) const;
  std::string str() const;
};

// `tower(Gm,Gm,Ga[a^-1 d])`; unnamed Gm layers are called a, d, c3, c4, ...
// and unnamed Ga layers u, v, w3, ...; explicit names via `Gm:name`.
TowerDescriptor parse_tower(const std::string& text);

struct TowerElement {
  const TowerDescriptor* desc;
  std::vector<IterSeries> coords;
};

TowerElement tower_identity(const TowerDescriptor& d, const TestRing& R);
TowerElement tower_mul(const TowerElement& a, const TowerElement& b, int t_prec = 12,
                       int s_prec = 8);
TowerElement tower_inv(const TowerElement& a, int t_prec = 12, int s_prec = 8);

struct TowerLayerNF {
  std::string name;
  TowerLayer::Kind kind = TowerLayer::Kind::Gm;
  std::optional<NormalFormResult> gm;    // torus layers
  std::optional<AdditiveSplit> ga;       // unipotent layers
};

struct TowerNormalForm {
  TowerElement rep;      // tuple of layer representatives
  TowerElement witness;  // subgroup element q with g*q = rep layerwise
  std::vector<TowerLayerNF> layers;
};

TowerNormalForm reduce_tower(const TowerElement& g, Quotient q, int t_prec, int s_prec);

}  // namespace dloop
