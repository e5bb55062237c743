#pragma once

#include "dloop/gm.hpp"

namespace dloop {

// Loci of the model flag (A^2, D = {y=0}, Z = origin), with x the inner and y
// the outer variable.
enum class FlagTag {
  Dhat,
  Dhat_aff,
  Zhat_aff,
  Zhat_Dhat_affDhat,
  Zhat_minus_D,
  Zhat_Dhat_minus_Z_aff,
  Zhat_Dhat_minus_Z_minus_D,
  O2_pushout,
};

FlagTag flag_from_string(const std::string& s);
std::string to_string(FlagTag t);

struct FiberRing {
  std::string description;             // ring of functions at the locus
  std::optional<SubringTag> subring;   // when it is one of the series subrings
};

FiberRing fiber_ring(FlagTag tag);

struct GeometricMap {
  Quotient quot;
  bool caveat = false;  // comparison known on k-points only
};

// geomLGr, geomBig, geomJet, geom2, geomLoopGr
GeometricMap geometric_to_quotient(const std::string& name);

}  // namespace dloop
