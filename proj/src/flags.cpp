#include "dloop/flags.hpp"

namespace dloop {

FlagTag flag_from_string(const std::string& s) {
  if (s == "Dhat") return FlagTag::Dhat;
  if (s == "Dhat_aff") return FlagTag::Dhat_aff;
  if (s == "Zhat_aff") return FlagTag::Zhat_aff;
  if (s == "Zhat_Dhat_affDhat") return FlagTag::Zhat_Dhat_affDhat;
  if (s == "Zhat_minus_D") return FlagTag::Zhat_minus_D;
  if (s == "Zhat_Dhat_minus_Z_aff") return FlagTag::Zhat_Dhat_minus_Z_aff;
  if (s == "Zhat_Dhat_minus_Z_minus_D") return FlagTag::Zhat_Dhat_minus_Z_minus_D;
  if (s == "O2_pushout") return FlagTag::O2_pushout;
  throw std::invalid_argument("unknown flag tag: " + s);
}

std::string to_string(FlagTag t) {
  switch (t) {
    case FlagTag::Dhat: return "Dhat";
    case FlagTag::Dhat_aff: return "Dhat_aff";
    case FlagTag::Zhat_aff: return "Zhat_aff";
    case FlagTag::Zhat_Dhat_affDhat: return "Zhat_Dhat_affDhat";
    case FlagTag::Zhat_minus_D: return "Zhat_minus_D";
    case FlagTag::Zhat_Dhat_minus_Z_aff: return "Zhat_Dhat_minus_Z_aff";
    case FlagTag::Zhat_Dhat_minus_Z_minus_D: return "Zhat_Dhat_minus_Z_minus_D";
    case FlagTag::O2_pushout: return "O2_pushout";
  }
  return "?";
}

FiberRing fiber_ring(FlagTag tag) {
  switch (tag) {
    case FlagTag::Dhat:
      return {"colim_n R[x,y]/(y^n)", std::nullopt};
    case FlagTag::Dhat_aff:
      return {"R[x][[y]]", std::nullopt};
    case FlagTag::Zhat_aff:
      return {"R[[x,y]]", SubringTag::JJ};
    case FlagTag::Zhat_Dhat_affDhat:
      return {"colim_n R[[x]][y]/(y^n)", std::nullopt};
    case FlagTag::Zhat_minus_D:
      return {"R[[x]]((y))", SubringTag::JL};
    case FlagTag::Zhat_Dhat_minus_Z_aff:
      return {"R((x))[[y]]", SubringTag::LJ};
    case FlagTag::Zhat_Dhat_minus_Z_minus_D:
      return {"R((x))((y))", SubringTag::LL};
    case FlagTag::O2_pushout:
      return {"R[[x]] + sum_{i>0} R((x))y^i", SubringTag::O2};
  }
  throw std::invalid_argument("bad flag tag");
}

GeometricMap geometric_to_quotient(const std::string& name) {
  if (name == "geomLGr") return {Quotient::LGr, false};
  if (name == "geomBig") return {Quotient::GrBig, false};
  if (name == "geomJet") return {Quotient::GrJ, false};
  if (name == "geom2") return {Quotient::Gr2, false};
  if (name == "geomLoopGr") return {Quotient::GrL, true};
  throw std::invalid_argument("unknown geometric Grassmannian: " + name);
}

}  // namespace dloop
