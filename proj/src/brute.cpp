#include "dloop/brute.hpp"

namespace dloop {

UniquenessReport brute_force_uniqueness(const TestRing&, Quotient, const WindowSpec&,
                                        const BruteOptions&) {
  throw std::logic_error("not yet implemented");
}

}  // namespace dloop
