#ifndef DQA_CHARP_HPP
#define DQA_CHARP_HPP

#include <optional>
#include <stdexcept>

#include "dqa/poisson.hpp"
#include "dqa/weyl.hpp"

namespace dqa {

// φ restricted to the center F_p[Y_1^p..Y_2n^p], read in X_i = Y_i^p.
struct CenterEndo {
  PolyEndo phi0;
  WeylEndo source;
};

// Thrown when φ(Y_i)^p is not central or has an exponent not divisible by p.
class ReductionFailure : public std::logic_error {
public:
  ReductionFailure(const std::string &what, std::size_t index)
      : std::logic_error(what), index_(index) {}
  std::size_t index() const { return index_; }

private:
  std::size_t index_;
};

CenterEndo induced_center_endo(const WeylEndo &phi);

struct DegreeCheck {
  unsigned deg_phi;
  unsigned deg_phi0;
  bool equal;
  // First generator whose image degrees disagree.
  std::optional<std::size_t> witness;
};

DegreeCheck check_degree_preservation(const CenterEndo &reduced);
DegreeCheck check_degree_preservation(const WeylEndo &phi);

struct Theorem3Check {
  CenterEndo phi0;
  bool symplectic;
  std::optional<BracketViolation> witness;
};

Theorem3Check check_theorem3(const WeylEndo &phi);

} // namespace dqa

#endif
