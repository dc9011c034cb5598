#ifndef DQA_POISSON_HPP
#define DQA_POISSON_HPP

#include <cstdint>
#include <optional>

#include "dqa/poly.hpp"

namespace dqa {

// The canonical Poisson algebra P_n(R) on X1..X2n with {X_i, X_{i+n}} = 1.
struct PoissonContext {
  PoissonContext(CoeffRing ring, std::size_t n);

  std::size_t nvars() const { return 2 * n; }

  CoeffRing ring;
  std::size_t n;
};

// {f,g} = sum_i (df/dX_i dg/dX_{i+n} - df/dX_{i+n} dg/dX_i).
Poly poisson_bracket(const PoissonContext &ctx, const Poly &f, const Poly &g);

// Entry (i, j) = {φ(X_i), φ(X_j)}; antisymmetric for any φ.
PolyMatrix bracket_matrix(const PoissonContext &ctx, const PolyEndo &phi);

// True iff every pairwise bracket of images equals the canonical one.
bool is_symplectic(const PoissonContext &ctx, const PolyEndo &phi);

struct BracketViolation {
  std::size_t i;
  std::size_t j;
  Poly actual;
  Poly expected;
};

// First coordinate pair (i < j) with {φ(X_i), φ(X_j)} != φ({X_i, X_j}).
std::optional<BracketViolation> find_bracket_violation(const PoissonContext &ctx,
                                                       const PolyEndo &phi);

struct Theorem1Check {
  bool symplectic;
  bool n_factorial_unit;
  Poly det;
  bool det_is_one;

  // The det = 1 conclusion is only claimed when both hypotheses hold.
  bool consistent() const { return !(symplectic && n_factorial_unit) || det_is_one; }
};

Theorem1Check check_theorem1(const PoissonContext &ctx, const PolyEndo &phi);

// X_i -> X_i + dH/dX_{i+n} for H in the momenta X_{n+1}..X_{2n}.
PolyEndo hamiltonian_shear(const PoissonContext &ctx, const Poly &h);
// X_{i+n} -> X_{i+n} + dH/dX_i for H in X_1..X_n.
PolyEndo dual_shear(const PoissonContext &ctx, const Poly &h);
// X_i -> X_{i+n}, X_{i+n} -> -X_i for one index i (0-based, i < n).
PolyEndo symplectic_swap(const PoissonContext &ctx, std::size_t i);

struct SymplectoOptions {
  unsigned max_hamiltonian_degree = 3;
  unsigned max_terms = 3;
  long coeff_bound = 2;
};

// Deterministic composition of `steps` random shears and swaps. The result
// is checked with is_symplectic; std::logic_error signals a generator bug.
PolyEndo generate_symplectomorphism(const PoissonContext &ctx, std::uint64_t seed, unsigned steps,
                                    const SymplectoOptions &options = {});

} // namespace dqa

#endif
