#ifndef DQA_WEYL_HPP
#define DQA_WEYL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "dqa/poly.hpp"

namespace dqa {

// A_n(R): generators Y1..Y2n with [Y_i, Y_{i+n}] = 1 for i <= n and all
// other generator pairs commuting. Y_i (i <= n) acts as d/du_i and
// Y_{n+i} as multiplication by u_i.
struct WeylContext {
  WeylContext(CoeffRing ring, std::size_t n);

  std::size_t nvars() const { return 2 * n; }
  bool is_derivation(std::size_t slot) const { return slot < n; }

  friend bool operator==(const WeylContext &, const WeylContext &) = default;

  CoeffRing ring;
  std::size_t n;
};

// Normal-ordered element of A_n(R). A monomial m stands for the word
//   Y_{n+1}^{m[n]} ... Y_{2n}^{m[2n-1]} * Y_1^{m[0]} ... Y_n^{m[n-1]}
// (positions left of derivations); slot k holds the exponent of Y_{k+1}.
class WeylElement {
public:
  explicit WeylElement(const WeylContext &ctx);

  static WeylElement constant(const WeylContext &ctx, const Coeff &c);
  static WeylElement constant(const WeylContext &ctx, long c);
  // Y_{i+1}.
  static WeylElement generator(const WeylContext &ctx, std::size_t i);
  static WeylElement term(const WeylContext &ctx, const Monomial &normal_word, const Coeff &c);
  // Reads each monomial of f as a normal-ordered word.
  static WeylElement from_normal_form(const WeylContext &ctx, const Poly &f);
  // X^a -> Y^(p a): the image of a polynomial under X_i = Y_i^p.
  static WeylElement central_lift(const WeylContext &ctx, const Poly &f);

  const WeylContext &context() const { return ctx_; }
  const TermList &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  std::optional<unsigned> degree() const;

  // The normal form read back as a commutative polynomial in 2n variables.
  Poly normal_form() const;

  WeylElement &operator+=(const WeylElement &o);
  WeylElement &operator-=(const WeylElement &o);
  WeylElement operator-() const;
  friend WeylElement operator+(WeylElement a, const WeylElement &b) { return a += b; }
  friend WeylElement operator-(WeylElement a, const WeylElement &b) { return a -= b; }
  friend WeylElement operator*(const WeylElement &a, const WeylElement &b);
  friend bool operator==(const WeylElement &, const WeylElement &) = default;

  WeylElement scaled(const Coeff &c) const;
  WeylElement pow(unsigned e) const;

  std::string to_string() const;

private:
  void check_compatible(const WeylElement &o) const;

  WeylContext ctx_;
  TermList terms_;
};

WeylElement weyl_mul(const WeylElement &a, const WeylElement &b);
WeylElement commutator(const WeylElement &a, const WeylElement &b);
// Total degree in Y1..Y2n; throws std::domain_error on zero.
unsigned weyl_degree(const WeylElement &a);

struct RelationCheck {
  bool ok = true;
  // Offending generator pair (0-based) and the commutator actually found.
  std::size_t i = 0;
  std::size_t j = 0;
  std::optional<WeylElement> found;
};

// [G_i, G_{i+n}] = 1 and every other pair commutes.
RelationCheck verify_endo_relations(std::span<const WeylElement> images);

class RelationViolation : public std::runtime_error {
public:
  RelationViolation(const std::string &what, RelationCheck check)
      : std::runtime_error(what), check_(std::move(check)) {}
  const RelationCheck &check() const { return check_; }

private:
  RelationCheck check_;
};

// Endomorphism of A_n(R). Only constructible from relation-verified images.
class WeylEndo {
public:
  // Throws RelationViolation when the images break the defining relations.
  static WeylEndo from_images(std::vector<WeylElement> images);
  static WeylEndo identity(const WeylContext &ctx);

  const WeylContext &context() const { return images_.front().context(); }
  const std::vector<WeylElement> &images() const { return images_; }
  const WeylElement &image(std::size_t i) const { return images_.at(i); }

  unsigned degree() const;
  bool is_identity() const;

  std::vector<std::string> to_lines() const;

  friend bool operator==(const WeylEndo &, const WeylEndo &) = default;

private:
  explicit WeylEndo(std::vector<WeylElement> images) : images_(std::move(images)) {}

  std::vector<WeylElement> images_;
};

// Applies φ to elements, caching images of position and derivation
// monomials. Term c*u^g*d^h maps to c*φ(u)^g*φ(d)^h.
class EndoApplier {
public:
  explicit EndoApplier(const WeylEndo &phi);

  WeylElement apply(const WeylElement &a);
  // Image of the normal-ordered word for monomial m.
  WeylElement apply_word(const Monomial &m);

private:
  const WeylElement &block_image(const Monomial &m, bool positions);

  WeylEndo phi_;
  std::unordered_map<Monomial, WeylElement, MonomialHash> positions_;
  std::unordered_map<Monomial, WeylElement, MonomialHash> derivations_;
};

WeylElement apply_endo(const WeylEndo &phi, const WeylElement &a);
// (φ∘ψ)(Y_i) = φ(ψ(Y_i)); the result is re-verified.
WeylEndo compose_weyl_endos(const WeylEndo &phi, const WeylEndo &psi);

bool is_central(const WeylElement &a);

struct CenterSlice {
  std::size_t dimension_found;
  std::size_t dimension_expected;
  bool match;
};

// Joint kernel of ad(Y_1..Y_2n) on elements of degree <= D, compared with the
// span of monomials whose exponents are all divisible by p.
CenterSlice center_slice_check(const WeylContext &ctx, unsigned degree_cap);

// Y_i -> Y_i + dH/du_i for H in the positions Y_{n+1}..Y_{2n}, given as a
// polynomial in 2n variables supported on slots n..2n-1.
WeylEndo weyl_shear(const WeylContext &ctx, const Poly &h);
// Y_{n+i} -> Y_{n+i} + dH/dY_i for H in the derivations Y_1..Y_n.
WeylEndo weyl_dual_shear(const WeylContext &ctx, const Poly &h);
// Y_i -> Y_{n+i}, Y_{n+i} -> -Y_i.
WeylEndo weyl_swap(const WeylContext &ctx, std::size_t i);
// Y_i -> c Y_i, Y_{n+i} -> c^{-1} Y_{n+i}.
WeylEndo weyl_scaling(const WeylContext &ctx, std::size_t i, const Coeff &c);
// Y_i -> base(Y_i) + lift(z_i) with z_i read in X_j = Y_j^p.
WeylEndo central_perturbation(const WeylEndo &base, std::span<const Poly> central);

struct WeylGenOptions {
  unsigned max_hamiltonian_degree = 3;
  unsigned max_terms = 2;
  long coeff_bound = 2;
};

WeylEndo generate_weyl_automorphism(const WeylContext &ctx, std::uint64_t seed, unsigned steps,
                                    const WeylGenOptions &options = {});
// Prime-field only: a small random automorphism plus central terms linear in
// the Y_j^p added to the generators' images.
WeylEndo generate_weyl_endo_central_perturbation(const WeylContext &ctx, std::uint64_t seed);

struct WeylInverseSearch {
  std::optional<WeylEndo> inverse;
  unsigned degree_cap = 0;
  // Highest degree whose monomials were all included in the search.
  unsigned degree_reached = 0;
  // A one-sided solution that failed the two-sided check.
  bool two_sided_failure = false;

  bool exhausted() const { return !inverse && !two_sided_failure && degree_reached >= degree_cap; }
};

struct SearchBudget {
  // Maximum number of unknown coefficients per image.
  std::size_t max_unknowns = 2500;
};

// Solves φ(ψ(Y_i)) = Y_i for ψ with images of degree <= D (linear in ψ's
// coefficients), then verifies ψ∘φ = φ∘ψ = id. Requires a field.
WeylInverseSearch inverse_search_weyl(const WeylEndo &phi, unsigned degree_cap,
                                      const SearchBudget &budget = {});

// deg(φ)^(2n-1).
std::uint64_t weyl_inverse_degree_bound(const WeylEndo &phi);

} // namespace dqa

#endif
