#ifndef DQA_POLY_HPP
#define DQA_POLY_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dqa/coeff.hpp"
#include "dqa/terms.hpp"

namespace dqa {

class PolyEndo;

// Sparse commutative polynomial in nvars variables X1..Xm over a CoeffRing.
// Variable indices are 0-based in the API and 1-based when printed.
class Poly {
public:
  Poly(CoeffRing ring, std::size_t nvars);

  static Poly constant(CoeffRing ring, std::size_t nvars, const Coeff &c);
  static Poly constant(CoeffRing ring, std::size_t nvars, long c);
  static Poly variable(CoeffRing ring, std::size_t nvars, std::size_t i);
  static Poly term(CoeffRing ring, const Monomial &m, const Coeff &c);
  static Poly from_terms(CoeffRing ring, std::size_t nvars, TermList terms);

  const CoeffRing &ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  const TermList &terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Coeff coeff(const Monomial &m) const;
  Coeff constant_term() const { return coeff(Monomial(nvars_)); }

  // Total degree; empty for the zero polynomial.
  std::optional<unsigned> degree() const;

  Poly &operator+=(const Poly &o);
  Poly &operator-=(const Poly &o);
  Poly &operator*=(const Poly &o) { return *this = *this * o; }
  Poly operator-() const;
  friend Poly operator+(Poly a, const Poly &b) { return a += b; }
  friend Poly operator-(Poly a, const Poly &b) { return a -= b; }
  friend Poly operator*(const Poly &a, const Poly &b);
  friend bool operator==(const Poly &, const Poly &) = default;

  Poly scaled(const Coeff &c) const;
  Poly pow(unsigned e) const;

  // Formal partial derivative with respect to variable i (0-based).
  Poly derivative(std::size_t i) const;
  // f(φ(X1), ..., φ(Xm)).
  Poly substitute(const PolyEndo &phi) const;
  // f^p over F_p, termwise: c X^a -> c X^(p a).
  Poly frobenius_power() const;

  Coeff evaluate(std::span<const Coeff> point) const;

  std::string to_string(char var = 'X') const;

private:
  void check_compatible(const Poly &o) const;

  CoeffRing ring_;
  std::size_t nvars_;
  TermList terms_;
};

inline Poly partial_derivative(const Poly &f, std::size_t i) { return f.derivative(i); }
inline Poly frobenius_power(const Poly &f) { return f.frobenius_power(); }
Poly substitute(const Poly &f, const PolyEndo &phi);

// Algebra endomorphism of R[X1..Xm]: image i is φ(X_{i+1}).
class PolyEndo {
public:
  explicit PolyEndo(std::vector<Poly> images);

  static PolyEndo identity(CoeffRing ring, std::size_t nvars);

  const CoeffRing &ring() const { return images_.front().ring(); }
  std::size_t nvars() const { return images_.size(); }
  const std::vector<Poly> &images() const { return images_; }
  const Poly &image(std::size_t i) const { return images_.at(i); }

  // max total degree of the images; throws std::domain_error when every
  // image is zero.
  unsigned degree() const;
  bool is_identity() const;

  // (φ∘ψ)(X_i) = φ(ψ(X_i)).
  PolyEndo compose(const PolyEndo &psi) const;

  // "X1 -> <image>" for each generator.
  std::vector<std::string> to_lines(char var = 'X') const;

  friend bool operator==(const PolyEndo &, const PolyEndo &) = default;

private:
  std::vector<Poly> images_;
};

inline PolyEndo compose_endo(const PolyEndo &phi, const PolyEndo &psi) { return phi.compose(psi); }
inline unsigned endo_degree(const PolyEndo &phi) { return phi.degree(); }

class PolyMatrix {
public:
  PolyMatrix(std::size_t rows, std::size_t cols, std::vector<Poly> entries);

  static PolyMatrix identity(CoeffRing ring, std::size_t nvars, std::size_t size);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Poly &at(std::size_t i, std::size_t j) const { return entries_.at(i * cols_ + j); }
  const std::vector<Poly> &entries() const { return entries_; }

  PolyMatrix operator*(const PolyMatrix &o) const;
  PolyMatrix substitute(const PolyEndo &phi) const;
  // Division-free cofactor expansion, memoised over column subsets.
  Poly determinant() const;

  friend bool operator==(const PolyMatrix &, const PolyMatrix &) = default;

private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Poly> entries_;
};

// Entry (i, j) = ∂φ(X_i)/∂X_j.
PolyMatrix jacobian(const PolyEndo &phi);
inline Poly determinant(const PolyMatrix &m) { return m.determinant(); }

} // namespace dqa

#endif
