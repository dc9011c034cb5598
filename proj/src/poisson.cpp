#include "dqa/poisson.hpp"

#include <random>
#include <stdexcept>

#include "dqa/random_poly.hpp"

namespace dqa {

PoissonContext::PoissonContext(CoeffRing ring_, std::size_t n_) : ring(ring_), n(n_) {
  if (n == 0)
    throw std::invalid_argument("Poisson index must be at least 1");
  if (2 * n > kMaxVars)
    throw std::invalid_argument("Poisson index too large (2n <= 8)");
}

namespace {

void check_arity(const PoissonContext &ctx, const Poly &f) {
  if (f.nvars() != ctx.nvars() || !(f.ring() == ctx.ring))
    throw RingMismatch("polynomial is not in P_" + std::to_string(ctx.n) + "(" +
                       ctx.ring.to_string() + ")");
}

void check_arity(const PoissonContext &ctx, const PolyEndo &phi) {
  if (phi.nvars() != ctx.nvars() || !(phi.ring() == ctx.ring))
    throw RingMismatch("endomorphism does not act on P_" + std::to_string(ctx.n) + "(" +
                       ctx.ring.to_string() + ")");
}

Poly canonical_pairing(const PoissonContext &ctx, std::size_t i, std::size_t j) {
  long v = 0;
  if (j == i + ctx.n)
    v = 1;
  else if (i == j + ctx.n)
    v = -1;
  return Poly::constant(ctx.ring, ctx.nvars(), v);
}

} // namespace

Poly poisson_bracket(const PoissonContext &ctx, const Poly &f, const Poly &g) {
  check_arity(ctx, f);
  check_arity(ctx, g);
  Poly out(ctx.ring, ctx.nvars());
  for (std::size_t i = 0; i < ctx.n; ++i) {
    out += f.derivative(i) * g.derivative(i + ctx.n);
    out -= f.derivative(i + ctx.n) * g.derivative(i);
  }
  return out;
}

PolyMatrix bracket_matrix(const PoissonContext &ctx, const PolyEndo &phi) {
  check_arity(ctx, phi);
  const std::size_t m = ctx.nvars();
  std::vector<Poly> entries(m * m, Poly(ctx.ring, m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Poly b = poisson_bracket(ctx, phi.image(i), phi.image(j));
      entries[j * m + i] = -b;
      entries[i * m + j] = std::move(b);
    }
  return PolyMatrix(m, m, std::move(entries));
}

bool is_symplectic(const PoissonContext &ctx, const PolyEndo &phi) {
  return !find_bracket_violation(ctx, phi).has_value();
}

std::optional<BracketViolation> find_bracket_violation(const PoissonContext &ctx,
                                                       const PolyEndo &phi) {
  check_arity(ctx, phi);
  const std::size_t m = ctx.nvars();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Poly b = poisson_bracket(ctx, phi.image(i), phi.image(j));
      Poly expected = canonical_pairing(ctx, i, j);
      if (!(b == expected))
        return BracketViolation{i, j, std::move(b), std::move(expected)};
    }
  return std::nullopt;
}

Theorem1Check check_theorem1(const PoissonContext &ctx, const PolyEndo &phi) {
  bool symplectic = is_symplectic(ctx, phi);
  Poly det = jacobian(phi).determinant();
  bool one = det.is_one();
  return Theorem1Check{symplectic, ctx.ring.factorial_is_unit(ctx.n), std::move(det), one};
}

PolyEndo hamiltonian_shear(const PoissonContext &ctx, const Poly &h) {
  check_arity(ctx, h);
  for (const auto &[m, c] : h.terms())
    for (std::size_t i = 0; i < ctx.n; ++i)
      if (m[i] != 0)
        throw std::invalid_argument("shear Hamiltonian must only involve X_{n+1}..X_{2n}");
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ctx.nvars(); ++i)
    images.push_back(Poly::variable(ctx.ring, ctx.nvars(), i));
  for (std::size_t i = 0; i < ctx.n; ++i)
    images[i] += h.derivative(i + ctx.n);
  return PolyEndo(std::move(images));
}

PolyEndo dual_shear(const PoissonContext &ctx, const Poly &h) {
  check_arity(ctx, h);
  for (const auto &[m, c] : h.terms())
    for (std::size_t i = ctx.n; i < ctx.nvars(); ++i)
      if (m[i] != 0)
        throw std::invalid_argument("dual shear Hamiltonian must only involve X_1..X_n");
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ctx.nvars(); ++i)
    images.push_back(Poly::variable(ctx.ring, ctx.nvars(), i));
  for (std::size_t i = 0; i < ctx.n; ++i)
    images[i + ctx.n] += h.derivative(i);
  return PolyEndo(std::move(images));
}

PolyEndo symplectic_swap(const PoissonContext &ctx, std::size_t i) {
  if (i >= ctx.n)
    throw std::out_of_range("swap index out of range");
  std::vector<Poly> images;
  for (std::size_t k = 0; k < ctx.nvars(); ++k)
    images.push_back(Poly::variable(ctx.ring, ctx.nvars(), k));
  images[i] = Poly::variable(ctx.ring, ctx.nvars(), i + ctx.n);
  images[i + ctx.n] = -Poly::variable(ctx.ring, ctx.nvars(), i);
  return PolyEndo(std::move(images));
}

PolyEndo generate_symplectomorphism(const PoissonContext &ctx, std::uint64_t seed, unsigned steps,
                                    const SymplectoOptions &options) {
  std::mt19937_64 rng(seed);
  PolyEndo phi = PolyEndo::identity(ctx.ring, ctx.nvars());
  std::vector<std::size_t> positions, momenta;
  for (std::size_t i = 0; i < ctx.n; ++i) {
    positions.push_back(i);
    momenta.push_back(i + ctx.n);
  }
  RandomPolySpec spec{options.max_hamiltonian_degree, options.max_terms, options.coeff_bound, 2};
  for (unsigned s = 0; s < steps; ++s) {
    PolyEndo step = PolyEndo::identity(ctx.ring, ctx.nvars());
    switch (rng() % 3) {
    case 0:
      step = hamiltonian_shear(ctx, random_poly(rng, ctx.ring, ctx.nvars(), momenta, spec));
      break;
    case 1:
      step = dual_shear(ctx, random_poly(rng, ctx.ring, ctx.nvars(), positions, spec));
      break;
    default:
      step = symplectic_swap(ctx, rng() % ctx.n);
      break;
    }
    phi = phi.compose(step);
  }
  if (auto bad = find_bracket_violation(ctx, phi))
    throw std::logic_error("generated endomorphism is not symplectic at pair (" +
                           std::to_string(bad->i + 1) + ", " + std::to_string(bad->j + 1) + ")");
  return phi;
}

} // namespace dqa
