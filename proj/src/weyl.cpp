#include "dqa/weyl.hpp"

#include <random>
#include <unordered_map>

#include "dqa/linsolve.hpp"
#include "dqa/random_poly.hpp"

namespace dqa {

WeylContext::WeylContext(CoeffRing ring_, std::size_t n_) : ring(ring_), n(n_) {
  if (n == 0)
    throw std::invalid_argument("Weyl index must be at least 1");
  if (2 * n > kMaxVars)
    throw std::invalid_argument("Weyl index too large (2n <= 8)");
}

WeylElement::WeylElement(const WeylContext &ctx) : ctx_(ctx) {}

WeylElement WeylElement::constant(const WeylContext &ctx, const Coeff &c) {
  return term(ctx, Monomial(ctx.nvars()), c);
}

WeylElement WeylElement::constant(const WeylContext &ctx, long c) {
  return constant(ctx, Coeff(ctx.ring, c));
}

WeylElement WeylElement::generator(const WeylContext &ctx, std::size_t i) {
  return term(ctx, Monomial::variable(ctx.nvars(), i), Coeff(ctx.ring, 1L));
}

WeylElement WeylElement::term(const WeylContext &ctx, const Monomial &normal_word, const Coeff &c) {
  if (normal_word.size() != ctx.nvars() || !(c.ring() == ctx.ring))
    throw RingMismatch("term does not belong to this Weyl algebra");
  WeylElement out(ctx);
  if (!c.is_zero())
    out.terms_ = TermList::from_sorted({Term{normal_word, c}});
  return out;
}

WeylElement WeylElement::from_normal_form(const WeylContext &ctx, const Poly &f) {
  if (f.nvars() != ctx.nvars() || !(f.ring() == ctx.ring))
    throw RingMismatch("normal form has the wrong shape");
  WeylElement out(ctx);
  out.terms_ = f.terms();
  return out;
}

WeylElement WeylElement::central_lift(const WeylContext &ctx, const Poly &f) {
  if (!ctx.ring.is_prime_field())
    throw RingMismatch("central lift requires a prime field");
  return from_normal_form(ctx, f.frobenius_power());
}

bool WeylElement::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
}

bool WeylElement::is_one() const {
  return terms_.size() == 1 && terms_.front().first.is_one() && terms_.front().second.is_one();
}

std::optional<unsigned> WeylElement::degree() const {
  if (terms_.empty())
    return std::nullopt;
  return terms_.back().first.degree();
}

Poly WeylElement::normal_form() const { return Poly::from_terms(ctx_.ring, ctx_.nvars(), terms_); }

void WeylElement::check_compatible(const WeylElement &o) const {
  if (!(ctx_ == o.ctx_))
    throw RingMismatch("Weyl elements from different algebras");
}

WeylElement &WeylElement::operator+=(const WeylElement &o) {
  check_compatible(o);
  terms_ = TermList::merge(terms_, o.terms_, false);
  return *this;
}

WeylElement &WeylElement::operator-=(const WeylElement &o) {
  check_compatible(o);
  terms_ = TermList::merge(terms_, o.terms_, true);
  return *this;
}

WeylElement WeylElement::operator-() const { return scaled(Coeff(ctx_.ring, -1L)); }

WeylElement WeylElement::scaled(const Coeff &c) const {
  WeylElement out(ctx_);
  out.terms_ = terms_.scaled(c);
  return out;
}

namespace {

// Binomials and factorials computed over Z, then mapped into the ring.
class IntegerTables {
public:
  explicit IntegerTables(CoeffRing ring) : ring_(ring) {}

  const Coeff &binomial(unsigned a, unsigned b) {
    std::uint64_t key = (std::uint64_t{a} << 32) | b;
    auto it = binomials_.find(key);
    if (it != binomials_.end())
      return it->second;
    mpz_class v;
    mpz_bin_uiui(v.get_mpz_t(), a, b);
    return binomials_.emplace(key, Coeff(ring_, v)).first->second;
  }

  const Coeff &factorial(unsigned a) {
    auto it = factorials_.find(a);
    if (it != factorials_.end())
      return it->second;
    mpz_class v;
    mpz_fac_ui(v.get_mpz_t(), a);
    return factorials_.emplace(a, Coeff(ring_, v)).first->second;
  }

private:
  CoeffRing ring_;
  std::unordered_map<std::uint64_t, Coeff> binomials_;
  std::unordered_map<unsigned, Coeff> factorials_;
};

} // namespace

// (u^g1 d^h1)(u^g2 d^h2) = sum_{l <= h1} C(h1,l) u^g1 d^l(u^g2) d^(h1+h2-l)
// and d^l(u^g) = l! C(g,l) u^(g-l), taken per variable.
WeylElement operator*(const WeylElement &a, const WeylElement &b) {
  a.check_compatible(b);
  const WeylContext &ctx = a.ctx_;
  const std::size_t n = ctx.n;
  WeylElement out(ctx);
  if (a.is_zero() || b.is_zero())
    return out;
  IntegerTables tables(ctx.ring);
  TermAccumulator acc;
  std::vector<std::vector<Coeff>> factors(n);
  std::vector<unsigned> lambda(n), limit(n);
  for (const auto &[ma, ca] : a.terms_) {
    for (const auto &[mb, cb] : b.terms_) {
      Coeff base = ca * cb;
      Monomial top = ma * mb;
      bool any = false;
      for (std::size_t i = 0; i < n; ++i) {
        limit[i] = std::min(ma[i], mb[n + i]);
        any = any || limit[i] > 0;
      }
      if (!any) {
        acc.add(top, base);
        continue;
      }
      for (std::size_t i = 0; i < n; ++i) {
        auto &f = factors[i];
        f.clear();
        for (unsigned l = 0; l <= limit[i]; ++l)
          f.push_back(tables.binomial(ma[i], l) * tables.binomial(mb[n + i], l) * tables.factorial(l));
      }
      std::fill(lambda.begin(), lambda.end(), 0U);
      while (true) {
        Coeff c = base;
        Monomial m = top;
        for (std::size_t i = 0; i < n && !c.is_zero(); ++i) {
          if (lambda[i] == 0)
            continue;
          c *= factors[i][lambda[i]];
          m.set(i, m[i] - lambda[i]);
          m.set(n + i, m[n + i] - lambda[i]);
        }
        acc.add(m, c);
        std::size_t k = 0;
        while (k < n && lambda[k] == limit[k])
          lambda[k++] = 0;
        if (k == n)
          break;
        ++lambda[k];
      }
    }
  }
  out.terms_ = acc.finish();
  return out;
}

WeylElement WeylElement::pow(unsigned e) const {
  WeylElement result = constant(ctx_, 1L);
  for (unsigned k = 0; k < e; ++k)
    result = result * *this;
  return result;
}

namespace {

std::string weyl_word_string(const Monomial &m, std::size_t n) {
  std::string s;
  auto emit = [&](std::size_t slot) {
    if (m[slot] == 0)
      return;
    if (!s.empty())
      s += '*';
    s += "Y" + std::to_string(slot + 1);
    if (m[slot] > 1)
      s += "^" + std::to_string(m[slot]);
  };
  for (std::size_t k = n; k < 2 * n; ++k)
    emit(k);
  for (std::size_t k = 0; k < n; ++k)
    emit(k);
  return s;
}

} // namespace

std::string WeylElement::to_string() const {
  const std::size_t n = ctx_.n;
  return format_terms(terms_, [n](const Monomial &m) { return weyl_word_string(m, n); });
}

WeylElement weyl_mul(const WeylElement &a, const WeylElement &b) { return a * b; }

WeylElement commutator(const WeylElement &a, const WeylElement &b) { return a * b - b * a; }

unsigned weyl_degree(const WeylElement &a) {
  auto d = a.degree();
  if (!d)
    throw std::domain_error("degree of the zero Weyl element is undefined");
  return *d;
}

namespace {

long expected_bracket(std::size_t n, std::size_t i, std::size_t j) {
  if (j == i + n && i < n)
    return 1;
  if (i == j + n && j < n)
    return -1;
  return 0;
}

} // namespace

RelationCheck verify_endo_relations(std::span<const WeylElement> images) {
  if (images.empty())
    throw std::invalid_argument("no images given");
  const WeylContext &ctx = images.front().context();
  if (images.size() != ctx.nvars())
    throw std::invalid_argument("expected " + std::to_string(ctx.nvars()) + " images, got " +
                                std::to_string(images.size()));
  for (std::size_t i = 0; i < images.size(); ++i)
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      WeylElement c = commutator(images[i], images[j]);
      if (!(c == WeylElement::constant(ctx, expected_bracket(ctx.n, i, j))))
        return RelationCheck{false, i, j, std::move(c)};
    }
  return RelationCheck{};
}

WeylEndo WeylEndo::from_images(std::vector<WeylElement> images) {
  RelationCheck check = verify_endo_relations(images);
  if (!check.ok)
    throw RelationViolation("images violate [G" + std::to_string(check.i + 1) + ", G" +
                                std::to_string(check.j + 1) + "] relation: found " +
                                check.found->to_string(),
                            std::move(check));
  return WeylEndo(std::move(images));
}

WeylEndo WeylEndo::identity(const WeylContext &ctx) {
  std::vector<WeylElement> images;
  for (std::size_t i = 0; i < ctx.nvars(); ++i)
    images.push_back(WeylElement::generator(ctx, i));
  return WeylEndo(std::move(images));
}

unsigned WeylEndo::degree() const {
  unsigned best = 0;
  for (const auto &g : images_)
    best = std::max(best, g.degree().value_or(0));
  return best;
}

bool WeylEndo::is_identity() const { return *this == identity(context()); }

std::vector<std::string> WeylEndo::to_lines() const {
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < images_.size(); ++i)
    lines.push_back("Y" + std::to_string(i + 1) + " -> " + images_[i].to_string());
  return lines;
}

EndoApplier::EndoApplier(const WeylEndo &phi) : phi_(phi) {}

const WeylElement &EndoApplier::block_image(const Monomial &m, bool positions) {
  auto &cache = positions ? positions_ : derivations_;
  if (auto it = cache.find(m); it != cache.end())
    return it->second;
  const WeylContext &ctx = phi_.context();
  WeylElement value = WeylElement::constant(ctx, 1L);
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (m[k] == 0)
      continue;
    Monomial rest = m;
    rest.set(k, m[k] - 1);
    // Images within one block commute, so peeling any variable is valid.
    value = block_image(rest, positions) * phi_.image(k);
    break;
  }
  return cache.emplace(m, std::move(value)).first->second;
}

WeylElement EndoApplier::apply_word(const Monomial &m) {
  const std::size_t n = phi_.context().n;
  Monomial pos(m.size()), der(m.size());
  for (std::size_t k = 0; k < n; ++k) {
    der.set(k, m[k]);
    pos.set(n + k, m[n + k]);
  }
  if (der.is_one())
    return block_image(pos, true);
  if (pos.is_one())
    return block_image(der, false);
  return block_image(pos, true) * block_image(der, false);
}

WeylElement EndoApplier::apply(const WeylElement &a) {
  if (!(a.context() == phi_.context()))
    throw RingMismatch("element and endomorphism live in different algebras");
  WeylElement out(a.context());
  for (const auto &[m, c] : a.terms())
    out += apply_word(m).scaled(c);
  return out;
}

WeylElement apply_endo(const WeylEndo &phi, const WeylElement &a) {
  EndoApplier applier(phi);
  return applier.apply(a);
}

WeylEndo compose_weyl_endos(const WeylEndo &phi, const WeylEndo &psi) {
  if (!(phi.context() == psi.context()))
    throw RingMismatch("composition of endomorphisms of different algebras");
  EndoApplier applier(phi);
  std::vector<WeylElement> images;
  for (const auto &g : psi.images())
    images.push_back(applier.apply(g));
  try {
    return WeylEndo::from_images(std::move(images));
  } catch (const RelationViolation &e) {
    throw std::logic_error(std::string("composition broke the Weyl relations: ") + e.what());
  }
}

bool is_central(const WeylElement &a) {
  const WeylContext &ctx = a.context();
  for (std::size_t i = 0; i < ctx.nvars(); ++i)
    if (!commutator(a, WeylElement::generator(ctx, i)).is_zero())
      return false;
  return true;
}

namespace {

using SlotKey = std::pair<std::size_t, Monomial>;

struct SlotKeyLess {
  bool operator()(const SlotKey &a, const SlotKey &b) const {
    if (a.first != b.first)
      return a.first < b.first;
    return MonomialOrder{}(a.second, b.second);
  }
};

} // namespace

CenterSlice center_slice_check(const WeylContext &ctx, unsigned degree_cap) {
  if (!ctx.ring.is_prime_field())
    throw RingMismatch("center_slice_check requires a prime field");
  const unsigned p = ctx.ring.modulus();
  std::vector<Monomial> basis;
  for (unsigned d = 0; d <= degree_cap; ++d)
    for (const auto &m : monomials_of_degree(ctx.nvars(), d))
      basis.push_back(m);

  std::vector<WeylElement> generators;
  for (std::size_t i = 0; i < ctx.nvars(); ++i)
    generators.push_back(WeylElement::generator(ctx, i));

  EchelonBasis<SlotKey, SlotKeyLess> echelon(ctx.ring);
  std::vector<EchelonBasis<SlotKey, SlotKeyLess>::Combination> kernel;
  const Coeff one(ctx.ring, 1L);
  for (std::size_t idx = 0; idx < basis.size(); ++idx) {
    WeylElement word = WeylElement::term(ctx, basis[idx], one);
    EchelonBasis<SlotKey, SlotKeyLess>::Vector column;
    for (std::size_t k = 0; k < generators.size(); ++k) {
      WeylElement bracket = commutator(word, generators[k]);
      for (const auto &[m, c] : bracket.terms())
        column.emplace(SlotKey{k, m}, c);
    }
    if (auto dep = echelon.add_column(idx, std::move(column)))
      kernel.push_back(std::move(*dep));
  }

  auto divisible = [p](const Monomial &m) {
    for (std::size_t k = 0; k < m.size(); ++k)
      if (m[k] % p != 0)
        return false;
    return true;
  };
  std::size_t expected = 0;
  bool expected_central = true;
  for (const auto &m : basis)
    if (divisible(m)) {
      ++expected;
      expected_central = expected_central && is_central(WeylElement::term(ctx, m, one));
    }
  bool kernel_inside = true;
  for (const auto &vec : kernel)
    for (const auto &[idx, c] : vec)
      if (!divisible(basis[idx]))
        kernel_inside = false;
  // Equal dimensions plus one inclusion gives equality of subspaces.
  bool match = kernel.size() == expected && kernel_inside && expected_central;
  return CenterSlice{kernel.size(), expected, match};
}

namespace {

WeylElement derivative_as_element(const WeylContext &ctx, const Poly &h, std::size_t slot) {
  return WeylElement::from_normal_form(ctx, h.derivative(slot));
}

void check_block(const WeylContext &ctx, const Poly &h, bool positions) {
  if (h.nvars() != ctx.nvars() || !(h.ring() == ctx.ring))
    throw RingMismatch("Hamiltonian has the wrong shape");
  for (const auto &[m, c] : h.terms())
    for (std::size_t k = 0; k < ctx.nvars(); ++k)
      if (m[k] != 0 && ctx.is_derivation(k) == positions)
        throw std::invalid_argument(positions ? "shear Hamiltonian must only involve positions"
                                              : "dual shear Hamiltonian must only involve derivations");
}

} // namespace

WeylEndo weyl_shear(const WeylContext &ctx, const Poly &h) {
  check_block(ctx, h, true);
  std::vector<WeylElement> images;
  for (std::size_t k = 0; k < ctx.nvars(); ++k)
    images.push_back(WeylElement::generator(ctx, k));
  for (std::size_t i = 0; i < ctx.n; ++i)
    images[i] += derivative_as_element(ctx, h, ctx.n + i);
  return WeylEndo::from_images(std::move(images));
}

WeylEndo weyl_dual_shear(const WeylContext &ctx, const Poly &h) {
  check_block(ctx, h, false);
  std::vector<WeylElement> images;
  for (std::size_t k = 0; k < ctx.nvars(); ++k)
    images.push_back(WeylElement::generator(ctx, k));
  for (std::size_t i = 0; i < ctx.n; ++i)
    images[ctx.n + i] += derivative_as_element(ctx, h, i);
  return WeylEndo::from_images(std::move(images));
}

WeylEndo weyl_swap(const WeylContext &ctx, std::size_t i) {
  if (i >= ctx.n)
    throw std::out_of_range("swap index out of range");
  std::vector<WeylElement> images;
  for (std::size_t k = 0; k < ctx.nvars(); ++k)
    images.push_back(WeylElement::generator(ctx, k));
  images[i] = WeylElement::generator(ctx, ctx.n + i);
  images[ctx.n + i] = -WeylElement::generator(ctx, i);
  return WeylEndo::from_images(std::move(images));
}

WeylEndo weyl_scaling(const WeylContext &ctx, std::size_t i, const Coeff &c) {
  if (i >= ctx.n)
    throw std::out_of_range("scaling index out of range");
  std::vector<WeylElement> images;
  for (std::size_t k = 0; k < ctx.nvars(); ++k)
    images.push_back(WeylElement::generator(ctx, k));
  images[i] = images[i].scaled(c);
  images[ctx.n + i] = images[ctx.n + i].scaled(c.inv());
  return WeylEndo::from_images(std::move(images));
}

WeylEndo central_perturbation(const WeylEndo &base, std::span<const Poly> central) {
  const WeylContext &ctx = base.context();
  if (central.size() != ctx.nvars())
    throw std::invalid_argument("one central term per generator is required");
  std::vector<WeylElement> images = base.images();
  for (std::size_t k = 0; k < images.size(); ++k)
    images[k] += WeylElement::central_lift(ctx, central[k]);
  return WeylEndo::from_images(std::move(images));
}

WeylEndo generate_weyl_automorphism(const WeylContext &ctx, std::uint64_t seed, unsigned steps,
                                    const WeylGenOptions &options) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> derivations, positions;
  for (std::size_t i = 0; i < ctx.n; ++i) {
    derivations.push_back(i);
    positions.push_back(ctx.n + i);
  }
  RandomPolySpec spec{options.max_hamiltonian_degree, options.max_terms, options.coeff_bound, 2};
  WeylEndo phi = WeylEndo::identity(ctx);
  for (unsigned s = 0; s < steps; ++s) {
    WeylEndo step = WeylEndo::identity(ctx);
    switch (rng() % 4) {
    case 0:
      step = weyl_shear(ctx, random_poly(rng, ctx.ring, ctx.nvars(), positions, spec));
      break;
    case 1:
      step = weyl_dual_shear(ctx, random_poly(rng, ctx.ring, ctx.nvars(), derivations, spec));
      break;
    case 2:
      step = weyl_swap(ctx, rng() % ctx.n);
      break;
    default: {
      std::size_t i = rng() % ctx.n;
      Coeff c(ctx.ring, -1L);
      if (ctx.ring.is_field()) {
        long bound = ctx.ring.is_prime_field() ? static_cast<long>(ctx.ring.modulus()) - 1 : 3;
        if (bound > 0)
          c = Coeff(ctx.ring, 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(bound)));
      }
      step = weyl_scaling(ctx, i, c);
      break;
    }
    }
    phi = compose_weyl_endos(phi, step);
  }
  return phi;
}

WeylEndo generate_weyl_endo_central_perturbation(const WeylContext &ctx, std::uint64_t seed) {
  if (!ctx.ring.is_prime_field())
    throw RingMismatch("central perturbations require a prime field");
  std::mt19937_64 rng(seed);
  WeylGenOptions small{3, 1, 2};
  WeylEndo base = generate_weyl_automorphism(ctx, rng(), static_cast<unsigned>(rng() % 2), small);
  const long p = ctx.ring.modulus();
  std::vector<Poly> central(ctx.nvars(), Poly(ctx.ring, ctx.nvars()));
  bool any = false;
  while (!any) {
    for (std::size_t k = 0; k < ctx.nvars(); ++k) {
      if (rng() % 2 == 0)
        continue;
      std::size_t j = rng() % ctx.nvars();
      long c = 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(p - 1 > 0 ? p - 1 : 1));
      central[k] += Poly::term(ctx.ring, Monomial::variable(ctx.nvars(), j), Coeff(ctx.ring, c));
      any = true;
    }
  }
  return central_perturbation(base, central);
}

std::uint64_t weyl_inverse_degree_bound(const WeylEndo &phi) {
  const std::uint64_t d = phi.degree();
  std::uint64_t bound = 1;
  for (std::size_t k = 0; k + 1 < phi.context().nvars(); ++k) {
    if (d != 0 && bound > (std::uint64_t{1} << 40) / d)
      return std::uint64_t{1} << 40;
    bound *= d;
  }
  return bound;
}

namespace {

std::uint64_t count_monomials(std::size_t nvars, unsigned degree) {
  mpz_class v;
  mpz_bin_uiui(v.get_mpz_t(), degree + nvars - 1, nvars - 1);
  return v.fits_ulong_p() ? v.get_ui() : ~std::uint64_t{0};
}

} // namespace

WeylInverseSearch inverse_search_weyl(const WeylEndo &phi, unsigned degree_cap,
                                      const SearchBudget &budget) {
  const WeylContext &ctx = phi.context();
  if (!ctx.ring.is_field())
    throw RingMismatch("inverse search requires a field, got " + ctx.ring.to_string());
  if (degree_cap < 1)
    throw std::invalid_argument("degree cap must be at least 1");
  using Basis = EchelonBasis<Monomial, MonomialOrder>;
  WeylInverseSearch result;
  result.degree_cap = degree_cap;
  EndoApplier applier(phi);
  Basis echelon(ctx.ring);
  std::vector<Monomial> columns;
  std::size_t unknowns = 0;
  for (unsigned d = 0; d <= degree_cap; ++d) {
    std::uint64_t count = count_monomials(ctx.nvars(), d);
    if (unknowns + count > budget.max_unknowns)
      break;
    for (const auto &m : monomials_of_degree(ctx.nvars(), d)) {
      Basis::Vector col;
      WeylElement image = applier.apply_word(m);
      for (const auto &[k, c] : image.terms())
        col.emplace(k, c);
      echelon.add_column(columns.size(), std::move(col));
      columns.push_back(m);
    }
    unknowns += count;
    result.degree_reached = d;
    if (d == 0)
      continue;

    std::vector<WeylElement> candidate;
    for (std::size_t i = 0; i < ctx.nvars(); ++i) {
      Basis::Vector target;
      target.emplace(Monomial::variable(ctx.nvars(), i), Coeff(ctx.ring, 1L));
      auto sol = echelon.solve(std::move(target));
      if (!sol)
        break;
      WeylElement g(ctx);
      for (const auto &[idx, c] : *sol)
        g += WeylElement::term(ctx, columns[idx], c);
      candidate.push_back(std::move(g));
    }
    if (candidate.size() != ctx.nvars())
      continue;
    if (!verify_endo_relations(candidate).ok) {
      result.two_sided_failure = true;
      continue;
    }
    WeylEndo psi = WeylEndo::from_images(std::move(candidate));
    if (compose_weyl_endos(phi, psi).is_identity() && compose_weyl_endos(psi, phi).is_identity()) {
      result.inverse = std::move(psi);
      result.two_sided_failure = false;
      return result;
    }
    result.two_sided_failure = true;
  }
  return result;
}

} // namespace dqa
