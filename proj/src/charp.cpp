#include "dqa/charp.hpp"

namespace dqa {

CenterEndo induced_center_endo(const WeylEndo &phi) {
  const WeylContext &ctx = phi.context();
  if (!ctx.ring.is_prime_field())
    throw RingMismatch("center reduction requires a prime field");
  const unsigned p = ctx.ring.modulus();
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ctx.nvars(); ++i) {
    // The p-fold product is the definition; no Frobenius shortcut applies
    // to noncommuting sums.
    WeylElement power = phi.image(i).pow(p);
    if (!is_central(power))
      throw ReductionFailure("phi(Y" + std::to_string(i + 1) + ")^p is not central", i);
    std::vector<Term> terms;
    for (const auto &[m, c] : power.terms()) {
      Monomial q(m.size());
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (m[k] % p != 0)
          throw ReductionFailure("phi(Y" + std::to_string(i + 1) + ")^p has exponent " +
                                     std::to_string(m[k]) + " not divisible by p",
                                 i);
        q.set(k, m[k] / p);
      }
      terms.emplace_back(q, c);
    }
    // Dividing every exponent by p preserves the graded order.
    images.push_back(Poly::from_terms(ctx.ring, ctx.nvars(), TermList::from_sorted(std::move(terms))));
  }
  return CenterEndo{PolyEndo(std::move(images)), phi};
}

DegreeCheck check_degree_preservation(const CenterEndo &reduced) {
  const WeylEndo &phi = reduced.source;
  DegreeCheck out{phi.degree(), reduced.phi0.degree(), true, std::nullopt};
  for (std::size_t i = 0; i < phi.images().size(); ++i) {
    auto dy = phi.image(i).degree();
    auto dx = reduced.phi0.image(i).degree();
    if (dy != dx) {
      out.equal = false;
      out.witness = i;
      return out;
    }
  }
  out.equal = out.deg_phi == out.deg_phi0;
  return out;
}

DegreeCheck check_degree_preservation(const WeylEndo &phi) {
  return check_degree_preservation(induced_center_endo(phi));
}

Theorem3Check check_theorem3(const WeylEndo &phi) {
  CenterEndo reduced = induced_center_endo(phi);
  PoissonContext pctx(phi.context().ring, phi.context().n);
  auto witness = find_bracket_violation(pctx, reduced.phi0);
  bool ok = !witness.has_value();
  return Theorem3Check{std::move(reduced), ok, std::move(witness)};
}

} // namespace dqa
