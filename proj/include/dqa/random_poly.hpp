#ifndef DQA_RANDOM_POLY_HPP
#define DQA_RANDOM_POLY_HPP

#include <span>

#include "dqa/poly.hpp"

namespace dqa {

struct RandomPolySpec {
  unsigned max_degree = 3;
  unsigned max_terms = 3;
  long coeff_bound = 2;
  unsigned min_degree = 0;
};

// Random monomial of the given degree supported on `vars`.
template <class Rng>
Monomial random_monomial(Rng &rng, std::size_t nvars, std::span<const std::size_t> vars,
                         unsigned degree) {
  Monomial m(nvars);
  for (unsigned k = 0; k < degree; ++k) {
    std::size_t v = vars[rng() % vars.size()];
    m.set(v, m[v] + 1);
  }
  return m;
}

// Random polynomial supported on `vars` with nonzero integer coefficients in
// [-coeff_bound, coeff_bound] (which may vanish after reduction mod p).
template <class Rng>
Poly random_poly(Rng &rng, CoeffRing ring, std::size_t nvars, std::span<const std::size_t> vars,
                 const RandomPolySpec &spec) {
  Poly out(ring, nvars);
  unsigned terms = 1 + static_cast<unsigned>(rng() % spec.max_terms);
  for (unsigned t = 0; t < terms; ++t) {
    unsigned span = spec.max_degree - spec.min_degree + 1;
    unsigned degree = spec.min_degree + static_cast<unsigned>(rng() % span);
    long c = static_cast<long>(rng() % static_cast<std::uint64_t>(2 * spec.coeff_bound)) -
             spec.coeff_bound;
    if (c >= 0)
      ++c;
    out += Poly::term(ring, random_monomial(rng, nvars, vars, degree), Coeff(ring, c));
  }
  return out;
}

} // namespace dqa

#endif
