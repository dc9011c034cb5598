#include "dqa/checker.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "dqa/linsolve.hpp"
#include "dqa/poisson.hpp"

namespace dqa {

namespace {

std::uint64_t saturating_power(std::uint64_t base, std::size_t exponent) {
  constexpr std::uint64_t cap = std::uint64_t{1} << 40;
  std::uint64_t out = 1;
  for (std::size_t k = 0; k < exponent; ++k) {
    if (base != 0 && out > cap / base)
      return cap;
    out *= base;
  }
  return out;
}

unsigned clamp_cap(std::uint64_t bound) {
  return static_cast<unsigned>(std::min<std::uint64_t>(bound, 0xFFFFU));
}

std::uint64_t count_monomials(std::size_t nvars, unsigned degree) {
  mpz_class v;
  mpz_bin_uiui(v.get_mpz_t(), degree + nvars - 1, nvars - 1);
  return v.fits_ulong_p() ? v.get_ui() : ~std::uint64_t{0};
}

// Images M(F_1..F_m) of monomials, built by peeling one variable at a time.
class MonomialImages {
public:
  explicit MonomialImages(const PolyEndo &phi) : phi_(phi) {}

  const Poly &operator()(const Monomial &m) {
    if (auto it = cache_.find(m); it != cache_.end())
      return it->second;
    Poly value = Poly::constant(phi_.ring(), phi_.nvars(), 1L);
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0)
        continue;
      Monomial rest = m;
      rest.set(k, m[k] - 1);
      value = (*this)(rest) * phi_.image(k);
      break;
    }
    return cache_.emplace(m, std::move(value)).first->second;
  }

private:
  const PolyEndo &phi_;
  std::unordered_map<Monomial, Poly, MonomialHash> cache_;
};

} // namespace

std::uint64_t gabber_bound(const PolyEndo &phi) {
  return saturating_power(phi.degree(), phi.nvars() - 1);
}

PolyInverseSearch inverse_search_poly(const PolyEndo &phi, unsigned degree_cap,
                                      const SearchBudget &budget) {
  const CoeffRing ring = phi.ring();
  const std::size_t m = phi.nvars();
  if (!ring.is_field())
    throw RingMismatch("inverse search requires a field, got " + ring.to_string());
  if (degree_cap < 1)
    throw std::invalid_argument("degree cap must be at least 1");
  using Basis = EchelonBasis<Monomial, MonomialOrder>;
  PolyInverseSearch result;
  result.degree_cap = degree_cap;
  MonomialImages images(phi);
  Basis echelon(ring);
  std::vector<Monomial> columns;
  std::size_t unknowns = 0;
  for (unsigned d = 0; d <= degree_cap; ++d) {
    std::uint64_t count = count_monomials(m, d);
    if (unknowns + count > budget.max_unknowns)
      break;
    for (const auto &mono : monomials_of_degree(m, d)) {
      Basis::Vector col;
      for (const auto &[k, c] : images(mono).terms())
        col.emplace(k, c);
      echelon.add_column(columns.size(), std::move(col));
      columns.push_back(mono);
    }
    unknowns += count;
    result.degree_reached = d;
    if (d == 0)
      continue;
    std::vector<Poly> candidate;
    for (std::size_t i = 0; i < m; ++i) {
      Basis::Vector target;
      target.emplace(Monomial::variable(m, i), Coeff(ring, 1L));
      auto sol = echelon.solve(std::move(target));
      if (!sol)
        break;
      Poly g(ring, m);
      for (const auto &[idx, c] : *sol)
        g += Poly::term(ring, columns[idx], c);
      candidate.push_back(std::move(g));
    }
    if (candidate.size() != m)
      continue;
    PolyEndo psi(std::move(candidate));
    if (phi.compose(psi).is_identity() && psi.compose(phi).is_identity()) {
      result.inverse = std::move(psi);
      result.two_sided_failure = false;
      return result;
    }
    result.two_sided_failure = true;
  }
  return result;
}

bool jacobian_is_nonzero_constant(const PolyEndo &phi) {
  Poly det = jacobian(phi).determinant();
  return det.is_constant() && !det.is_zero() && det.constant_term().is_unit();
}

namespace {

// Calls fn(point) for every point of F_p^m.
template <class Fn>
void for_each_point(const CoeffRing &ring, std::size_t m, Fn &&fn) {
  const std::uint64_t p = ring.modulus();
  std::vector<std::uint64_t> digits(m, 0);
  std::vector<Coeff> point(m, Coeff(ring));
  while (true) {
    for (std::size_t k = 0; k < m; ++k)
      point[k] = Coeff(ring, static_cast<long>(digits[k]));
    fn(std::as_const(point), std::as_const(digits));
    std::size_t k = 0;
    while (k < m && digits[k] + 1 == p)
      digits[k++] = 0;
    if (k == m)
      break;
    ++digits[k];
  }
}

std::vector<std::uint64_t> evaluate_map(const PolyEndo &phi, const std::vector<Coeff> &point) {
  std::vector<std::uint64_t> value;
  value.reserve(phi.nvars());
  for (const auto &f : phi.images())
    value.push_back(f.evaluate(point).residue());
  return value;
}

std::optional<std::size_t> domain_size(const PolyEndo &phi, std::size_t max_points) {
  std::size_t size = 1;
  for (std::size_t k = 0; k < phi.nvars(); ++k) {
    if (size > max_points / phi.ring().modulus())
      return std::nullopt;
    size *= phi.ring().modulus();
  }
  return size;
}

} // namespace

std::optional<bool> point_map_is_bijective(const PolyEndo &phi, std::size_t max_points) {
  if (!phi.ring().is_prime_field() || !domain_size(phi, max_points))
    return std::nullopt;
  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  bool injective = true;
  for_each_point(phi.ring(), phi.nvars(), [&](const std::vector<Coeff> &pt, const auto &) {
    if (injective && ++seen[evaluate_map(phi, pt)] > 1)
      injective = false;
  });
  return injective;
}

ExtensionEstimate extension_degree_estimate(const PolyEndo &phi, unsigned trials, std::uint64_t seed,
                                            std::size_t max_domain_points) {
  const CoeffRing ring = phi.ring();
  if (!ring.is_prime_field())
    throw RingMismatch("fiber counting requires a prime field");
  auto size = domain_size(phi, max_domain_points);
  if (!size)
    throw std::invalid_argument("domain F_p^m too large for exhaustive fiber counting");
  const std::size_t m = phi.nvars();

  ExtensionEstimate out;
  out.domain_points = *size;
  std::uint64_t bezout = 1;
  for (const auto &f : phi.images()) {
    auto d = f.degree();
    bezout *= d.value_or(0);
  }
  out.bezout_bound = static_cast<unsigned>(std::min<std::uint64_t>(bezout, 0xFFFFFFFFU));
  if (bezout == 0)
    throw NonFiniteFibers("an image is constant; the map is not generically finite");

  std::map<std::vector<std::uint64_t>, std::size_t> fibers;
  std::vector<std::vector<std::uint64_t>> domain_values;
  domain_values.reserve(*size);
  for_each_point(ring, m, [&](const std::vector<Coeff> &pt, const auto &) {
    auto v = evaluate_map(phi, pt);
    ++fibers[v];
    domain_values.push_back(std::move(v));
  });

  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::uint64_t>> targets;
  for (unsigned t = 0; t < trials; ++t) {
    targets.push_back(domain_values[rng() % domain_values.size()]);
    std::vector<std::uint64_t> random_target(m);
    for (auto &x : random_target)
      x = rng() % ring.modulus();
    targets.push_back(std::move(random_target));
  }
  out.targets_sampled = targets.size();
  for (const auto &t : targets) {
    auto it = fibers.find(t);
    std::size_t count = it == fibers.end() ? 0 : it->second;
    ++out.fiber_histogram[count];
    if (count == 0)
      continue;
    if (count > bezout) {
      ++out.positive_dimensional_fibers;
      continue;
    }
    ++out.finite_fibers;
    out.estimate = std::max<unsigned>(out.estimate, static_cast<unsigned>(count));
  }
  if (m == 1) {
    out.exact = true;
    out.estimate = *phi.image(0).degree();
    out.separable = !phi.image(0).derivative(0).is_zero();
    return out;
  }
  if (out.finite_fibers == 0)
    throw NonFiniteFibers("every sampled nonempty fiber exceeds the Bezout bound " +
                          std::to_string(bezout));
  return out;
}

std::string to_string(ConjectureTag tag) {
  switch (tag) {
  case ConjectureTag::CJC:
    return "CJC";
  case ConjectureTag::NJC:
    return "NJC";
  case ConjectureTag::CPC:
    return "CPC";
  case ConjectureTag::NPC:
    return "NPC";
  case ConjectureTag::CDC:
    return "CDC";
  case ConjectureTag::NDC:
    return "NDC";
  }
  return "?";
}

ConjectureTag parse_tag(const std::string &text) {
  for (auto tag : {ConjectureTag::CJC, ConjectureTag::NJC, ConjectureTag::CPC, ConjectureTag::NPC,
                   ConjectureTag::CDC, ConjectureTag::NDC})
    if (to_string(tag) == text)
      return tag;
  throw std::invalid_argument("unknown conjecture tag '" + text + "'");
}

bool is_weyl_tag(ConjectureTag tag) { return tag == ConjectureTag::CDC || tag == ConjectureTag::NDC; }

bool is_poisson_tag(ConjectureTag tag) {
  return tag == ConjectureTag::CPC || tag == ConjectureTag::NPC;
}

std::string to_string(AutomorphismFlag flag) {
  switch (flag) {
  case AutomorphismFlag::proven_yes:
    return "proven-yes";
  case AutomorphismFlag::proven_no:
    return "proven-no";
  case AutomorphismFlag::unknown:
    return "unknown";
  }
  return "?";
}

std::string to_string(Tri t) {
  switch (t) {
  case Tri::no:
    return "false";
  case Tri::yes:
    return "true";
  case Tri::unknown:
    return "unknown";
  }
  return "?";
}

namespace {

std::string join_lines(const std::vector<std::string> &lines) {
  std::string out;
  for (const auto &l : lines)
    out += (out.empty() ? "" : ", ") + l;
  return out;
}

struct ExtensionFlag {
  std::optional<bool> not_multiple;
  bool estimated = false;
  std::optional<unsigned> degree;
  std::string note;
};

// "Induces a field extension of degree not a multiple of p".
ExtensionFlag extension_flag(const PolyEndo &phi, const CheckOptions &options) {
  ExtensionFlag out;
  const std::uint32_t p = phi.ring().characteristic();
  if (p == 0) {
    out.not_multiple = true;
    out.note = "characteristic 0: every degree qualifies";
    return out;
  }
  try {
    ExtensionEstimate est =
        extension_degree_estimate(phi, options.extension_trials, options.seed, options.max_domain_points);
    out.degree = est.estimate;
    out.estimated = !est.exact;
    out.not_multiple = est.estimate % p != 0;
    out.note = std::string(est.exact ? "extension degree " : "estimated extension degree ") +
               std::to_string(est.estimate);
  } catch (const NonFiniteFibers &e) {
    out.not_multiple = false;
    out.estimated = true;
    out.note = std::string("no finite extension: ") + e.what();
  } catch (const std::invalid_argument &e) {
    out.note = std::string("extension degree not estimated: ") + e.what();
  }
  return out;
}

Tri tri(std::optional<bool> b) {
  if (!b)
    return Tri::unknown;
  return *b ? Tri::yes : Tri::no;
}

void finish_verdict(InstanceVerdict &v, Tri hypotheses) {
  const bool naive_shape = v.tag == ConjectureTag::NPC || v.tag == ConjectureTag::NDC;
  v.hypotheses_hold = hypotheses == Tri::yes;
  if (v.automorphism == AutomorphismFlag::unknown) {
    v.statement_holds = Tri::unknown;
  } else {
    bool is_auto = v.automorphism == AutomorphismFlag::proven_yes;
    if (naive_shape) {
      v.statement_holds = is_auto ? Tri::yes : Tri::no;
    } else if (hypotheses == Tri::unknown) {
      v.statement_holds = Tri::unknown;
    } else {
      v.statement_holds = (is_auto == (hypotheses == Tri::yes)) ? Tri::yes : Tri::no;
    }
  }
  switch (v.statement_holds) {
  case Tri::yes:
    v.verdict = "instance-consistent";
    break;
  case Tri::no:
    v.verdict = "counterexample";
    break;
  case Tri::unknown:
    v.verdict = "inconclusive";
    break;
  }
}

Tri both(Tri a, Tri b) {
  if (a == Tri::no || b == Tri::no)
    return Tri::no;
  if (a == Tri::unknown || b == Tri::unknown)
    return Tri::unknown;
  return Tri::yes;
}

struct AutoResult {
  AutomorphismFlag flag = AutomorphismFlag::unknown;
  std::string certificate;
  std::uint64_t bound = 0;
  unsigned searched = 0;
  std::optional<PolyEndo> inverse;
};

AutoResult decide_poly_automorphism(const PolyEndo &phi, const CheckOptions &options) {
  AutoResult out;
  out.bound = gabber_bound(phi);
  if (!jacobian_is_nonzero_constant(phi)) {
    out.flag = AutomorphismFlag::proven_no;
    out.certificate = "jacobian determinant is not a nonzero constant";
    return out;
  }
  unsigned cap = clamp_cap(std::max<std::uint64_t>(out.bound, 1));
  PolyInverseSearch search = inverse_search_poly(phi, cap, options.budget);
  out.searched = search.degree_reached;
  if (search.inverse) {
    out.flag = AutomorphismFlag::proven_yes;
    out.certificate = "inverse found: " + join_lines(search.inverse->to_lines());
    out.inverse = std::move(search.inverse);
    return out;
  }
  if (search.exhausted() && cap >= out.bound) {
    out.flag = AutomorphismFlag::proven_no;
    out.certificate = "no inverse of degree <= " + std::to_string(out.bound) + " (Gabber bound)";
    return out;
  }
  if (auto bij = point_map_is_bijective(phi, options.max_domain_points); bij && !*bij) {
    out.flag = AutomorphismFlag::proven_no;
    out.certificate = "induced map on F_p points is not bijective";
    return out;
  }
  out.certificate = "search stopped at degree " + std::to_string(search.degree_reached) +
                    " below the bound " + std::to_string(out.bound);
  return out;
}

struct WeylAutoResult {
  AutomorphismFlag flag = AutomorphismFlag::unknown;
  std::string certificate;
  std::uint64_t bound = 0;
  unsigned searched = 0;
  std::optional<WeylEndo> inverse;
};

WeylAutoResult decide_weyl_automorphism(const WeylEndo &phi, const CheckOptions &options) {
  WeylAutoResult out;
  out.bound = weyl_inverse_degree_bound(phi);
  unsigned cap = clamp_cap(std::max<std::uint64_t>(out.bound, 1));
  WeylInverseSearch search = inverse_search_weyl(phi, cap, options.budget);
  out.searched = search.degree_reached;
  if (search.inverse) {
    out.flag = AutomorphismFlag::proven_yes;
    out.certificate = "inverse found: " + join_lines(search.inverse->to_lines());
    out.inverse = std::move(search.inverse);
  } else if (search.exhausted() && cap >= out.bound) {
    out.flag = AutomorphismFlag::proven_no;
    out.certificate = "no inverse of degree <= " + std::to_string(out.bound) + " (deg^(2n-1) bound)";
  } else {
    out.certificate = "search stopped at degree " + std::to_string(search.degree_reached) +
                      " below the bound " + std::to_string(out.bound);
  }
  return out;
}

} // namespace

InstanceVerdict check_instance(ConjectureTag tag, const PolyEndo &phi, const CheckOptions &options) {
  if (is_weyl_tag(tag))
    throw TagMismatch(to_string(tag) + " needs a Weyl endomorphism");
  InstanceVerdict v;
  v.tag = tag;
  v.p = phi.ring().characteristic();
  v.d = phi.degree();
  const std::size_t m = phi.nvars();
  v.n = m;
  if (is_poisson_tag(tag)) {
    if (m % 2 != 0)
      throw TagMismatch(to_string(tag) + " needs an even number of variables");
    v.n = m / 2;
    PoissonContext ctx(phi.ring(), v.n);
    auto bad = find_bracket_violation(ctx, phi);
    v.symplectic = !bad.has_value();
    if (bad)
      throw TagMismatch("not an endomorphism of P_n: {F" + std::to_string(bad->i + 1) + ", F" +
                        std::to_string(bad->j + 1) + "} = " + bad->actual.to_string());
  }

  Poly det = jacobian(phi).determinant();
  v.jacobian_nonzero_constant = det.is_constant() && !det.is_zero() && det.constant_term().is_unit();
  v.witnesses.push_back("det(J) = " + det.to_string());

  Tri hyp = Tri::yes;
  auto use_extension = [&] {
    ExtensionFlag ext = extension_flag(phi, options);
    v.extension_not_multiple_of_p = ext.not_multiple;
    v.extension_estimated = ext.estimated;
    v.extension_degree = ext.degree;
    v.witnesses.push_back(ext.note);
    return tri(ext.not_multiple);
  };
  switch (tag) {
  case ConjectureTag::CJC:
    v.jacobian_condition_applies = true;
    hyp = both(tri(v.jacobian_nonzero_constant), use_extension());
    break;
  case ConjectureTag::NJC:
    v.jacobian_condition_applies = true;
    hyp = tri(v.jacobian_nonzero_constant);
    break;
  case ConjectureTag::CPC:
    v.jacobian_condition_applies = v.p <= v.n;
    hyp = use_extension();
    if (v.jacobian_condition_applies)
      hyp = both(hyp, tri(v.jacobian_nonzero_constant));
    break;
  default:
    break;
  }

  AutoResult decision = decide_poly_automorphism(phi, options);
  v.automorphism = decision.flag;
  v.certificate = decision.certificate;
  v.certified_bound = decision.bound;
  v.degree_searched = decision.searched;
  v.witnesses.push_back(decision.certificate);
  finish_verdict(v, hyp);
  return v;
}

InstanceVerdict check_instance(ConjectureTag tag, const WeylEndo &phi, const CheckOptions &options) {
  if (!is_weyl_tag(tag))
    throw TagMismatch(to_string(tag) + " needs a polynomial endomorphism");
  const WeylContext &ctx = phi.context();
  if (!ctx.ring.is_prime_field())
    throw TagMismatch(to_string(tag) + " instances need a prime field");
  InstanceVerdict v;
  v.tag = tag;
  v.n = ctx.n;
  v.p = ctx.ring.characteristic();
  v.d = phi.degree();

  CenterEndo reduced = induced_center_endo(phi);
  v.witnesses.push_back("phi0: " + join_lines(reduced.phi0.to_lines()));
  PoissonContext pctx(ctx.ring, ctx.n);
  v.symplectic = is_symplectic(pctx, reduced.phi0);
  Poly det = jacobian(reduced.phi0).determinant();
  v.jacobian_nonzero_constant = det.is_constant() && !det.is_zero();
  v.witnesses.push_back("det(J phi0) = " + det.to_string());

  Tri hyp = Tri::yes;
  if (tag == ConjectureTag::CDC) {
    ExtensionFlag ext = extension_flag(reduced.phi0, options);
    v.extension_not_multiple_of_p = ext.not_multiple;
    v.extension_estimated = ext.estimated;
    v.extension_degree = ext.degree;
    v.witnesses.push_back(ext.note);
    hyp = tri(ext.not_multiple);
    v.jacobian_condition_applies = v.p <= v.n;
    if (v.jacobian_condition_applies)
      hyp = both(hyp, tri(v.jacobian_nonzero_constant));
  }

  WeylAutoResult decision = decide_weyl_automorphism(phi, options);
  v.automorphism = decision.flag;
  v.certificate = decision.certificate;
  v.certified_bound = decision.bound;
  v.degree_searched = decision.searched;
  v.witnesses.push_back(decision.certificate);
  finish_verdict(v, hyp);
  return v;
}

ChainProbe united_chain_probe(const WeylEndo &phi, const CheckOptions &options) {
  CenterEndo reduced = induced_center_endo(phi);
  PoissonContext pctx(phi.context().ring, phi.context().n);
  ChainProbe out{reduced.phi0, false, check_degree_preservation(reduced), {}, {}, {}, {}, {}, {}};
  auto violation = find_bracket_violation(pctx, reduced.phi0);
  out.theorem3_symplectic = !violation.has_value();
  if (violation)
    out.falsifications.push_back("phi0 is not symplectic: {F" + std::to_string(violation->i + 1) +
                                 ", F" + std::to_string(violation->j + 1) +
                                 "} = " + violation->actual.to_string());
  if (!out.degrees.equal)
    out.falsifications.push_back("deg(phi) = " + std::to_string(out.degrees.deg_phi) +
                                 " but deg(phi0) = " + std::to_string(out.degrees.deg_phi0));

  WeylAutoResult weyl = decide_weyl_automorphism(phi, options);
  out.weyl_flag = weyl.flag;
  out.weyl_certificate = weyl.certificate;

  if (weyl.inverse) {
    // An inverse of φ reduces to an inverse of φ0.
    PolyEndo psi0 = induced_center_endo(*weyl.inverse).phi0;
    if (reduced.phi0.compose(psi0).is_identity() && psi0.compose(reduced.phi0).is_identity()) {
      out.center_flag = AutomorphismFlag::proven_yes;
      out.center_certificate = "reduced inverse: " + join_lines(psi0.to_lines());
    } else {
      out.center_flag = AutomorphismFlag::proven_no;
      out.center_certificate = "reduction of the inverse does not invert phi0";
      out.falsifications.push_back("phi is an automorphism but the reduced inverse fails: " +
                                   join_lines(psi0.to_lines()));
    }
    AutoResult center = decide_poly_automorphism(reduced.phi0, options);
    if (center.flag == AutomorphismFlag::proven_no)
      out.falsifications.push_back("phi is an automorphism but phi0 is proven not to be: " +
                                   center.certificate);
  } else {
    AutoResult center = decide_poly_automorphism(reduced.phi0, options);
    out.center_flag = center.flag;
    out.center_certificate = center.certificate;
    if (center.flag == AutomorphismFlag::proven_no && weyl.flag != AutomorphismFlag::proven_no)
      out.unresolved.push_back("phi0 is not an automorphism; phi undecided within the search budget");
    if (center.flag == AutomorphismFlag::proven_yes && weyl.flag == AutomorphismFlag::unknown)
      out.unresolved.push_back("phi0 is an automorphism; phi undecided within the search budget");
  }
  if (weyl.flag == AutomorphismFlag::unknown && out.center_flag == AutomorphismFlag::unknown)
    out.unresolved.push_back("neither side decided within the search budget");
  return out;
}

// ---------------------------------------------------------------------------

bool KrausReport::all_reducible() const {
  return std::all_of(rows.begin(), rows.end(), [](const KrausRow &r) { return r.reducible && r.product_verified; });
}

namespace {

using UPoly = std::vector<std::uint64_t>;

UPoly upoly_mul(const UPoly &a, const UPoly &b, std::uint64_t p) {
  UPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  return out;
}

std::uint64_t upoly_eval(const UPoly &f, std::uint64_t x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = f.size(); i-- > 0;)
    acc = (acc * x + f[i]) % p;
  return acc;
}

// Synthetic division by (X - r); f(r) must be zero.
UPoly divide_root(const UPoly &f, std::uint64_t r, std::uint64_t p) {
  UPoly q(f.size() - 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = f.size(); i-- > 1;) {
    carry = (carry * r + f[i]) % p;
    q[i - 1] = carry;
  }
  return q;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  return Coeff(CoeffRing::prime_field(p), static_cast<long>(a)).inv().residue();
}

// Splits off linear factors, then looks for a pair of monic quadratics.
std::vector<UPoly> factor_small(UPoly f, std::uint64_t p) {
  std::vector<UPoly> factors;
  bool progress = true;
  while (f.size() > 2 && progress) {
    progress = false;
    for (std::uint64_t r = 0; r < p; ++r)
      if (upoly_eval(f, r, p) == 0) {
        factors.push_back({(p - r) % p, 1});
        f = divide_root(f, r, p);
        progress = true;
        break;
      }
  }
  if (f.size() == 5) {
    // (X^2 + aX + b)(X^2 + cX + d) against f = X^4 + f3 X^3 + f2 X^2 + f1 X + f0.
    for (std::uint64_t a = 0; a < p; ++a) {
      std::uint64_t c = (f[3] + p - a) % p;
      for (std::uint64_t b = 1; b < p; ++b) {
        if (f[0] == 0)
          break;
        std::uint64_t d = f[0] * inverse_mod(b, p) % p;
        if ((b + d + a * c) % p == f[2] && (a * d + b * c) % p == f[1]) {
          factors.push_back({b, a, 1});
          factors.push_back({d, c, 1});
          return factors;
        }
      }
    }
  }
  factors.push_back(std::move(f));
  return factors;
}

} // namespace

std::string format_univariate(const std::vector<std::uint64_t> &coeffs) {
  std::string out;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    if (coeffs[i] == 0)
      continue;
    std::string piece;
    if (i == 0)
      piece = std::to_string(coeffs[i]);
    else {
      piece = coeffs[i] == 1 ? "" : std::to_string(coeffs[i]) + "*";
      piece += "X";
      if (i > 1)
        piece += "^" + std::to_string(i);
    }
    out += (out.empty() ? "" : " + ") + piece;
  }
  return out.empty() ? "0" : out;
}

KrausReport kraus_check(std::uint32_t p_max) {
  if (p_max < 2)
    throw std::invalid_argument("p_max must be at least 2");
  KrausReport report{true, 0, {}};
  // Over Z: no rational root (only +-1 are candidates) and no monic
  // quadratic factor with coefficients in [-2, 2].
  for (long r : {1L, -1L})
    if (r * r * r * r + 1 == 0)
      report.irreducible_over_z = false;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c)
        for (long d = -2; d <= 2; ++d) {
          ++report.integer_candidates_checked;
          if (a + c == 0 && b + d + a * c == 0 && a * d + b * c == 0 && b * d == 1)
            report.irreducible_over_z = false;
        }

  for (std::uint32_t p = 2; p <= p_max; ++p) {
    if (!is_prime(p))
      continue;
    const UPoly target{1, 0, 0, 0, 1 % p};
    KrausRow row{p, false, {}, false};
    row.factors = factor_small(target, p);
    row.reducible = row.factors.size() > 1;
    UPoly product{1};
    for (const auto &f : row.factors)
      product = upoly_mul(product, f, p);
    row.product_verified = product == target;
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------

PolyEndo naive_jacobian_counterexample(std::uint32_t p) {
  CoeffRing ring = CoeffRing::prime_field(p);
  Poly x = Poly::variable(ring, 1, 0);
  return PolyEndo({x - x.pow(p)});
}

PolyEndo naive_poisson_counterexample(std::uint32_t p) {
  CoeffRing ring = CoeffRing::prime_field(p);
  Poly x1 = Poly::variable(ring, 2, 0);
  Poly x2 = Poly::variable(ring, 2, 1);
  return PolyEndo({x1 - x1.pow(p), x2});
}

WeylEndo naive_dixmier_counterexample(std::uint32_t p) {
  WeylContext ctx(CoeffRing::prime_field(p), 1);
  WeylElement y1 = WeylElement::generator(ctx, 0);
  return WeylEndo::from_images({y1 - y1.pow(p), WeylElement::generator(ctx, 1)});
}

SuiteReport counterexample_suite(const CheckOptions &options) {
  SuiteReport report;
  auto add = [&](std::string family, ConjectureTag tag, std::uint32_t p, InstanceVerdict v,
                 std::string expected) {
    bool ok = v.verdict == expected && v.automorphism == AutomorphismFlag::proven_no;
    report.entries.push_back({std::move(family), tag, p, std::move(v), std::move(expected), ok});
  };
  for (std::uint32_t p : {2U, 3U, 5U}) {
    PolyEndo njc = naive_jacobian_counterexample(p);
    add("X - X^p", ConjectureTag::NJC, p, check_instance(ConjectureTag::NJC, njc, options), "counterexample");
    add("X - X^p", ConjectureTag::CJC, p, check_instance(ConjectureTag::CJC, njc, options),
        "instance-consistent");
    add("(X1 - X1^p, X2)", ConjectureTag::NPC, p,
        check_instance(ConjectureTag::NPC, naive_poisson_counterexample(p), options), "counterexample");
    add("(Y1 - Y1^p, Y2)", ConjectureTag::NDC, p,
        check_instance(ConjectureTag::NDC, naive_dixmier_counterexample(p), options), "counterexample");
  }
  report.kraus = kraus_check(1000);
  report.all_ok = report.kraus.irreducible_over_z && report.kraus.all_reducible() &&
                  std::all_of(report.entries.begin(), report.entries.end(),
                              [](const SuiteEntry &e) { return e.ok; });
  return report;
}

} // namespace dqa
