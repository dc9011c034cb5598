#ifndef DQA_CHECKER_HPP
#define DQA_CHECKER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dqa/charp.hpp"
#include "dqa/poly.hpp"
#include "dqa/weyl.hpp"

namespace dqa {

// ---------------------------------------------------------------------------
// Bounded inverse search for polynomial endomorphisms
// ---------------------------------------------------------------------------

struct PolyInverseSearch {
  std::optional<PolyEndo> inverse;
  unsigned degree_cap = 0;
  unsigned degree_reached = 0;
  bool two_sided_failure = false;

  bool exhausted() const { return !inverse && !two_sided_failure && degree_reached >= degree_cap; }
};

// Solves G_i(F_1..F_m) = X_i for G_i of degree <= D, then checks both
// compositions against the identity. Requires a field.
PolyInverseSearch inverse_search_poly(const PolyEndo &phi, unsigned degree_cap,
                                      const SearchBudget &budget = {});

// Gabber bound deg(φ)^(m-1) (saturating).
std::uint64_t gabber_bound(const PolyEndo &phi);

bool jacobian_is_nonzero_constant(const PolyEndo &phi);

// Whether the induced map F_p^m -> F_p^m is a bijection. Empty when the
// domain exceeds max_points.
std::optional<bool> point_map_is_bijective(const PolyEndo &phi, std::size_t max_points);

// ---------------------------------------------------------------------------
// Field-extension degree estimate
// ---------------------------------------------------------------------------

class NonFiniteFibers : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ExtensionEstimate {
  unsigned estimate = 0;
  // Exact only for one variable, where [K(X):K(F)] = deg F.
  bool exact = false;
  // One variable: F' != 0.
  std::optional<bool> separable;
  unsigned bezout_bound = 0;
  std::size_t domain_points = 0;
  std::size_t targets_sampled = 0;
  std::size_t finite_fibers = 0;
  std::size_t positive_dimensional_fibers = 0;
  // fiber size -> number of sampled targets with that size
  std::map<std::size_t, std::size_t> fiber_histogram;
};

// Counts preimages over F_p of sampled target points by exhaustive evaluation.
// Fibers larger than the Bezout bound prod(deg F_i) are positive-dimensional
// and ignored; the estimate is the largest remaining fiber. Throws
// NonFiniteFibers when no finite fiber is seen.
ExtensionEstimate extension_degree_estimate(const PolyEndo &phi, unsigned trials,
                                            std::uint64_t seed = 0,
                                            std::size_t max_domain_points = 1U << 16);

// ---------------------------------------------------------------------------
// Conjecture instances
// ---------------------------------------------------------------------------

enum class ConjectureTag { CJC, NJC, CPC, NPC, CDC, NDC };

std::string to_string(ConjectureTag tag);
ConjectureTag parse_tag(const std::string &text);
bool is_weyl_tag(ConjectureTag tag);
bool is_poisson_tag(ConjectureTag tag);

enum class AutomorphismFlag { proven_yes, proven_no, unknown };
enum class Tri { no, yes, unknown };

std::string to_string(AutomorphismFlag flag);
std::string to_string(Tri t);

struct InstanceVerdict {
  ConjectureTag tag;
  std::size_t n = 0;
  std::uint32_t p = 0;
  unsigned d = 0;

  // Hypothesis flags; empty when the tag does not use them.
  std::optional<bool> jacobian_nonzero_constant;
  bool jacobian_condition_applies = false;
  std::optional<bool> extension_not_multiple_of_p;
  bool extension_estimated = false;
  std::optional<unsigned> extension_degree;
  std::optional<bool> symplectic;
  bool hypotheses_hold = true;

  AutomorphismFlag automorphism = AutomorphismFlag::unknown;
  std::string certificate;
  std::uint64_t certified_bound = 0;
  unsigned degree_searched = 0;

  Tri statement_holds = Tri::unknown;
  // "instance-consistent", "counterexample" or "inconclusive".
  std::string verdict;
  std::vector<std::string> witnesses;
};

struct CheckOptions {
  SearchBudget budget;
  std::size_t max_domain_points = 1U << 16;
  unsigned extension_trials = 64;
  std::uint64_t seed = 0;
};

class TagMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// *JC and *PC tags take a polynomial endomorphism (2n variables for *PC);
// *DC tags take a Weyl endomorphism over a prime field.
InstanceVerdict check_instance(ConjectureTag tag, const PolyEndo &phi, const CheckOptions &options = {});
InstanceVerdict check_instance(ConjectureTag tag, const WeylEndo &phi, const CheckOptions &options = {});

// ---------------------------------------------------------------------------
// Implication-chain probe
// ---------------------------------------------------------------------------

struct ChainProbe {
  PolyEndo phi0;
  bool theorem3_symplectic = false;
  DegreeCheck degrees;
  AutomorphismFlag weyl_flag = AutomorphismFlag::unknown;
  AutomorphismFlag center_flag = AutomorphismFlag::unknown;
  std::string weyl_certificate;
  std::string center_certificate;
  // Contradictions between the two sides; empty when consistent.
  std::vector<std::string> falsifications;
  // Implications that could not be tested because a flag is unknown.
  std::vector<std::string> unresolved;

  bool consistent() const { return falsifications.empty(); }
};

ChainProbe united_chain_probe(const WeylEndo &phi, const CheckOptions &options = {});

// ---------------------------------------------------------------------------
// X^4 + 1
// ---------------------------------------------------------------------------

struct KrausRow {
  std::uint32_t p;
  bool reducible;
  // Monic factors as coefficient vectors, constant term first.
  std::vector<std::vector<std::uint64_t>> factors;
  bool product_verified;
};

struct KrausReport {
  bool irreducible_over_z;
  std::size_t integer_candidates_checked;
  std::vector<KrausRow> rows;

  bool all_reducible() const;
};

KrausReport kraus_check(std::uint32_t p_max);

std::string format_univariate(const std::vector<std::uint64_t> &coeffs);

// ---------------------------------------------------------------------------
// Counterexample suite
// ---------------------------------------------------------------------------

struct SuiteEntry {
  std::string family;
  ConjectureTag tag;
  std::uint32_t p;
  InstanceVerdict verdict;
  std::string expected;
  bool ok;
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;
  KrausReport kraus;
  bool all_ok;
};

// X - X^p, (X1 - X1^p, X2) and (Y1 - Y1^p, Y2) for p in {2, 3, 5}, plus
// X^4 + 1 up to 1000.
SuiteReport counterexample_suite(const CheckOptions &options = {});

PolyEndo naive_jacobian_counterexample(std::uint32_t p);
PolyEndo naive_poisson_counterexample(std::uint32_t p);
WeylEndo naive_dixmier_counterexample(std::uint32_t p);

} // namespace dqa

#endif
