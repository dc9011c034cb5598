#include <doctest.h>

#include "dqa/checker.hpp"
#include "dqa/parser.hpp"

using namespace dqa;

namespace {

PolyEndo E(CoeffRing ring, std::initializer_list<const char *> images) {
  std::vector<Poly> v;
  for (auto s : images)
    v.push_back(parse_poly(s, ring, images.size()));
  return PolyEndo(std::move(v));
}

const CoeffRing F2 = CoeffRing::prime_field(2);
const CoeffRing F5 = CoeffRing::prime_field(5);

// Brute-force fiber sizes of a univariate map over F_p.
std::map<std::uint64_t, std::size_t> fibers(const Poly &f) {
  std::map<std::uint64_t, std::size_t> out;
  for (std::uint32_t x = 0; x < f.ring().characteristic(); ++x) {
    std::vector<Coeff> pt{Coeff(f.ring(), static_cast<long>(x))};
    ++out[f.evaluate(pt).residue()];
  }
  return out;
}

} // namespace

TEST_CASE("polynomial inverse search") {
  PolyInverseSearch s = inverse_search_poly(E(F5, {"X1 + X2^2", "X2"}), 2);
  REQUIRE(s.inverse);
  CHECK(*s.inverse == E(F5, {"X1 - X2^2", "X2"}));
  PolyInverseSearch id = inverse_search_poly(PolyEndo::identity(F5, 3), 1);
  REQUIRE(id.inverse);
  CHECK(id.inverse->is_identity());
  PolyEndo njc = E(F2, {"X1 - X1^2"});
  CHECK(gabber_bound(njc) == 1);
  PolyInverseSearch none = inverse_search_poly(njc, 1);
  CHECK_FALSE(none.inverse);
  CHECK(none.exhausted());
  CHECK_THROWS_AS(inverse_search_poly(E(CoeffRing::integers(), {"X1"}), 1), RingMismatch);
}

TEST_CASE("gabber bound") {
  CHECK(gabber_bound(E(F5, {"X1 + X2^2", "X2"})) == 2);
  CHECK(gabber_bound(E(F5, {"X1 + X2^3", "X2", "X3"})) == 9);
}

TEST_CASE("extension degree") {
  ExtensionEstimate sq = extension_degree_estimate(E(F5, {"X1^2"}), 16);
  CHECK(sq.exact);
  CHECK(sq.estimate == 2);
  auto f = fibers(parse_poly("X1^2", F5, 1));
  CHECK(f[1] == 2);
  CHECK(f[4] == 2);
  ExtensionEstimate njc = extension_degree_estimate(E(F2, {"X1 - X1^2"}), 16);
  CHECK(njc.estimate == 2);
  CHECK(*njc.separable);
  CHECK(extension_degree_estimate(PolyEndo::identity(F5, 2), 16).estimate == 1);
  ExtensionEstimate two = extension_degree_estimate(E(F5, {"X1^2", "X2"}), 64, 3);
  CHECK(two.estimate == 2);
  CHECK_FALSE(two.exact);
  CHECK_THROWS_AS(extension_degree_estimate(E(F5, {"X1", "1"}), 16), NonFiniteFibers);
}

TEST_CASE("tags") {
  CHECK(parse_tag("NJC") == ConjectureTag::NJC);
  CHECK(to_string(ConjectureTag::CDC) == "CDC");
  CHECK_THROWS(parse_tag("XYZ"));
  CHECK(is_weyl_tag(ConjectureTag::NDC));
  CHECK(is_poisson_tag(ConjectureTag::CPC));
}

TEST_CASE("naive conjectures are refuted") {
  InstanceVerdict njc = check_instance(ConjectureTag::NJC, naive_jacobian_counterexample(2));
  CHECK(*njc.jacobian_nonzero_constant);
  CHECK(njc.automorphism == AutomorphismFlag::proven_no);
  CHECK(njc.statement_holds == Tri::no);
  CHECK(njc.verdict == "counterexample");

  InstanceVerdict npc = check_instance(ConjectureTag::NPC, naive_poisson_counterexample(2));
  CHECK(*npc.symplectic);
  CHECK(npc.automorphism == AutomorphismFlag::proven_no);
  CHECK(npc.verdict == "counterexample");

  InstanceVerdict ndc = check_instance(ConjectureTag::NDC, naive_dixmier_counterexample(2));
  CHECK(ndc.automorphism == AutomorphismFlag::proven_no);
  CHECK(ndc.certified_bound == 2);
  CHECK(ndc.verdict == "counterexample");
}

TEST_CASE("corrected conjecture on the naive counterexample") {
  InstanceVerdict cjc = check_instance(ConjectureTag::CJC, naive_jacobian_counterexample(2));
  CHECK(*cjc.extension_degree == 2);
  CHECK_FALSE(*cjc.extension_not_multiple_of_p);
  CHECK_FALSE(cjc.hypotheses_hold);
  CHECK(cjc.statement_holds == Tri::yes);
}

TEST_CASE("automorphisms satisfy every tag") {
  PolyEndo shear = E(F5, {"X1 + X2^2", "X2"});
  for (auto tag : {ConjectureTag::CJC, ConjectureTag::NJC, ConjectureTag::CPC, ConjectureTag::NPC}) {
    InstanceVerdict v = check_instance(tag, shear);
    CHECK(v.automorphism == AutomorphismFlag::proven_yes);
    CHECK(v.statement_holds == Tri::yes);
  }
}

TEST_CASE("tag mismatches") {
  CHECK_THROWS_AS(check_instance(ConjectureTag::CDC, E(F5, {"X1", "X2"})), TagMismatch);
  CHECK_THROWS_AS(check_instance(ConjectureTag::CPC, E(F5, {"2*X1", "X2"})), TagMismatch);
  CHECK_THROWS_AS(check_instance(ConjectureTag::NPC, E(F5, {"X1"})), TagMismatch);
  CHECK_THROWS_AS(check_instance(ConjectureTag::NJC, naive_dixmier_counterexample(3)), TagMismatch);
}

TEST_CASE("chain probe examples") {
  WeylContext f5(F5, 1);
  WeylEndo shear = WeylEndo::from_images({parse_weyl("Y1", f5), parse_weyl("Y2 + Y1^2", f5)});
  ChainProbe a = united_chain_probe(shear);
  CHECK(a.consistent());
  CHECK(a.weyl_flag == AutomorphismFlag::proven_yes);
  CHECK(a.center_flag == AutomorphismFlag::proven_yes);
  ChainProbe b = united_chain_probe(naive_dixmier_counterexample(2));
  CHECK(b.consistent());
  CHECK(b.weyl_flag == AutomorphismFlag::proven_no);
  CHECK(b.center_flag == AutomorphismFlag::proven_no);
  ChainProbe c = united_chain_probe(WeylEndo::identity(f5));
  CHECK(c.consistent());
  CHECK(c.unresolved.empty());
}

TEST_CASE("kraus") {
  KrausReport k = kraus_check(7);
  CHECK(k.irreducible_over_z);
  REQUIRE(k.rows.size() == 4);
  CHECK(k.rows[0].factors == std::vector<std::vector<std::uint64_t>>(4, {1, 1}));
  CHECK(k.rows[1].p == 3);
  CHECK(format_univariate(k.rows[1].factors[0]) == "X^2 + X + 2");
  CHECK(format_univariate(k.rows[1].factors[1]) == "X^2 + 2*X + 2");
  CHECK(k.all_reducible());
}

TEST_CASE("kraus factors multiply back, checked with Poly") {
  KrausReport k = kraus_check(200);
  for (const auto &row : k.rows) {
    CoeffRing ring = CoeffRing::prime_field(row.p);
    Poly prod = Poly::constant(ring, 1, 1L);
    for (const auto &f : row.factors) {
      Poly g(ring, 1);
      for (std::size_t i = 0; i < f.size(); ++i)
        g += Poly::term(ring, Monomial::variable(1, 0, static_cast<std::uint16_t>(i)),
                        Coeff(ring, static_cast<long>(f[i])));
      prod = prod * g;
    }
    CHECK(prod == parse_poly("X1^4 + 1", ring, 1));
    CHECK(row.factors.size() > 1);
  }
}
