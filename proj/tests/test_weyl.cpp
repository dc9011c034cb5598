#include <doctest.h>

#include <random>

#include "dqa/parser.hpp"
#include "dqa/random_poly.hpp"
#include "dqa/weyl.hpp"
#include "oracles.hpp"

using namespace dqa;

namespace {

const CoeffRing Q = CoeffRing::rationals();
const CoeffRing F2 = CoeffRing::prime_field(2);

WeylElement W(const WeylContext &ctx, const char *s) { return parse_weyl(s, ctx); }

WeylEndo WE(const WeylContext &ctx, std::initializer_list<const char *> images) {
  std::vector<WeylElement> v;
  for (auto s : images)
    v.push_back(W(ctx, s));
  return WeylEndo::from_images(std::move(v));
}

WeylElement random_element(std::mt19937_64 &rng, const WeylContext &ctx, unsigned deg = 3) {
  std::vector<std::size_t> vars(ctx.nvars());
  for (std::size_t i = 0; i < vars.size(); ++i)
    vars[i] = i;
  return WeylElement::from_normal_form(ctx, random_poly(rng, ctx.ring, ctx.nvars(), vars, {deg, 3, 3, 0}));
}

} // namespace

TEST_CASE("defining relation and normal order") {
  WeylContext ctx(Q, 1);
  CHECK(W(ctx, "Y1*Y2") == W(ctx, "Y2*Y1 + 1"));
  CHECK(W(ctx, "Y1^2*Y2^2") == W(ctx, "Y2^2*Y1^2 + 4*Y2*Y1 + 2"));
  CHECK(W(ctx, "Y1^2*Y2^2").to_string() == "2 + 4*Y2*Y1 + Y2^2*Y1^2");
  CHECK(weyl_mul(WeylElement::constant(ctx, 3L), WeylElement::constant(ctx, 1L)) == WeylElement::constant(ctx, 3L));
}

TEST_CASE("commutators") {
  WeylContext ctx(Q, 1);
  CHECK(commutator(W(ctx, "Y1"), W(ctx, "Y2")).is_one());
  CHECK(commutator(W(ctx, "Y1"), W(ctx, "Y1^2")).is_zero());
  CHECK(commutator(W(ctx, "Y2"), W(ctx, "Y1")) == WeylElement::constant(ctx, -1L));
  WeylContext ctx2(Q, 2);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      long expected = (j == i + 2 && i < 2) ? 1 : (i == j + 2 && j < 2) ? -1 : 0;
      CHECK(commutator(WeylElement::generator(ctx2, i), WeylElement::generator(ctx2, j)) ==
            WeylElement::constant(ctx2, expected));
    }
}

TEST_CASE("weyl degree") {
  WeylContext ctx(Q, 1);
  CHECK(weyl_degree(W(ctx, "Y2*Y1 + 1")) == 2);
  CHECK(weyl_degree(WeylElement::constant(ctx, 1L)) == 0);
  for (std::uint32_t p : {2U, 3U, 5U}) {
    WeylContext c(CoeffRing::prime_field(p), 1);
    CHECK(weyl_degree(WeylElement::generator(c, 0) - WeylElement::generator(c, 0).pow(p)) == p);
  }
  CHECK_THROWS_AS(weyl_degree(WeylElement(ctx)), std::domain_error);
}

TEST_CASE("relation verification") {
  WeylContext f2(F2, 1);
  CHECK(verify_endo_relations(std::vector{W(f2, "Y1"), W(f2, "Y2")}).ok);
  CHECK(verify_endo_relations(std::vector{W(f2, "Y1"), W(f2, "Y2 + Y1^2")}).ok);
  WeylContext q(Q, 1);
  CHECK(verify_endo_relations(std::vector{W(q, "Y1"), W(q, "Y2 + Y1")}).ok);
  RelationCheck bad = verify_endo_relations(std::vector{W(q, "Y2"), W(q, "Y1")});
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.found);
  CHECK(*bad.found == WeylElement::constant(q, -1L));
  CHECK_THROWS_AS(WE(q, {"Y2", "Y1"}), RelationViolation);
}

TEST_CASE("applying an endomorphism") {
  WeylContext f2(F2, 1);
  WeylEndo phi = WE(f2, {"Y1", "Y2 + Y1^2"});
  CHECK(apply_endo(WeylEndo::identity(f2), W(f2, "Y2*Y1^3 + Y2")) == W(f2, "Y2*Y1^3 + Y2"));
  CHECK(apply_endo(phi, W(f2, "Y2")) == W(f2, "Y2 + Y1^2"));
  CHECK(apply_endo(phi, W(f2, "Y2*Y1")) == W(f2, "Y2*Y1 + Y1^3"));
}

TEST_CASE("composition") {
  WeylContext q(Q, 1);
  WeylEndo phi = WE(q, {"Y1 + Y2", "Y2"});
  CHECK(compose_weyl_endos(phi, phi) == WE(q, {"Y1 + 2*Y2", "Y2"}));
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    WeylEndo a = generate_weyl_automorphism(q, seed, 2);
    WeylEndo b = generate_weyl_automorphism(q, seed + 100, 2);
    CHECK(compose_weyl_endos(a, b).degree() <= a.degree() * b.degree());
  }
}

TEST_CASE("centrality") {
  for (std::uint32_t p : {2U, 3U}) {
    WeylContext c(CoeffRing::prime_field(p), 1);
    CHECK(is_central(WeylElement::generator(c, 0).pow(p)));
    CHECK(is_central(WeylElement::generator(c, 1).pow(p)));
  }
  WeylContext q(Q, 1);
  CHECK_FALSE(is_central(W(q, "Y1")));
  CHECK(is_central(WeylElement::constant(q, 7L)));
}

TEST_CASE("center slices") {
  CenterSlice a = center_slice_check(WeylContext(F2, 1), 2);
  CHECK(a.dimension_found == 3);
  CHECK(a.match);
  CenterSlice b = center_slice_check(WeylContext(CoeffRing::prime_field(3), 1), 2);
  CHECK(b.dimension_found == 1);
  CHECK(b.match);
  CenterSlice c = center_slice_check(WeylContext(F2, 1), 4);
  CHECK(c.dimension_found == 6);
  CHECK(c.match);
}

TEST_CASE("generators") {
  WeylContext f3(CoeffRing::prime_field(3), 1);
  CHECK(generate_weyl_automorphism(f3, 5, 0).is_identity());
  CHECK(generate_weyl_automorphism(f3, 5, 3) == generate_weyl_automorphism(f3, 5, 3));
  WeylEndo base = WeylEndo::identity(f3);
  Poly z = -Poly::variable(f3.ring, 2, 0);
  std::vector<Poly> central{z, Poly(f3.ring, 2)};
  WeylEndo pert = central_perturbation(base, central);
  CHECK(pert.image(0) == W(f3, "Y1 - Y1^3"));
  for (std::uint64_t seed = 0; seed < 10; ++seed)
    CHECK(verify_endo_relations(generate_weyl_endo_central_perturbation(f3, seed).images()).ok);
}

TEST_CASE("inverse search") {
  WeylContext f5(CoeffRing::prime_field(5), 1);
  WeylEndo shear = WE(f5, {"Y1", "Y2 + Y1^2"});
  CHECK(weyl_inverse_degree_bound(shear) == 2);
  WeylInverseSearch s = inverse_search_weyl(shear, 2);
  REQUIRE(s.inverse);
  CHECK(*s.inverse == WE(f5, {"Y1", "Y2 - Y1^2"}));
  WeylInverseSearch id = inverse_search_weyl(WeylEndo::identity(f5), 1);
  REQUIRE(id.inverse);
  CHECK(id.inverse->is_identity());
  WeylContext f2(F2, 1);
  WeylInverseSearch none = inverse_search_weyl(WE(f2, {"Y1 - Y1^2", "Y2"}), 2);
  CHECK_FALSE(none.inverse);
  CHECK(none.exhausted());
}

TEST_CASE("weyl_mul agrees with the rewrite oracle") {
  std::mt19937_64 rng(31);
  for (auto ring : {Q, F2, CoeffRing::prime_field(5)}) {
    WeylContext ctx(ring, 1);
    for (int t = 0; t < 40; ++t) {
      WeylElement a = random_element(rng, ctx), b = random_element(rng, ctx);
      CHECK(weyl_mul(a, b) == oracle::rewrite_product(a, b));
    }
  }
}

TEST_CASE("associativity and distributivity") {
  std::mt19937_64 rng(37);
  for (auto ring : {Q, F2, CoeffRing::prime_field(3)})
    for (std::size_t n = 1; n <= 2; ++n) {
      WeylContext ctx(ring, n);
      for (int t = 0; t < 15; ++t) {
        WeylElement a = random_element(rng, ctx, 2), b = random_element(rng, ctx, 2),
                    c = random_element(rng, ctx, 2);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
      }
    }
}

TEST_CASE("parser keeps word order") {
  WeylContext q(Q, 1);
  CHECK_FALSE(W(q, "Y1*Y2") == W(q, "Y2*Y1"));
  CHECK(W(q, "(Y1 + Y2)^2") == W(q, "Y1^2 + 2*Y2*Y1 + Y2^2 + 1"));
}
