#include <doctest.h>

#include <random>

#include "dqa/parser.hpp"
#include "dqa/poisson.hpp"
#include "dqa/random_poly.hpp"

using namespace dqa;

namespace {

const CoeffRing Q = CoeffRing::rationals();

PolyEndo E(std::initializer_list<const char *> images, CoeffRing ring = Q) {
  std::vector<Poly> v;
  for (auto s : images)
    v.push_back(parse_poly(s, ring, images.size()));
  return PolyEndo(std::move(v));
}

} // namespace

TEST_CASE("bracket examples") {
  PoissonContext ctx(Q, 1);
  auto P = [](const char *s) { return parse_poly(s, Q, 2); };
  CHECK(poisson_bracket(ctx, P("X1"), P("X2")).is_one());
  CHECK(poisson_bracket(ctx, P("X2"), P("X1")) == P("-1"));
  CHECK(poisson_bracket(ctx, P("X1^3*X2 + X2^2"), P("X1^3*X2 + X2^2")).is_zero());
  CHECK(poisson_bracket(ctx, P("X1+X2^2"), P("X2")).is_one());
}

TEST_CASE("bracket matrix") {
  PoissonContext ctx(Q, 1);
  auto P = [](const char *s) { return parse_poly(s, Q, 2); };
  PolyMatrix id = bracket_matrix(ctx, PolyEndo::identity(Q, 2));
  CHECK(id.at(0, 1) == P("1"));
  CHECK(id.at(1, 0) == P("-1"));
  CHECK(id.at(0, 0).is_zero());
  CHECK(bracket_matrix(ctx, E({"X1+X2^2", "X2"})) == id);
  PolyMatrix scaled = bracket_matrix(ctx, E({"2*X1", "X2"}));
  CHECK(scaled.at(0, 1) == P("2"));
  CHECK(scaled.at(1, 0) == P("-2"));
}

TEST_CASE("symplectic test") {
  PoissonContext ctx(Q, 1);
  CHECK(is_symplectic(ctx, PolyEndo::identity(Q, 2)));
  CHECK(is_symplectic(ctx, E({"X1+X2^2", "X2"})));
  CHECK_FALSE(is_symplectic(ctx, E({"2*X1", "X2"})));
  auto v = find_bracket_violation(ctx, E({"2*X1", "X2"}));
  REQUIRE(v);
  CHECK(v->actual == parse_poly("2", Q, 2));
}

TEST_CASE("theorem 1 records") {
  PoissonContext ctx(Q, 1);
  Theorem1Check a = check_theorem1(ctx, E({"X1+X2^2", "X2"}));
  CHECK(a.symplectic);
  CHECK(a.n_factorial_unit);
  CHECK(a.det.is_one());
  CHECK(a.det_is_one);
  Theorem1Check b = check_theorem1(ctx, E({"2*X1", "X2"}));
  CHECK_FALSE(b.symplectic);
  CHECK(b.n_factorial_unit);
  CHECK(b.det == parse_poly("2", Q, 2));
  CHECK_FALSE(b.det_is_one);
  CHECK(b.consistent());
}

TEST_CASE("theorem 1 on random shears over F5, n=2") {
  PoissonContext ctx(CoeffRing::prime_field(5), 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    PolyEndo phi = generate_symplectomorphism(ctx, seed, 3);
    Theorem1Check t = check_theorem1(ctx, phi);
    CHECK(t.symplectic);
    CHECK(t.det_is_one);
  }
}

TEST_CASE("generator") {
  PoissonContext ctx(Q, 1);
  CHECK(generate_symplectomorphism(ctx, 1, 0).is_identity());
  PolyEndo shear = hamiltonian_shear(ctx, parse_poly("X2^2", Q, 2));
  CHECK(shear == E({"X1+2*X2", "X2"}));
  CHECK(is_symplectic(ctx, dual_shear(ctx, parse_poly("X1^3", Q, 2))));
  CHECK(is_symplectic(ctx, symplectic_swap(ctx, 0)));
  CHECK(generate_symplectomorphism(ctx, 42, 4) == generate_symplectomorphism(ctx, 42, 4));
}

TEST_CASE("bracket axioms on random triples") {
  std::mt19937_64 rng(21);
  for (auto ring : {Q, CoeffRing::prime_field(2), CoeffRing::prime_field(5)})
    for (std::size_t n = 1; n <= 2; ++n) {
      PoissonContext ctx(ring, n);
      std::vector<std::size_t> vars(2 * n);
      for (std::size_t i = 0; i < vars.size(); ++i)
        vars[i] = i;
      for (int t = 0; t < 20; ++t) {
        auto draw = [&] { return random_poly(rng, ring, 2 * n, vars, RandomPolySpec{3, 3, 2, 0}); };
        Poly f = draw(), g = draw(), h = draw();
        auto br = [&](const Poly &a, const Poly &b) { return poisson_bracket(ctx, a, b); };
        CHECK(br(f, g) == -br(g, f));
        CHECK(br(f + g, h) == br(f, h) + br(g, h));
        CHECK(br(f, g * h) == br(f, g) * h + g * br(f, h));
        CHECK((br(f, br(g, h)) + br(g, br(h, f)) + br(h, br(f, g))).is_zero());
      }
    }
}

TEST_CASE("context limits") {
  CHECK_THROWS(PoissonContext(Q, 0));
  CHECK_THROWS(PoissonContext(Q, 5));
}
