#include <doctest.h>

#include <random>

#include "dqa/parser.hpp"
#include "dqa/poly.hpp"
#include "dqa/random_poly.hpp"
#include "oracles.hpp"

using namespace dqa;

namespace {

const CoeffRing Q = CoeffRing::rationals();
const CoeffRing F2 = CoeffRing::prime_field(2);
const CoeffRing F5 = CoeffRing::prime_field(5);

Poly P(const char *s, CoeffRing ring = Q, std::size_t m = 2) { return parse_poly(s, ring, m); }

PolyEndo E(std::initializer_list<const char *> images, CoeffRing ring = Q) {
  std::vector<Poly> v;
  for (auto s : images)
    v.push_back(P(s, ring, images.size()));
  return PolyEndo(std::move(v));
}

Poly random_any(std::mt19937_64 &rng, CoeffRing ring, std::size_t m, unsigned deg = 3) {
  std::vector<std::size_t> vars(m);
  for (std::size_t i = 0; i < m; ++i)
    vars[i] = i;
  return random_poly(rng, ring, m, vars, RandomPolySpec{deg, 4, 3, 0});
}

} // namespace

TEST_CASE("multiplication examples") {
  CHECK(P("(X1+1)*(X1-1)") == P("X1^2-1"));
  CHECK(P("(X1+X2)^2", F2) == P("X1^2+X2^2", F2));
  Poly f = P("X1^3 + 2*X2");
  CHECK((f * Poly(Q, 2)).is_zero());
  CHECK((f * Poly(Q, 2)).terms().size() == 0);
}

TEST_CASE("printing is in ascending graded order") {
  CHECK(P("X1^2 + X2").to_string() == "X2 + X1^2");
  CHECK(P("X1*X2 + X1^2 + X2^2 + 3").to_string() == "3 + X1^2 + X1*X2 + X2^2");
  CHECK(P("1/2*X1 - X2").to_string() == "1/2*X1 - X2");
  CHECK(P("0").to_string() == "0");
}

TEST_CASE("partial derivatives") {
  CHECK(P("X1^3").derivative(0) == P("3*X1^2"));
  CHECK(P("X1^2", F2).derivative(0).is_zero());
  CHECK(P("X1*X2").derivative(1) == P("X1"));
}

TEST_CASE("substitution") {
  CHECK(P("X1^2").substitute(E({"X1+1", "X2"})) == P("X1^2+2*X1+1"));
  Poly f = P("X1^3*X2 - 7*X2^2 + 1/3");
  CHECK(f.substitute(PolyEndo::identity(Q, 2)) == f);
  CHECK(P("X2").substitute(E({"X2", "X1"})) == P("X1"));
}

TEST_CASE("composition orientation") {
  PolyEndo phi({parse_poly("X1+1", Q, 1)});
  PolyEndo psi({parse_poly("X1^2", Q, 1)});
  CHECK(compose_endo(phi, psi).image(0) == parse_poly("X1^2+2*X1+1", Q, 1));
  PolyEndo a({parse_poly("X1-X1^2", F5, 1)});
  PolyEndo b({parse_poly("X1+1", F5, 1)});
  CHECK(compose_endo(b, a).image(0) == parse_poly("4*X1^2+4*X1", F5, 1));
}

TEST_CASE("endomorphism degree") {
  CHECK(endo_degree(E({"X1-X1^5", "X2"}, F5)) == 5);
  CHECK(endo_degree(PolyEndo::identity(Q, 2)) == 1);
  CHECK(endo_degree(E({"X1+X2^2", "X2"})) == 2);
  CHECK_THROWS_AS(endo_degree(E({"0", "0"})), std::domain_error);
  CHECK_FALSE(P("0").degree().has_value());
}

TEST_CASE("jacobian examples") {
  CHECK(jacobian(PolyEndo::identity(Q, 2)) == PolyMatrix::identity(Q, 2, 2));
  PolyMatrix j = jacobian(E({"X1+X2^2", "X2"}));
  CHECK(j.at(0, 0) == P("1"));
  CHECK(j.at(0, 1) == P("2*X2"));
  CHECK(j.at(1, 0).is_zero());
  CHECK(j.at(1, 1) == P("1"));
  for (std::uint32_t p : {2U, 3U, 5U}) {
    auto ring = CoeffRing::prime_field(p);
    PolyEndo phi({P("X1", ring) - P("X1", ring).pow(p), P("X2", ring)});
    CHECK(jacobian(phi) == PolyMatrix::identity(ring, 2, 2));
  }
}

TEST_CASE("determinant examples") {
  CHECK(determinant(PolyMatrix::identity(Q, 2, 4)).is_one());
  CHECK(determinant(jacobian(E({"X1+X2^2", "X2"}))).is_one());
  PolyMatrix diag(2, 2, {P("X1"), P("0"), P("0"), P("X2")});
  CHECK(determinant(diag) == P("X1*X2"));
}

TEST_CASE("determinant agrees with the permutation-sum oracle") {
  std::mt19937_64 rng(3);
  for (auto ring : {Q, F2, F5, CoeffRing::integers()})
    for (std::size_t size = 1; size <= 5; ++size)
      for (int t = 0; t < 6; ++t) {
        std::vector<Poly> entries;
        for (std::size_t k = 0; k < size * size; ++k)
          entries.push_back(random_any(rng, ring, 2, 2));
        PolyMatrix m(size, size, entries);
        CHECK(m.determinant() == oracle::determinant(m));
      }
}

TEST_CASE("frobenius agrees with repeated multiplication") {
  CHECK(frobenius_power(P("X1+X2", F2)) == P("X1^2+X2^2", F2));
  CHECK(frobenius_power(P("X1+X1^2", F2)) == P("X1^2+X1^4", F2));
  CHECK(frobenius_power(P("3", F5)) == P("3", F5));
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {2U, 3U, 5U, 7U}) {
    auto ring = CoeffRing::prime_field(p);
    for (int t = 0; t < 20; ++t) {
      Poly f = random_any(rng, ring, 3);
      CHECK(frobenius_power(f) == oracle::frobenius(f));
    }
  }
}

TEST_CASE("ring axioms for polynomials") {
  std::mt19937_64 rng(7);
  for (auto ring : {Q, F2, F5, CoeffRing::integers()})
    for (int t = 0; t < 40; ++t) {
      Poly a = random_any(rng, ring, 3), b = random_any(rng, ring, 3), c = random_any(rng, ring, 3);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      if (!a.is_zero() && !b.is_zero() && ring.is_field())
        CHECK(*(a * b).degree() == *a.degree() + *b.degree());
    }
}

TEST_CASE("mixed partials commute") {
  std::mt19937_64 rng(9);
  for (auto ring : {Q, F2, F5})
    for (int t = 0; t < 40; ++t) {
      Poly f = random_any(rng, ring, 3, 4);
      for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
          CHECK(f.derivative(i).derivative(j) == f.derivative(j).derivative(i));
    }
}

TEST_CASE("chain rule: J(phi o psi) = J(phi)(psi) * J(psi)") {
  std::mt19937_64 rng(13);
  for (auto ring : {Q, F5})
    for (int t = 0; t < 15; ++t) {
      std::vector<Poly> a, b;
      for (int k = 0; k < 2; ++k) {
        a.push_back(random_any(rng, ring, 2, 2));
        b.push_back(random_any(rng, ring, 2, 2));
      }
      PolyEndo phi(a), psi(b);
      // (φ∘ψ)(X_i) = ψ(X_i)(φ), so J(φ∘ψ) = J(ψ)(φ) · J(φ).
      CHECK(jacobian(phi.compose(psi)) == jacobian(psi).substitute(phi) * jacobian(phi));
    }
}

TEST_CASE("composition is associative") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 20; ++t) {
    std::vector<PolyEndo> maps;
    for (int k = 0; k < 3; ++k) {
      std::vector<Poly> v;
      for (int i = 0; i < 2; ++i)
        v.push_back(random_any(rng, F5, 2, 2));
      maps.emplace_back(v);
    }
    CHECK(maps[0].compose(maps[1]).compose(maps[2]) == maps[0].compose(maps[1].compose(maps[2])));
  }
}

TEST_CASE("evaluation") {
  std::vector<Coeff> pt{Coeff(F5, 2L), Coeff(F5, 3L)};
  CHECK(P("X1^2 + X2", F5).evaluate(pt) == Coeff(F5, 2L));
}

TEST_CASE("ring mismatch") {
  CHECK_THROWS_AS(P("X1", Q) + P("X1", F5), RingMismatch);
  CHECK_THROWS_AS(P("X1", Q, 2) * P("X1", Q, 3), RingMismatch);
}
