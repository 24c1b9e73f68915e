#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "gfc/parser.hpp"
#include "gfc/random_gen.hpp"
#include "gfc/varieties.hpp"

using namespace gfc;

namespace {

std::vector<VarietyKind> all_families() {
  return {VarietyKind::affine(1), VarietyKind::affine(2), VarietyKind::torus(1),
          VarietyKind::torus(2),
          VarietyKind::punctured_sphere({0, 1, Rational(1, 2)})};
}

/// A sample point away from punctures and zero coordinates.
std::vector<Rational> sample_point(const VarietyKind& v, RandomGen& gen) {
  std::vector<Rational> x(v.n);
  for (auto& c : x) {
    do {
      c = gen.coeff() + Rational(7, 3);
    } while (c == 0);
  }
  if (v.family == VarietyFamily::PuncturedSphere) {
    bool hit = true;
    while (hit) {
      hit = false;
      for (const auto& a : v.punctures)
        if (x[0] == a) {
          x[0] += 1;
          hit = true;
        }
    }
  }
  return x;
}

}  // namespace

TEST_CASE("multiplication matches pointwise evaluation") {
  RandomGen gen(101);
  for (const auto& v : all_families())
    for (int trial = 0; trial < 60; ++trial) {
      FunctionElem f = gen.function(v, 3, 3);
      FunctionElem g = gen.function(v, 3, 3);
      FunctionElem p = multiply(f, g);
      auto x = sample_point(v, gen);
      REQUIRE(evaluate(p, x) == evaluate(f, x) * evaluate(g, x));
    }
}

TEST_CASE("multiplication is commutative and associative") {
  RandomGen gen(202);
  for (const auto& v : all_families())
    for (int trial = 0; trial < 40; ++trial) {
      FunctionElem f = gen.function(v, 2, 2);
      FunctionElem g = gen.function(v, 2, 2);
      FunctionElem h = gen.function(v, 2, 2);
      REQUIRE(multiply(f, g) == multiply(g, f));
      REQUIRE(multiply(multiply(f, g), h) == multiply(f, multiply(g, h)));
    }
}

TEST_CASE("partial fractions: 1/z * 1/(z-1) = 1/(z-1) - 1/z") {
  VarietyKind v = VarietyKind::punctured_sphere({0, 1});
  FunctionElem a = FunctionElem::from_key(v, FKey::polepow(1, 1));  // z^-1
  FunctionElem b = FunctionElem::from_key(v, FKey::polepow(2, 1));  // (z-1)^-1
  FunctionElem expected =
      FunctionElem::from_key(v, FKey::polepow(2, 1)) +
      FunctionElem::from_key(v, FKey::polepow(1, 1), -1);
  REQUIRE(multiply(a, b) == expected);
}

TEST_CASE("sphere normal form never mixes distinct pole factors") {
  RandomGen gen(303);
  VarietyKind v = VarietyKind::punctured_sphere({0, 2, 5});
  for (int trial = 0; trial < 80; ++trial) {
    FunctionElem p = multiply(gen.function(v, 3, 3), gen.function(v, 3, 3));
    for (const auto& [k, c] : p.terms()) {
      REQUIRE((k.pole == 0 || k.ord >= 1));
      REQUIRE(k.exps.empty());
    }
  }
}

TEST_CASE("z times a simple pole splits off the constant part") {
  VarietyKind v = VarietyKind::punctured_sphere({Rational(3)});
  FunctionElem z = FunctionElem::coordinate(v);
  FunctionElem p = FunctionElem::from_key(v, FKey::polepow(1, 2));
  // z (z-3)^-2 = (z-3)^-1 + 3 (z-3)^-2
  FunctionElem expected = FunctionElem::from_key(v, FKey::polepow(1, 1)) +
                          FunctionElem::from_key(v, FKey::polepow(1, 2), 3);
  REQUIRE(multiply(z, p) == expected);
}

TEST_CASE("derivation satisfies the Leibniz rule") {
  RandomGen gen(404);
  for (const auto& v : all_families())
    for (int trial = 0; trial < 50; ++trial) {
      FunctionElem f = gen.function(v, 3, 2);
      FunctionElem g = gen.function(v, 3, 2);
      for (int dir = 1; dir <= v.n; ++dir) {
        FunctionElem lhs = derive(multiply(f, g), dir);
        FunctionElem rhs =
            multiply(derive(f, dir), g) + multiply(f, derive(g, dir));
        REQUIRE(lhs == rhs);
      }
    }
}

TEST_CASE("derivative examples") {
  VarietyKind t = VarietyKind::torus(1);
  FunctionElem xm1 = FunctionElem::monomial(t, {-1});
  REQUIRE(derive(xm1, 1) == FunctionElem::monomial(t, {-2}, -1));
  VarietyKind s = VarietyKind::punctured_sphere({1});
  FunctionElem p = FunctionElem::from_key(s, FKey::polepow(1, 1));
  REQUIRE(derive(p, 1) == FunctionElem::from_key(s, FKey::polepow(1, 2), -1));
}

TEST_CASE("jet map is multiplicative on truncated series") {
  RandomGen gen(505);
  for (const auto& v : all_families())
    for (int trial = 0; trial < 25; ++trial) {
      FunctionElem g1 = gen.function(v, 2, 2);
      FunctionElem f1 = gen.function(v, 2, 2);
      FunctionElem g2 = gen.function(v, 2, 2);
      FunctionElem f2 = gen.function(v, 2, 2);
      // j(g1 g2 (x) f1 f2) = j(g1 (x) f1) j(g2 (x) f2)
      JetSeries lhs = jet(multiply(g1, g2), multiply(f1, f2), 3);
      JetSeries rhs = jet_multiply(jet(g1, f1, 3), jet(g2, f2, 3));
      REQUIRE(lhs == rhs);
    }
}

TEST_CASE("jet constant term is the plain product") {
  RandomGen gen(606);
  VarietyKind v = VarietyKind::torus(2);
  FunctionElem g = gen.function(v, 2, 2);
  FunctionElem f = gen.function(v, 2, 2);
  REQUIRE(jet(g, f, 2).coeff(std::vector<int>(v.n, 0)) == multiply(g, f));
}

TEST_CASE("parser round trips against arithmetic") {
  VarietyKind a2 = VarietyKind::affine(2);
  FunctionElem x1 = FunctionElem::coordinate(a2, 1);
  FunctionElem x2 = FunctionElem::coordinate(a2, 2);
  REQUIRE(parse_function(a2, "x1^2*x2 - 3*x1") ==
          multiply(multiply(x1, x1), x2) + Rational(-3) * x1);
  VarietyKind t1 = VarietyKind::torus(1);
  REQUIRE(parse_function(t1, "2*x1^-3") == FunctionElem::monomial(t1, {-3}, 2));
  VarietyKind s = VarietyKind::punctured_sphere({0, 1});
  REQUIRE(parse_function(s, "z^2 + (z-1)^-2") ==
          FunctionElem::from_key(s, FKey::zpow(2)) +
              FunctionElem::from_key(s, FKey::polepow(2, 2)));
  REQUIRE(parse_function(s, "1/2*z") ==
          FunctionElem::from_key(s, FKey::zpow(1), Rational(1, 2)));
}

TEST_CASE("parser rejects malformed input") {
  VarietyKind a1 = VarietyKind::affine(1);
  REQUIRE_THROWS_AS(parse_function(a1, "x1^-1"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_function(a1, "x2"), std::invalid_argument);
  VarietyKind s = VarietyKind::punctured_sphere({0, 1});
  REQUIRE_THROWS_AS(parse_function(s, "(z-7)^-1"), std::invalid_argument);
}

TEST_CASE("affine monomials reject negative exponents") {
  REQUIRE_THROWS_AS(FunctionElem::monomial(VarietyKind::affine(1), {-1}),
                    std::invalid_argument);
}

TEST_CASE("punctured sphere requires distinct punctures") {
  REQUIRE_THROWS_AS(VarietyKind::punctured_sphere({1, 1}),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(VarietyKind::punctured_sphere({}), std::invalid_argument);
}
