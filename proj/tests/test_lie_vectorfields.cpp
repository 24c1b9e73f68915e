#include <catch2/catch_amalgamated.hpp>

#include "gfc/graded_lie.hpp"
#include "gfc/random_gen.hpp"
#include "gfc/vectorfields.hpp"

using namespace gfc;

TEST_CASE("vector field bracket is antisymmetric and satisfies Jacobi") {
  RandomGen gen(11);
  for (const auto& v : {VarietyKind::affine(2), VarietyKind::torus(1),
                        VarietyKind::punctured_sphere({0, 1})})
    for (int trial = 0; trial < 40; ++trial) {
      VectorFieldElem a = gen.field(v, 2, 2);
      VectorFieldElem b = gen.field(v, 2, 2);
      VectorFieldElem c = gen.field(v, 2, 2);
      REQUIRE(bracket_fields(a, b) == Rational(-1) * bracket_fields(b, a));
      VectorFieldElem jac = bracket_fields(bracket_fields(a, b), c) +
                            bracket_fields(bracket_fields(b, c), a) +
                            bracket_fields(bracket_fields(c, a), b);
      REQUIRE(jac.is_zero());
    }
}

TEST_CASE("bracket acts as commutator of derivations") {
  RandomGen gen(22);
  VarietyKind v = VarietyKind::torus(2);
  for (int trial = 0; trial < 40; ++trial) {
    VectorFieldElem a = gen.field(v, 2, 2);
    VectorFieldElem b = gen.field(v, 2, 2);
    FunctionElem f = gen.function(v, 2, 2);
    REQUIRE(bracket_fields(a, b).apply(f) == a.apply(b.apply(f)) - b.apply(a.apply(f)));
  }
}

TEST_CASE("Witt relations on one-variable fields: [e_i, e_j] = (j-i) e_{i+j}") {
  VarietyKind v = VarietyKind::affine(1);
  FunctionElem x = FunctionElem::coordinate(v);
  auto e = [&](int k) {  // e_k = x^{k+1} d/dx
    return VectorFieldElem::along(pow(x, k + 1), 1);
  };
  for (int i = 0; i <= 3; ++i)
    for (int j = 0; j <= 3; ++j)
      REQUIRE(bracket_fields(e(i), e(j)) == Rational(j - i) * e(i + j));
}

TEST_CASE("smash bracket matches its defining formula and Jacobi") {
  RandomGen gen(33);
  for (const auto& v : {VarietyKind::affine(1), VarietyKind::torus(1)}) {
    for (int trial = 0; trial < 40; ++trial) {
      FunctionElem f = gen.function(v, 2, 1);
      FunctionElem g = gen.function(v, 2, 1);
      VectorFieldElem eta = gen.field(v, 2, 1);
      VectorFieldElem mu = gen.field(v, 2, 1);
      SmashElem lhs =
          smash_bracket(SmashElem::smash(f, eta), SmashElem::smash(g, mu));
      SmashElem rhs(v);
      rhs.add(multiply(f, eta.apply(g)), mu);
      FunctionElem neg = multiply(g, mu.apply(f));
      neg *= -1;
      rhs.add(neg, eta);
      rhs.add(multiply(f, g), bracket_fields(eta, mu));
      REQUIRE(lhs == rhs);
    }
    for (int trial = 0; trial < 25; ++trial) {
      SmashElem a = gen.smash(v, 2, 1);
      SmashElem b = gen.smash(v, 2, 1);
      SmashElem c = gen.smash(v, 2, 1);
      SmashElem jac = smash_bracket(smash_bracket(a, b), c);
      jac += smash_bracket(smash_bracket(b, c), a);
      jac += smash_bracket(smash_bracket(c, a), b);
      REQUIRE(jac.is_zero());
    }
  }
}

TEST_CASE("truncated L+ brackets satisfy Jacobi exhaustively") {
  for (int n : {1, 2}) {
    LPlusAlgebra lp = build_lplus(n, 3);
    for (std::size_t i = 0; i < lp.dim(); ++i)
      for (std::size_t j = i + 1; j < lp.dim(); ++j)
        for (std::size_t k = j + 1; k < lp.dim(); ++k) {
          // the truncation is an honest quotient, so Jacobi holds exactly
          REQUIRE(jacobi_holds(lp.lie, i, j, k));
        }
  }
}

TEST_CASE("L+ degree-0 slice is gl_n") {
  for (int n : {1, 2, 3}) {
    LPlusAlgebra lp = build_lplus(n, 0);
    REQUIRE(lp.dim() == static_cast<std::size_t>(n * n));
    for (std::size_t i = 0; i < lp.dim(); ++i)
      REQUIRE(lp.generators[i].weight() == 0);
  }
  // [x d/dx, x^2 d/dx] = x^2 d/dx inside L+ for n=1
  LPlusAlgebra lp = build_lplus(1, 2);
  auto e0 = lp.find({1}, 1);
  auto e1 = lp.find({2}, 1);
  REQUIRE(e0);
  REQUIRE(e1);
  REQUIRE(lp.lie.bracket(*e0, *e1) == SparseVec::unit(*e1, 1));
}

TEST_CASE("L+ bracket table matches the vector field bracket") {
  VarietyKind v = VarietyKind::affine(2);
  LPlusAlgebra lp = build_lplus(2, 2);
  auto realize = [&](std::size_t i) {
    const auto& g = lp.generators[i];
    return VectorFieldElem::along(
        FunctionElem::monomial(v, g.exponent), g.direction);
  };
  for (std::size_t i = 0; i < lp.dim(); ++i)
    for (std::size_t j = 0; j < lp.dim(); ++j) {
      VectorFieldElem expect = bracket_fields(realize(i), realize(j));
      VectorFieldElem got(v);
      SparseVec br = lp.lie.bracket(i, j);
      for (const auto& [k, c] : br.entries())
        got += c * realize(k);
      // discard components above the truncation degree before comparing
      VectorFieldElem kept(v);
      for (int dir = 1; dir <= 2; ++dir) {
        FunctionElem comp = FunctionElem::zero(v);
        for (const auto& [key, c] : expect.component(dir).terms())
          if (key.degree() - 1 <= lp.max_degree)
            comp += FunctionElem::from_key(v, key, c);
        kept.set_component(dir, comp);
      }
      REQUIRE(got == kept);
    }
}

TEST_CASE("semidirect window brackets satisfy Jacobi on interior triples") {
  LPlusAlgebra lp = build_lplus(1, 4);
  for (const auto& v : {VarietyKind::affine(1), VarietyKind::torus(1)}) {
    SemidirectAlgebra sd = build_semidirect(v, lp, -3, 3);
    std::size_t checked = 0;
    for (std::size_t i = 0; i < sd.generators.size() && checked < 4000; ++i)
      for (std::size_t j = i + 1; j < sd.generators.size() && checked < 4000; ++j)
        for (std::size_t k = j + 1; k < sd.generators.size() && checked < 4000; ++k) {
          int w = sd.generators[i].weight(lp) + sd.generators[j].weight(lp) +
                  sd.generators[k].weight(lp);
          // all pairwise sums must stay inside the window too
          auto pair_ok = [&](std::size_t a, std::size_t b) {
            int s = sd.generators[a].weight(lp) + sd.generators[b].weight(lp);
            return s >= sd.weight_lo && s <= sd.weight_hi;
          };
          if (w < sd.weight_lo || w > sd.weight_hi) continue;
          if (!pair_ok(i, j) || !pair_ok(j, k) || !pair_ok(i, k)) continue;
          ++checked;
          REQUIRE(jacobi_holds(sd.lie, i, j, k));
        }
    REQUIRE(checked > 50);
  }
}

TEST_CASE("delta elements expand to the binomial alternating sum") {
  VarietyKind v = VarietyKind::affine(1);
  FunctionElem x = FunctionElem::coordinate(v);
  VectorFieldElem d = VectorFieldElem::coordinate_derivation(v, 1);
  // s = 1: g f # eta - g # f eta
  SmashElem got = delta_element(FunctionElem::one(v), x, 1, d);
  SmashElem want(v);
  want.add(x, d);
  want.add(FunctionElem::constant(v, -1), x * d);
  REQUIRE(got == want);
  REQUIRE_THROWS_AS(delta_element(x, x, 0, d), std::invalid_argument);
}
