#include <catch2/catch_amalgamated.hpp>

#include "gfc/modules.hpp"
#include "gfc/random_gen.hpp"

using namespace gfc;

namespace {

std::vector<LPlusModule> module_zoo() {
  return {LPlusModule::trivial(1), LPlusModule::weight_module_1d(1),
          LPlusModule::weight_module_1d(-1), LPlusModule::weight_module_1d(2),
          LPlusModule::weight_module_1d(Rational(1, 2))};
}

TensorModuleElem random_elem(RandomGen& gen, const VarietyKind& v,
                             const LPlusModule& W, int max_ord) {
  TensorModuleElem m(v, W.dim());
  std::uniform_int_distribution<std::size_t> widx(0, W.dim() - 1);
  for (int t = 0; t < 2; ++t)
    m += TensorModuleElem::pure(gen.function(v, max_ord, 1), widx(gen.engine()),
                                W.dim());
  return m;
}

}  // namespace

TEST_CASE("module factories validate bracket and weight compatibility") {
  REQUIRE(LPlusModule::trivial(2).dim() == 1);
  REQUIRE(LPlusModule::weight_module_1d(3).annihilation_degree() == 1);
  REQUIRE(LPlusModule::trivial(1).annihilation_degree() == 0);
  LPlusModule gl2 = LPlusModule::standard_gln(2);
  REQUIRE(gl2.dim() == 2);
  // (X_2 d/dX_1) w_1 = w_2
  SparseVec r = gl2.act(LPlusGenerator{{0, 1}, 1}, std::size_t(0));
  REQUIRE(r == SparseVec::unit(1, 1));
}

TEST_CASE("invalid module actions are rejected at construction") {
  // declare weight 5 on a trivial action: Euler check must fail
  std::map<std::pair<std::vector<int>, int>, std::vector<SparseVec>> empty;
  REQUIRE_THROWS_AS(LPlusModule(1, "bad", {Rational(5)}, empty),
                    std::invalid_argument);
}

TEST_CASE("tensor action satisfies the AV Leibniz rule") {
  RandomGen gen(71);
  for (const auto& v : {VarietyKind::affine(1), VarietyKind::torus(1)})
    for (const auto& W : module_zoo())
      for (int trial = 0; trial < 30; ++trial) {
        FunctionElem f = gen.function(v, 2, 2);
        VectorFieldElem eta = gen.field(v, 2, 1);
        TensorModuleElem m = random_elem(gen, v, W, 2);
        // eta(f m) = eta(f) m + f (eta m)
        TensorModuleElem lhs = tensor_action(eta, f * m, W);
        TensorModuleElem rhs = eta.apply(f) * m + f * tensor_action(eta, m, W);
        REQUIRE(lhs == rhs);
      }
}

TEST_CASE("tensor action satisfies the module axiom") {
  RandomGen gen(72);
  for (const auto& v : {VarietyKind::affine(1), VarietyKind::torus(1)})
    for (const auto& W : module_zoo())
      for (int trial = 0; trial < 30; ++trial) {
        VectorFieldElem eta = gen.field(v, 2, 1);
        VectorFieldElem mu = gen.field(v, 2, 1);
        TensorModuleElem m = random_elem(gen, v, W, 2);
        TensorModuleElem lhs = tensor_action(bracket_fields(eta, mu), m, W);
        TensorModuleElem rhs = tensor_action(eta, tensor_action(mu, m, W), W) -
                               tensor_action(mu, tensor_action(eta, m, W), W);
        REQUIRE(lhs == rhs);
      }
}

TEST_CASE("module axiom holds for gl_2 coefficients on the plane") {
  RandomGen gen(73);
  VarietyKind v = VarietyKind::affine(2);
  LPlusModule W = LPlusModule::standard_gln(2);
  for (int trial = 0; trial < 25; ++trial) {
    VectorFieldElem eta = gen.field(v, 2, 1);
    VectorFieldElem mu = gen.field(v, 2, 1);
    TensorModuleElem m = random_elem(gen, v, W, 2);
    TensorModuleElem lhs = tensor_action(bracket_fields(eta, mu), m, W);
    TensorModuleElem rhs = tensor_action(eta, tensor_action(mu, m, W), W) -
                           tensor_action(mu, tensor_action(eta, m, W), W);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("tensor action shifts weights by deg(f) - 1") {
  VarietyKind v = VarietyKind::torus(1);
  LPlusModule W = LPlusModule::weight_module_1d(Rational(1, 2));
  for (int j : {-2, 0, 3})
    for (int d : {-1, 2, 4}) {
      FunctionElem f = FunctionElem::monomial(v, {d});
      TensorModuleElem m =
          TensorModuleElem::pure(FunctionElem::monomial(v, {j}), 0, 1);
      TensorModuleElem r = tensor_action(f, 1, m, W);
      // every output term has x-degree j + d - 1
      for (const auto& [kw, c] : r.terms())
        REQUIRE(kw.first.degree() == j + d - 1);
    }
}

TEST_CASE("differentiability order is annihilation degree plus one") {
  RandomGen gen(74);
  for (const auto& v : {VarietyKind::affine(1), VarietyKind::torus(1)}) {
    for (const auto& W : module_zoo()) {
      std::vector<DifferentiabilitySample> samples;
      for (int t = 0; t < 12; ++t)
        samples.push_back(
            {gen.function(v, 2, 2), gen.field(v, 2, 1), random_elem(gen, v, W, 2)});
      unsigned expected = W.annihilation_degree() + 1;
      DifferentiabilityReport rep =
          check_differentiability(W, v, expected, samples);
      REQUIRE(rep.holds);
      REQUIRE(rep.cross_check_ok);
      if (expected >= 2) {
        // minimality: some sample fails at the lower order
        REQUIRE(rep.witness.has_value());
        DifferentiabilityReport lower =
            check_differentiability(W, v, expected - 1, samples);
        REQUIRE_FALSE(lower.holds);
      }
    }
  }
}

TEST_CASE("gl_2 tensor module is 2-differentiable on the plane") {
  RandomGen gen(75);
  VarietyKind v = VarietyKind::affine(2);
  LPlusModule W = LPlusModule::standard_gln(2);
  REQUIRE(W.annihilation_degree() == 1);
  std::vector<DifferentiabilitySample> samples;
  for (int t = 0; t < 10; ++t)
    samples.push_back(
        {gen.function(v, 2, 2), gen.field(v, 2, 1), random_elem(gen, v, W, 2)});
  DifferentiabilityReport rep = check_differentiability(W, v, 2, samples);
  REQUIRE(rep.holds);
  REQUIRE(rep.cross_check_ok);
  REQUIRE_FALSE(check_differentiability(W, v, 1, samples).holds);
}

TEST_CASE("delta elements of high enough order annihilate the module") {
  RandomGen gen(76);
  VarietyKind v = VarietyKind::torus(1);
  for (const auto& W : module_zoo()) {
    unsigned s = W.annihilation_degree() + 1;
    for (int trial = 0; trial < 20; ++trial) {
      SmashElem delta = delta_element(gen.function(v, 2, 1),
                                      gen.function(v, 2, 2), s,
                                      gen.field(v, 2, 1));
      TensorModuleElem m = random_elem(gen, v, W, 2);
      REQUIRE(smash_action(delta, m, W).is_zero());
    }
  }
}

TEST_CASE("smash action respects the smash bracket") {
  RandomGen gen(77);
  VarietyKind v = VarietyKind::affine(1);
  for (const auto& W : module_zoo())
    for (int trial = 0; trial < 20; ++trial) {
      SmashElem a = gen.smash(v, 2, 1);
      SmashElem b = gen.smash(v, 2, 1);
      TensorModuleElem m = random_elem(gen, v, W, 2);
      TensorModuleElem lhs = smash_action(smash_bracket(a, b), m, W);
      TensorModuleElem rhs = smash_action(a, smash_action(b, m, W), W) -
                             smash_action(b, smash_action(a, m, W), W);
      REQUIRE(lhs == rhs);
    }
}
