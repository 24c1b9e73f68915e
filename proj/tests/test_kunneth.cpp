#include <catch2/catch_amalgamated.hpp>

#include "gfc/kunneth.hpp"
#include "gfc/random_gen.hpp"
#include "oracle.hpp"

using namespace gfc;

namespace {

/// Constant A-valued 0-cochain.
VCochain const_cochain(const VarietyKind& v, const FunctionElem& f) {
  TensorModuleElem m(v, 1);
  for (const auto& [k, c] : f.terms())
    m += TensorModuleElem::pure(FunctionElem::from_key(v, k, c), 0, 1);
  return {0, [m](const std::vector<VectorFieldElem>&) { return m; }};
}

}  // namespace

TEST_CASE("star map formula instances") {
  VarietyKind v = VarietyKind::affine(1);
  SdContext c{v, build_lplus(1, 4), LPlusModule::weight_module_1d(1)};
  FunctionElem x = FunctionElem::coordinate(v);

  SECTION("k=0, m=0: empty products") {
    VCochain alpha = const_cochain(v, x);
    GCochain beta;
    beta.degree = 0;
    beta.set({}, SparseVec::unit(0, 2));
    TensorModuleElem got = star(c, alpha, beta)({});
    REQUIRE(got == TensorModuleElem::pure(Rational(2) * x, 0, 1));
  }

  SECTION("k=1, m=0: value passes through") {
    RandomGen gen(41);
    VCochain alpha = gen.acochain(v, 1, 2);
    GCochain beta;
    beta.degree = 0;
    beta.set({}, SparseVec::unit(0, 3));
    VectorFieldElem eta = gen.field(v, 2, 1);
    TensorModuleElem got = star(c, alpha, beta)({SdElem::from_v(eta)});
    REQUIRE(got == Rational(3) * alpha({eta}));
  }

  SECTION("k=m=1: (alpha*beta)(v, f(x)e) = f alpha(v) (x) beta(e)") {
    RandomGen gen(42);
    VCochain alpha = gen.acochain(v, 1, 2);
    GCochain beta;
    beta.degree = 1;
    beta.set({0}, SparseVec::unit(0, 5));
    VectorFieldElem eta = gen.field(v, 2, 1);
    FunctionElem f = gen.function(v, 2, 2);
    TensorModuleElem got = star(c, alpha, beta)(
        {SdElem::from_v(eta), SdElem::from_ag(c, 0, f)});
    TensorModuleElem want(v, 1);
    FunctionElem afun = FunctionElem::zero(v);
    TensorModuleElem aval = alpha({eta});
    for (const auto& [k, cc] : aval.terms())
      afun += FunctionElem::from_key(v, k.first, cc);
    want += TensorModuleElem::pure(Rational(5) * multiply(f, afun), 0, 1);
    REQUIRE(got == want);
    // swapped order picks up the shuffle sign
    TensorModuleElem swapped = star(c, alpha, beta)(
        {SdElem::from_ag(c, 0, f), SdElem::from_v(eta)});
    REQUIRE(swapped == Rational(-1) * got);
  }

  SECTION("wrong V-argument count gives zero") {
    RandomGen gen(43);
    VCochain alpha = gen.acochain(v, 1, 2);
    GCochain beta;
    beta.degree = 1;
    beta.set({0}, SparseVec::unit(0, 1));
    // two V arguments, zero A(x)g arguments: k mismatch
    TensorModuleElem got = star(c, alpha, beta)(
        {SdElem::from_v(gen.field(v, 2, 1)), SdElem::from_v(gen.field(v, 2, 1))});
    REQUIRE(got.is_zero());
  }
}

TEST_CASE("star is bilinear in mixed arguments") {
  RandomGen gen(44);
  VarietyKind v = VarietyKind::torus(1);
  SdContext c{v, build_lplus(1, 4), LPlusModule::trivial(1)};
  VCochain alpha = gen.acochain(v, 1, 2);
  GCochain beta = gen.gcochain(c.g, c.W, 1);
  SdCochain s = star(c, alpha, beta);
  for (int trial = 0; trial < 20; ++trial) {
    SdElem a = gen.sdelem(c, 2);
    SdElem b = gen.sdelem(c, 2);
    SdElem sum = a;
    sum += b;
    SdElem other = gen.sdelem(c, 2);
    TensorModuleElem lhs = s({sum, other});
    TensorModuleElem rhs = s({a, other}) + s({b, other});
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("star-Leibniz identity on randomized samples") {
  RandomGen gen(45);
  for (const auto& v : {VarietyKind::affine(1), VarietyKind::torus(1)})
    for (const auto& W : {LPlusModule::trivial(1), LPlusModule::weight_module_1d(1),
                          LPlusModule::weight_module_1d(-1)}) {
      SdContext c{v, build_lplus(1, 4), W};
      for (int trial = 0; trial < 12; ++trial) {
        std::uniform_int_distribution<int> dk(0, 1), dm(1, 2);
        VCochain alpha = gen.acochain(v, dk(gen.engine()), 2);
        GCochain beta = gen.gcochain(c.g, c.W, dm(gen.engine()));
        std::vector<SdElem> args;
        for (int i = 0; i < alpha.degree + beta.degree + 1; ++i)
          args.push_back(gen.sdelem(c, 2));
        REQUIRE(verify_star_leibniz(c, alpha, beta, {args}));
      }
    }
}

TEST_CASE("cocycle star cocycle is a cocycle; coboundary star cocycle is a coboundary") {
  VarietyKind v = VarietyKind::affine(1);
  SdContext c{v, build_lplus(1, 4), LPlusModule::trivial(1)};
  RandomGen gen(46);
  // dalpha = 0 for the constant cochain, beta the e_0 dual is a cocycle
  VCochain alpha = const_cochain(v, FunctionElem::one(v));
  GCochain beta;
  beta.degree = 1;
  auto e0 = c.g.find({1}, 1);
  REQUIRE(e0);
  beta.set({*e0}, SparseVec::unit(0, 1));
  REQUIRE(ce_differential_g(c.g, c.W, beta).values.empty());
  SdCochain prod = star(c, alpha, beta);
  SdCochain dprod = ce_differential_sd(c, prod);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<SdElem> args{gen.sdelem(c, 2), gen.sdelem(c, 2)};
    REQUIRE(dprod(args).is_zero());
  }
  // alpha = d delta: then alpha * beta = d(delta * beta) on samples
  VCochain delta = gen.acochain(v, 0, 2);
  VCochain dd = ce_differential(delta, LPlusModule::trivial(1));
  SdCochain lhs = star(c, dd, beta);
  SdCochain rhs = ce_differential_sd(c, star(c, delta, beta));
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<SdElem> args{gen.sdelem(c, 2), gen.sdelem(c, 2)};
    REQUIRE(lhs(args) == rhs(args));
  }
}

TEST_CASE("assembled tables for affine and torus") {
  BettiTable aff = assemble_rhs(VarietyKind::affine(1), LPlusModule::trivial(1), 3);
  REQUIRE(aff.dims == std::vector<std::size_t>{1, 1, 0, 0});
  REQUIRE(aff.all_stabilized());
  BettiTable tor = assemble_rhs(VarietyKind::torus(1), LPlusModule::trivial(1), 3);
  REQUIRE(tor.dims == std::vector<std::size_t>{1, 2, 1, 0});
  REQUIRE(tor.all_stabilized());
}

TEST_CASE("Kunneth convolution is symmetric") {
  // convolving (1,1) with (1,1,0) either way round gives the same table
  std::vector<std::size_t> a{1, 1};
  std::vector<std::size_t> b{1, 1, 0};
  for (int k = 0; k <= 3; ++k) {
    std::size_t ab = 0, ba = 0;
    for (int i = 0; i <= k; ++i) {
      if (i < static_cast<int>(a.size()) && k - i < static_cast<int>(b.size()))
        ab += a[i] * b[k - i];
      if (i < static_cast<int>(b.size()) && k - i < static_cast<int>(a.size()))
        ba += b[i] * a[k - i];
    }
    REQUIRE(ab == ba);
  }
}

TEST_CASE("punctured sphere assembly matches the closed form") {
  for (const auto& W : {LPlusModule::trivial(1), LPlusModule::weight_module_1d(1)}) {
    BettiTable lt = lplus_betti_table(1, W, 4, 8);
    for (int m = 1; m <= 3; ++m) {
      std::vector<Rational> as;
      for (int i = 0; i < m; ++i) as.push_back(i);
      BettiTable rhs =
          assemble_rhs(VarietyKind::punctured_sphere(as), W, 4);
      REQUIRE(rhs.all_stabilized());
      for (int k = 0; k <= 4; ++k) {
        std::size_t want = lt.dims[k];
        if (k >= 1) want += static_cast<std::size_t>(m) * lt.dims[k - 1];
        REQUIRE(rhs.dims[k] == want);
      }
    }
  }
}

TEST_CASE("main theorem comparison: direct equals assembled") {
  struct Case {
    VarietyKind v;
    LPlusModule W;
    std::vector<std::size_t> expect;
  };
  std::vector<Case> cases = {
      {VarietyKind::affine(1), LPlusModule::trivial(1), {1, 1, 0}},
      {VarietyKind::affine(1), LPlusModule::weight_module_1d(1), {0, 1, 1}},
      {VarietyKind::affine(1), LPlusModule::weight_module_1d(-1), {0, 0, 0}},
      {VarietyKind::torus(1), LPlusModule::trivial(1), {1, 2, 1}},
  };
  for (const auto& cs : cases) {
    MainComparison r = compare_main_theorem(cs.v, cs.W, 2, 6);
    INFO(r.variety << " " << r.module);
    REQUIRE(r.direct_side);
    REQUIRE(r.all_equal);
    REQUIRE(r.all_stabilized);
    REQUIRE(r.direct_dims == cs.expect);
    REQUIRE(r.rhs.dims == cs.expect);
  }
}

TEST_CASE("RHS-only mode for the punctured sphere") {
  MainComparison r = compare_main_theorem(VarietyKind::punctured_sphere({0, 1}),
                                          LPlusModule::trivial(1), 2, 6);
  REQUIRE_FALSE(r.direct_side);
  REQUIRE(r.rhs.dims == std::vector<std::size_t>{1, 3, 2});
  REQUIRE(r.all_stabilized);
}
