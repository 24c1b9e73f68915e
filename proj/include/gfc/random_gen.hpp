#ifndef GFC_RANDOM_GEN_HPP
#define GFC_RANDOM_GEN_HPP

#include <random>
#include <vector>

#include "gfc/derham.hpp"
#include "gfc/kunneth.hpp"
#include "gfc/modules.hpp"
#include "gfc/varieties.hpp"
#include "gfc/vectorfields.hpp"

namespace gfc {

/// Deterministic generators of random algebra elements for property checks.
/// All draws are exact small rationals over truncation-window monomials.
class RandomGen {
 public:
  explicit RandomGen(std::uint64_t seed) : rng_(seed) {}

  std::mt19937_64& engine() { return rng_; }

  Rational coeff() {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    return Rational(num(rng_), den(rng_));
  }

  FKey key(const VarietyKind& v, int max_ord) {
    std::uniform_int_distribution<int> d(0, max_ord);
    switch (v.family) {
      case VarietyFamily::Affine: {
        std::vector<int> e(v.n);
        for (int& x : e) x = d(rng_);
        return FKey::monomial(std::move(e));
      }
      case VarietyFamily::Torus: {
        std::uniform_int_distribution<int> ds(-max_ord, max_ord);
        std::vector<int> e(v.n);
        for (int& x : e) x = ds(rng_);
        return FKey::monomial(std::move(e));
      }
      case VarietyFamily::PuncturedSphere: {
        std::uniform_int_distribution<int> pick(
            0, static_cast<int>(v.punctures.size()));
        int p = pick(rng_);
        if (p == 0) return FKey::zpow(d(rng_));
        std::uniform_int_distribution<int> m(1, max_ord > 0 ? max_ord : 1);
        return FKey::polepow(p, m(rng_));
      }
    }
    return FKey::zpow(0);
  }

  FunctionElem function(const VarietyKind& v, int max_ord, int terms = 2) {
    FunctionElem f = FunctionElem::zero(v);
    for (int i = 0; i < terms; ++i)
      f += FunctionElem::from_key(v, key(v, max_ord), coeff());
    return f;
  }

  VectorFieldElem field(const VarietyKind& v, int max_ord, int terms = 2) {
    VectorFieldElem e(v);
    std::uniform_int_distribution<int> dir(1, v.n);
    for (int i = 0; i < terms; ++i) {
      int d = dir(rng_);
      VectorFieldElem t =
          VectorFieldElem::along(function(v, max_ord, 1), d);
      e += t;
    }
    return e;
  }

  SmashElem smash(const VarietyKind& v, int max_ord, int terms = 2) {
    SmashElem s(v);
    for (int i = 0; i < terms; ++i)
      s.add(function(v, max_ord, 1), field(v, max_ord, 1));
    return s;
  }

  FormElem form(const VarietyKind& v, int degree, int max_ord, int terms = 2) {
    FormElem w(v, degree);
    std::uniform_int_distribution<int> dir(1, v.n);
    for (int t = 0; t < terms; ++t) {
      std::vector<int> dirs(degree);
      for (int& d : dirs) d = dir(rng_);
      w.add(dirs, function(v, max_ord, 1));
    }
    return w;
  }

  SparseVec wvec(std::size_t dim) {
    SparseVec v;
    for (std::size_t i = 0; i < dim; ++i) {
      Rational c = coeff();
      if (c != 0) v.add(i, c);
    }
    return v;
  }

  /// Alternating multilinear cochain on a truncated algebra with random
  /// values on a handful of basis tuples.
  GCochain gcochain(const LPlusAlgebra& g, const LPlusModule& W, int degree,
                    int tuples = 3) {
    GCochain b;
    b.degree = degree;
    if (static_cast<std::size_t>(degree) > g.dim()) return b;
    std::uniform_int_distribution<std::size_t> pick(0, g.dim() - 1);
    for (int t = 0; t < tuples; ++t) {
      std::vector<std::size_t> idx;
      while (idx.size() < static_cast<std::size_t>(degree)) {
        std::size_t i = pick(rng_);
        bool dup = false;
        for (std::size_t j : idx) dup = dup || j == i;
        if (!dup) idx.push_back(i);
      }
      SparseVec v = wvec(W.dim());
      if (!v.empty()) b.set(idx, std::move(v));
    }
    return b;
  }

  /// A-valued cochain on V determined by values on coordinate derivations,
  /// extended A-linearly (hence honestly A-multilinear).
  VCochain acochain(const VarietyKind& v, int degree, int max_ord) {
    std::vector<FunctionElem> table;
    // value on each strictly increasing tuple of the n coordinate derivations
    std::vector<std::vector<int>> tuples;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(cur.size()) == degree) {
        tuples.push_back(cur);
        return;
      }
      for (int i = start; i <= v.n; ++i) {
        cur.push_back(i);
        rec(i + 1);
        cur.pop_back();
      }
    };
    rec(1);
    for (std::size_t i = 0; i < tuples.size(); ++i)
      table.push_back(function(v, max_ord, 2));
    auto eval = [v, degree, tuples, table](
                    const std::vector<VectorFieldElem>& args) {
      FunctionElem total = FunctionElem::zero(v);
      // expand det-style over tuples: alpha(f_1 d_{i_1},..) multilinear
      for (std::size_t t = 0; t < tuples.size(); ++t) {
        const std::vector<int>& dirs = tuples[t];
        std::vector<int> perm(degree);
        for (int i = 0; i < degree; ++i) perm[i] = i;
        FunctionElem det = FunctionElem::zero(v);
        do {
          int sign = 1;
          for (int a = 0; a < degree; ++a)
            for (int b = a + 1; b < degree; ++b)
              if (perm[a] > perm[b]) sign = -sign;
          FunctionElem prod = FunctionElem::one(v);
          for (int i = 0; i < degree; ++i)
            prod = multiply(prod, args[perm[i]].component(dirs[i]));
          if (sign < 0) prod *= -1;
          det += prod;
        } while (std::next_permutation(perm.begin(), perm.end()));
        total += multiply(table[t], det);
      }
      TensorModuleElem out(v, 1);
      for (const auto& [kk, cc] : total.terms())
        out += TensorModuleElem::pure(FunctionElem::from_key(v, kk, cc), 0, 1);
      return out;
    };
    return {degree, eval};
  }

  SdElem sdelem(const SdContext& c, int max_ord) {
    SdElem e = SdElem::zero(c);
    e.v = field(c.variety, max_ord, 1);
    std::uniform_int_distribution<std::size_t> pick(0, c.g.dim() - 1);
    e.add_ag(pick(rng_), function(c.variety, max_ord, 1));
    return e;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace gfc

#endif
