#ifndef GFC_COCHAINS_HPP
#define GFC_COCHAINS_HPP

#include <functional>
#include <stdexcept>
#include <vector>

#include "gfc/modules.hpp"
#include "gfc/varieties.hpp"
#include "gfc/vectorfields.hpp"

namespace gfc {

/// Multilinear alternating k-cochain on V with values in A ⊗ W, given by an
/// evaluator. Used by the sampling-based identities (GF condition, lift and
/// restriction, the de Rham comparison); the matrix machinery for actual
/// cohomology lives in slices.hpp.
struct VCochain {
  int degree = 0;
  std::function<TensorModuleElem(const std::vector<VectorFieldElem>&)> eval;

  TensorModuleElem operator()(const std::vector<VectorFieldElem>& args) const {
    if (static_cast<int>(args.size()) != degree)
      throw std::invalid_argument("cochain arity mismatch");
    return eval(args);
  }
};

/// Chevalley-Eilenberg differential with the sign convention
///   (d phi)(e_1..e_{k+1}) = sum_{s<t} (-1)^{s+t-1} phi([e_s,e_t], ...)
///                         + sum_s (-1)^s e_s . phi(...)
/// (both signs opposite to the more common convention; d.d = 0 regardless,
/// and the k = 0 case reads (d phi)(eta) = -eta . phi).
inline VCochain ce_differential(const VCochain& phi, const LPlusModule& W) {
  int k = phi.degree;
  auto eval = [phi, k, W](const std::vector<VectorFieldElem>& args) {
    TensorModuleElem out;
    bool init = false;
    auto accumulate = [&](TensorModuleElem v, const Rational& c) {
      v *= c;
      if (!init) {
        out = std::move(v);
        init = true;
      } else {
        out += v;
      }
    };
    for (int s = 1; s <= k + 1; ++s) {
      std::vector<VectorFieldElem> rest;
      for (int i = 1; i <= k + 1; ++i)
        if (i != s) rest.push_back(args[i - 1]);
      TensorModuleElem inner = phi(rest);
      accumulate(tensor_action(args[s - 1], inner, W), s % 2 == 0 ? 1 : -1);
    }
    for (int s = 1; s <= k + 1; ++s)
      for (int t = s + 1; t <= k + 1; ++t) {
        std::vector<VectorFieldElem> rest;
        rest.push_back(bracket_fields(args[s - 1], args[t - 1]));
        for (int i = 1; i <= k + 1; ++i)
          if (i != s && i != t) rest.push_back(args[i - 1]);
        accumulate(phi(rest), (s + t - 1) % 2 == 0 ? 1 : -1);
      }
    return out;
  };
  return {k + 1, eval};
}

/// Gelfand-Fuks order condition at order p on a sample (f, eta_1..eta_k):
///   sum_{i=0}^p (-1)^i binom(p,i) f^{p-i} phi(f^i eta_1, eta_2, ..) = 0
inline TensorModuleElem gf_defect(const VCochain& phi, unsigned p,
                                  const FunctionElem& f,
                                  const std::vector<VectorFieldElem>& etas) {
  const VarietyKind& v = f.variety();
  std::vector<FunctionElem> fpow{FunctionElem::one(v)};
  for (unsigned i = 1; i <= p; ++i) fpow.push_back(multiply(fpow.back(), f));
  TensorModuleElem out;
  bool init = false;
  for (unsigned i = 0; i <= p; ++i) {
    std::vector<VectorFieldElem> args = etas;
    args[0] = fpow[i] * args[0];
    TensorModuleElem val = phi(args);
    Rational c = Rational(binomial(p, i)) * (i % 2 == 0 ? 1 : -1);
    val = fpow[p - i] * val;
    val *= c;
    if (!init) {
      out = std::move(val);
      init = true;
    } else {
      out += val;
    }
  }
  return out;
}

struct GfSample {
  FunctionElem f;
  std::vector<VectorFieldElem> etas;
};

inline bool gf_condition_check(const VCochain& phi, unsigned p,
                               const std::vector<GfSample>& samples) {
  for (const auto& s : samples)
    if (!gf_defect(phi, p, s.f, s.etas).is_zero()) return false;
  return true;
}

/// A-multilinear alternating cochain on A # V, evaluated on smash elements
/// by expanding each argument over its monomial terms.
struct SmashCochain {
  int degree = 0;
  std::function<TensorModuleElem(const std::vector<SmashElem>&)> eval;

  TensorModuleElem operator()(const std::vector<SmashElem>& args) const {
    if (static_cast<int>(args.size()) != degree)
      throw std::invalid_argument("cochain arity mismatch");
    return eval(args);
  }
};

/// Lift: phi~(f_1 # eta_1, .., f_k # eta_k) = f_1..f_k phi(eta_1..eta_k).
inline SmashCochain lift(const VCochain& phi) {
  int k = phi.degree;
  auto eval = [phi, k](const std::vector<SmashElem>& args) {
    TensorModuleElem out;
    bool init = false;
    // expand multilinearly over the normal-form terms of every argument
    std::vector<VectorFieldElem> etas(k);
    std::function<void(int, const FunctionElem&)> rec =
        [&](int pos, const FunctionElem& coeff) {
          if (pos == k) {
            TensorModuleElem val = coeff * phi(etas);
            if (!init) {
              out = std::move(val);
              init = true;
            } else {
              out += val;
            }
            return;
          }
          const VarietyKind& v = args[pos].variety();
          for (const auto& [key, eta] : args[pos].terms()) {
            etas[pos] = eta;
            rec(pos + 1, multiply(coeff, FunctionElem::from_key(v, key)));
          }
        };
    if (k == 0) {
      return phi({});
    }
    rec(0, FunctionElem::one(args[0].variety()));
    if (!init) {
      // all arguments empty
      return TensorModuleElem(args[0].variety(), 0);
    }
    return out;
  };
  return {k, eval};
}

/// Restriction to 1 # V.
inline VCochain restrict_cochain(const SmashCochain& psi) {
  int k = psi.degree;
  auto eval = [psi, k](const std::vector<VectorFieldElem>& args) {
    std::vector<SmashElem> smashed;
    smashed.reserve(args.size());
    for (const auto& eta : args)
      smashed.push_back(SmashElem::smash(FunctionElem::one(eta.variety()), eta));
    return psi(smashed);
  };
  return {k, eval};
}

/// CE differential on A # V cochains, module action (f # eta) m = f (eta m).
inline SmashCochain ce_differential_smash(const SmashCochain& phi,
                                          const LPlusModule& W) {
  int k = phi.degree;
  auto eval = [phi, k, W](const std::vector<SmashElem>& args) {
    TensorModuleElem out;
    bool init = false;
    auto accumulate = [&](TensorModuleElem v, const Rational& c) {
      v *= c;
      if (!init) {
        out = std::move(v);
        init = true;
      } else {
        out += v;
      }
    };
    for (int s = 1; s <= k + 1; ++s) {
      std::vector<SmashElem> rest;
      for (int i = 1; i <= k + 1; ++i)
        if (i != s) rest.push_back(args[i - 1]);
      accumulate(smash_action(args[s - 1], phi(rest), W),
                 s % 2 == 0 ? 1 : -1);
    }
    for (int s = 1; s <= k + 1; ++s)
      for (int t = s + 1; t <= k + 1; ++t) {
        std::vector<SmashElem> rest;
        rest.push_back(smash_bracket(args[s - 1], args[t - 1]));
        for (int i = 1; i <= k + 1; ++i)
          if (i != s && i != t) rest.push_back(args[i - 1]);
        accumulate(phi(rest), (s + t - 1) % 2 == 0 ? 1 : -1);
      }
    return out;
  };
  return {k + 1, eval};
}

}  // namespace gfc

#endif
