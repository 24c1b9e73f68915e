#ifndef GFC_MODULES_HPP
#define GFC_MODULES_HPP

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfc/graded_lie.hpp"
#include "gfc/rational.hpp"
#include "gfc/sparse.hpp"
#include "gfc/varieties.hpp"
#include "gfc/vectorfields.hpp"

namespace gfc {

/// Finite-dimensional L+-module W. Generators of weight >= annihilation
/// degree act by zero; in scope these are gl_n-weight modules, so only the
/// degree-0 (gl_n) generators may act nontrivially.
class LPlusModule {
 public:
  LPlusModule() = default;

  /// actions: map from (exponent, direction) of a weight-0 generator to the
  /// action matrix in column convention: action[g][j] = g . w_j as SparseVec.
  LPlusModule(int n, std::string name, std::vector<Rational> weights,
              std::map<std::pair<std::vector<int>, int>, std::vector<SparseVec>>
                  actions)
      : n_(n),
        name_(std::move(name)),
        weights_(std::move(weights)),
        actions_(std::move(actions)) {
    annihilation_degree_ = 0;
    for (const auto& [gen, cols] : actions_) {
      if (cols.size() != weights_.size())
        throw std::invalid_argument("action matrix dimension mismatch");
      bool nonzero = false;
      for (const auto& c : cols) nonzero = nonzero || !c.empty();
      int w = 0;
      for (int e : gen.first) w += e;
      w -= 1;
      if (w != 0)
        throw std::invalid_argument(
            "only gl_n (weight-0) generators may carry explicit actions");
      if (nonzero) annihilation_degree_ = 1;
    }
    validate_bracket_compatibility();
    validate_weight_compatibility();
  }

  static LPlusModule trivial(int n) {
    return LPlusModule(n, "trivial", {Rational(0)}, {});
  }

  /// One-dimensional gl_1-weight module F_lambda (n = 1): X d/dX acts by
  /// lambda, all higher generators act by zero.
  static LPlusModule weight_module_1d(const Rational& lambda) {
    std::map<std::pair<std::vector<int>, int>, std::vector<SparseVec>> act;
    if (lambda != 0) act[{{1}, 1}] = {SparseVec::unit(0, lambda)};
    std::ostringstream nm;
    nm << "F_" << lambda;
    return LPlusModule(1, nm.str(), {lambda}, std::move(act));
  }

  /// Defining n-dimensional gl_n module: (X_j d/dX_i) . w_k = delta_ik w_j.
  static LPlusModule standard_gln(int n) {
    std::map<std::pair<std::vector<int>, int>, std::vector<SparseVec>> act;
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        std::vector<int> e(n, 0);
        e[j - 1] = 1;
        std::vector<SparseVec> cols(n);
        cols[i - 1] = SparseVec::unit(j - 1);
        act[{e, i}] = std::move(cols);
      }
    return LPlusModule(n, "gl" + std::to_string(n) + "_standard",
                       std::vector<Rational>(n, Rational(1)), std::move(act));
  }

  int n() const { return n_; }
  const std::string& name() const { return name_; }
  std::size_t dim() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(std::size_t i) const { return weights_.at(i); }
  int annihilation_degree() const { return annihilation_degree_; }

  /// g . w_j; zero for generators of weight >= annihilation degree.
  SparseVec act(const LPlusGenerator& g, std::size_t j) const {
    if (g.weight() >= annihilation_degree_) return {};
    auto it = actions_.find({g.exponent, g.direction});
    if (it == actions_.end()) return {};
    return it->second.at(j);
  }

  SparseVec act(const LPlusGenerator& g, const SparseVec& w) const {
    SparseVec out;
    for (const auto& [j, c] : w.entries()) out.axpy(c, act(g, j));
    return out;
  }

 private:
  void validate_bracket_compatibility() const {
    // x.(y.w) - y.(x.w) = [x,y].w for weight-0 generators; [x,y] stays in
    // weight 0, so the check closes within the supplied matrices.
    std::vector<LPlusGenerator> gens;
    for (const auto& [k, cols] : actions_) gens.push_back({k.first, k.second});
    LPlusAlgebra gl = build_lplus(n_, 0);
    for (const auto& x : gens)
      for (const auto& y : gens) {
        auto xi = gl.find(x.exponent, x.direction);
        auto yi = gl.find(y.exponent, y.direction);
        SparseVec comm = gl.lie.bracket(*xi, *yi);
        for (std::size_t j = 0; j < dim(); ++j) {
          SparseVec lhs = act(x, act(y, SparseVec::unit(j)));
          lhs.axpy(-1, act(y, act(x, SparseVec::unit(j))));
          SparseVec rhs;
          for (const auto& [g, c] : comm.entries())
            rhs.axpy(c, act(gl.generators[g], SparseVec::unit(j)));
          lhs.axpy(-1, rhs);
          if (!lhs.empty())
            throw std::invalid_argument(
                "module action fails bracket compatibility");
        }
      }
  }

  void validate_weight_compatibility() const {
    // The Euler element acts semisimply with the declared weights.
    for (std::size_t j = 0; j < dim(); ++j) {
      SparseVec ew;
      for (int i = 1; i <= n_; ++i) {
        std::vector<int> e(n_, 0);
        e[i - 1] = 1;
        ew.axpy(1, act(LPlusGenerator{e, i}, SparseVec::unit(j)));
      }
      SparseVec expect = SparseVec::unit(j, weights_[j]);
      expect.axpy(-1, ew);
      if (!expect.empty())
        throw std::invalid_argument(
            "Euler element does not act by the declared weights");
    }
  }

  int n_ = 1;
  std::string name_;
  std::vector<Rational> weights_;
  std::map<std::pair<std::vector<int>, int>, std::vector<SparseVec>> actions_;
  int annihilation_degree_ = 0;
};

/// Element of the tensor module A ⊗ W in normal form over the A-basis.
class TensorModuleElem {
 public:
  TensorModuleElem() = default;
  TensorModuleElem(const VarietyKind& v, std::size_t wdim)
      : variety_(v), wdim_(wdim) {}

  static TensorModuleElem pure(const FunctionElem& s, std::size_t widx,
                               std::size_t wdim) {
    TensorModuleElem m(s.variety(), wdim);
    for (const auto& [k, c] : s.terms()) m.add(k, widx, c);
    return m;
  }

  const VarietyKind& variety() const { return variety_; }
  std::size_t wdim() const { return wdim_; }
  const std::map<std::pair<FKey, std::size_t>, Rational>& terms() const {
    return terms_;
  }
  bool is_zero() const { return terms_.empty(); }

  void add(const FKey& k, std::size_t widx, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(std::pair(k, widx), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  void add(const FunctionElem& s, std::size_t widx, const Rational& c = 1) {
    for (const auto& [k, v] : s.terms()) add(k, widx, c * v);
  }

  void add(const FunctionElem& s, const SparseVec& w, const Rational& c = 1) {
    for (const auto& [j, cw] : w.entries()) add(s, j, c * cw);
  }

  TensorModuleElem& operator+=(const TensorModuleElem& o) {
    if (o.is_zero() && o.wdim_ == 0) return *this;
    if (is_zero() && wdim_ == 0) {
      variety_ = o.variety_;
      wdim_ = o.wdim_;
    }
    require_compatible(o);
    for (const auto& [kw, c] : o.terms_) add(kw.first, kw.second, c);
    return *this;
  }
  TensorModuleElem& operator-=(const TensorModuleElem& o) {
    if (o.is_zero() && o.wdim_ == 0) return *this;
    if (is_zero() && wdim_ == 0) {
      variety_ = o.variety_;
      wdim_ = o.wdim_;
    }
    require_compatible(o);
    for (const auto& [kw, c] : o.terms_) add(kw.first, kw.second, -c);
    return *this;
  }
  TensorModuleElem& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [kw, v] : terms_) v *= c;
    return *this;
  }
  friend TensorModuleElem operator+(TensorModuleElem a, const TensorModuleElem& b) {
    a += b;
    return a;
  }
  friend TensorModuleElem operator-(TensorModuleElem a, const TensorModuleElem& b) {
    a -= b;
    return a;
  }
  friend TensorModuleElem operator*(const Rational& c, TensorModuleElem a) {
    a *= c;
    return a;
  }

  /// A-module structure: multiply the left factor.
  friend TensorModuleElem operator*(const FunctionElem& f,
                                    const TensorModuleElem& m) {
    TensorModuleElem out(m.variety_, m.wdim_);
    for (const auto& [kw, c] : m.terms_) {
      FunctionElem prod = multiply(f, FunctionElem::from_key(m.variety_, kw.first));
      out.add(prod, kw.second, c);
    }
    return out;
  }

  bool operator==(const TensorModuleElem& o) const {
    return variety_ == o.variety_ && terms_ == o.terms_;
  }
  bool operator!=(const TensorModuleElem& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [kw, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")"
         << FunctionElem::from_key(variety_, kw.first).str() << "(x)w"
         << kw.second;
    }
    return os.str();
  }

 private:
  void require_compatible(const TensorModuleElem& o) const {
    if (variety_ != o.variety_ || wdim_ != o.wdim_)
      throw std::invalid_argument("tensor module mismatch");
  }

  VarietyKind variety_;
  std::size_t wdim_ = 0;
  std::map<std::pair<FKey, std::size_t>, Rational> terms_;
};

/// Jet-corrected action of f d/dx_i on A ⊗ W:
///   f d_i (s ⊗ w) = (f d_i s) ⊗ w + sum_{k != 0} (1/k!) (d^k f) s ⊗ (X^k d_i) w
/// The sum is exact: terms with |k| > annihilation degree vanish.
inline TensorModuleElem tensor_action(const FunctionElem& f, int direction,
                                      const TensorModuleElem& m,
                                      const LPlusModule& W) {
  const VarietyKind& v = f.variety();
  if (m.variety() != v) throw std::invalid_argument("variety mismatch");
  if (direction < 1 || direction > v.n)
    throw std::invalid_argument("tensor_action: bad direction");
  TensorModuleElem out(v, W.dim());
  // first term
  for (const auto& [kw, c] : m.terms()) {
    FunctionElem ds = derive(FunctionElem::from_key(v, kw.first), direction);
    if (ds.is_zero()) continue;
    FunctionElem fds = multiply(f, ds);
    out.add(fds, kw.second, c);
  }
  // jet corrections, |k| in [1, annihilation_degree]
  std::vector<std::vector<int>> ks;
  detail::enumerate_exponents_total(v.n, 1, W.annihilation_degree(), ks);
  for (const auto& k : ks) {
    FunctionElem dkf = f;
    Rational fact = 1;
    for (int i = 0; i < v.n && !dkf.is_zero(); ++i)
      for (int r = 0; r < k[i]; ++r) {
        dkf = derive(dkf, i + 1);
        fact *= r + 1;
      }
    if (dkf.is_zero()) continue;
    LPlusGenerator g{k, direction};
    for (const auto& [kw, c] : m.terms()) {
      SparseVec gw = W.act(g, kw.second);
      if (gw.empty()) continue;
      FunctionElem s = multiply(dkf, FunctionElem::from_key(v, kw.first));
      s *= c / fact;
      out.add(s, gw);
    }
  }
  return out;
}

/// General vector field acting on A ⊗ W.
inline TensorModuleElem tensor_action(const VectorFieldElem& eta,
                                      const TensorModuleElem& m,
                                      const LPlusModule& W) {
  TensorModuleElem out(m.variety(), W.dim());
  for (int i = 1; i <= m.variety().n; ++i) {
    if (eta.component(i).is_zero()) continue;
    out += tensor_action(eta.component(i), i, m, W);
  }
  return out;
}

/// Smash-product element acting on A ⊗ W: (f # eta) m = f (eta m).
inline TensorModuleElem smash_action(const SmashElem& u,
                                     const TensorModuleElem& m,
                                     const LPlusModule& W) {
  TensorModuleElem out(m.variety(), W.dim());
  for (const auto& [k, eta] : u.terms()) {
    TensorModuleElem em = tensor_action(eta, m, W);
    out += FunctionElem::from_key(m.variety(), k) * em;
  }
  return out;
}

struct DifferentiabilitySample {
  FunctionElem f;
  VectorFieldElem eta;
  TensorModuleElem m;
};

struct DifferentiabilityReport {
  unsigned order = 0;
  bool holds = false;  // all samples annihilated at `order`
  std::optional<DifferentiabilitySample> witness;  // failure at order-1 (minimality)
  bool cross_check_ok = false;  // delta-element evaluation agreed everywhere
};

/// The order-N annihilation sum of Definition of differentiability:
///   sum_{j=0}^N (-1)^j binom(N,j) f^{N-j} ((f^j eta) m)
inline TensorModuleElem differentiability_defect(const FunctionElem& f,
                                                 const VectorFieldElem& eta,
                                                 const TensorModuleElem& m,
                                                 const LPlusModule& W,
                                                 unsigned N) {
  const VarietyKind& v = f.variety();
  TensorModuleElem out(v, W.dim());
  std::vector<FunctionElem> fpow{FunctionElem::one(v)};
  for (unsigned i = 1; i <= N; ++i) fpow.push_back(multiply(fpow.back(), f));
  for (unsigned j = 0; j <= N; ++j) {
    Rational c = Rational(binomial(N, j)) * (j % 2 == 0 ? 1 : -1);
    TensorModuleElem t = tensor_action(fpow[j] * eta, m, W);
    out += c * (fpow[N - j] * t);
  }
  return out;
}

/// Evaluates the annihilation identity at candidate_order on every sample and
/// cross-evaluates through the Delta^s spanning elements acting via the smash
/// product. Reports the first failure, plus a minimality witness at order-1.
inline DifferentiabilityReport check_differentiability(
    const LPlusModule& W, const VarietyKind& variety, unsigned candidate_order,
    const std::vector<DifferentiabilitySample>& samples) {
  if (samples.empty())
    throw std::invalid_argument("check_differentiability: no samples");
  DifferentiabilityReport rep;
  rep.order = candidate_order;
  rep.holds = true;
  rep.cross_check_ok = true;
  for (const auto& s : samples) {
    TensorModuleElem defect =
        differentiability_defect(s.f, s.eta, s.m, W, candidate_order);
    if (candidate_order >= 1) {
      SmashElem delta = delta_element(FunctionElem::one(variety), s.f,
                                      candidate_order, s.eta);
      TensorModuleElem via_delta = smash_action(delta, s.m, W);
      if (via_delta != defect) rep.cross_check_ok = false;
    }
    if (!defect.is_zero()) {
      rep.holds = false;
      rep.witness = s;
      return rep;
    }
  }
  if (candidate_order >= 1) {
    for (const auto& s : samples) {
      TensorModuleElem defect =
          differentiability_defect(s.f, s.eta, s.m, W, candidate_order - 1);
      if (!defect.is_zero()) {
        rep.witness = s;  // order is minimal on this family
        break;
      }
    }
  }
  return rep;
}

}  // namespace gfc

#endif
