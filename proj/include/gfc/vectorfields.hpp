#ifndef GFC_VECTORFIELDS_HPP
#define GFC_VECTORFIELDS_HPP

#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gfc/varieties.hpp"

namespace gfc {

/// Polynomial vector field sum_i f_i d/dx_i on a fixed variety.
class VectorFieldElem {
 public:
  VectorFieldElem() = default;
  explicit VectorFieldElem(const VarietyKind& v)
      : variety_(v), comps_(v.n, FunctionElem::zero(v)) {}

  static VectorFieldElem zero(const VarietyKind& v) { return VectorFieldElem(v); }

  /// f * d/dx_dir (1-based)
  static VectorFieldElem along(const FunctionElem& f, int dir) {
    VectorFieldElem e(f.variety());
    e.set_component(dir, f);
    return e;
  }

  static VectorFieldElem coordinate_derivation(const VarietyKind& v, int dir) {
    return along(FunctionElem::one(v), dir);
  }

  const VarietyKind& variety() const { return variety_; }
  const FunctionElem& component(int dir) const { return comps_.at(dir - 1); }
  const std::vector<FunctionElem>& components() const { return comps_; }

  void set_component(int dir, const FunctionElem& f) {
    if (f.variety() != variety_) throw std::invalid_argument("variety mismatch");
    comps_.at(dir - 1) = f;
  }

  bool is_zero() const {
    for (const auto& c : comps_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Derivation action eta(f) = sum_i f_i d f / d x_i.
  FunctionElem apply(const FunctionElem& f) const {
    if (f.variety() != variety_) throw std::invalid_argument("variety mismatch");
    FunctionElem out = FunctionElem::zero(variety_);
    for (int i = 1; i <= variety_.n; ++i) {
      if (comps_[i - 1].is_zero()) continue;
      out += multiply(comps_[i - 1], derive(f, i));
    }
    return out;
  }

  VectorFieldElem& operator+=(const VectorFieldElem& o) {
    require_same(o);
    for (int i = 0; i < variety_.n; ++i) comps_[i] += o.comps_[i];
    return *this;
  }
  VectorFieldElem& operator-=(const VectorFieldElem& o) {
    require_same(o);
    for (int i = 0; i < variety_.n; ++i) comps_[i] -= o.comps_[i];
    return *this;
  }
  VectorFieldElem& operator*=(const Rational& c) {
    for (auto& f : comps_) f *= c;
    return *this;
  }
  friend VectorFieldElem operator+(VectorFieldElem a, const VectorFieldElem& b) {
    a += b;
    return a;
  }
  friend VectorFieldElem operator-(VectorFieldElem a, const VectorFieldElem& b) {
    a -= b;
    return a;
  }
  friend VectorFieldElem operator*(const Rational& c, VectorFieldElem a) {
    a *= c;
    return a;
  }

  /// f * eta (A-module structure of V)
  friend VectorFieldElem operator*(const FunctionElem& f, const VectorFieldElem& a) {
    VectorFieldElem out(a.variety_);
    for (int i = 1; i <= a.variety_.n; ++i)
      out.set_component(i, multiply(f, a.component(i)));
    return out;
  }

  bool operator==(const VectorFieldElem& o) const {
    return variety_ == o.variety_ && comps_ == o.comps_;
  }
  bool operator!=(const VectorFieldElem& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 1; i <= variety_.n; ++i) {
      if (comps_[i - 1].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "[" << comps_[i - 1].str() << "] d" << i;
    }
    return first ? "0" : os.str();
  }

 private:
  void require_same(const VectorFieldElem& o) const {
    if (variety_ != o.variety_) throw std::invalid_argument("variety mismatch");
  }

  VarietyKind variety_;
  std::vector<FunctionElem> comps_;
};

/// [sum f_i d_i, sum g_j d_j] = sum_j ( sum_i f_i d_i(g_j) - g_i d_i(f_j) ) d_j
inline VectorFieldElem bracket_fields(const VectorFieldElem& a,
                                      const VectorFieldElem& b) {
  if (a.variety() != b.variety())
    throw std::invalid_argument("variety mismatch in bracket");
  const VarietyKind& v = a.variety();
  VectorFieldElem out(v);
  for (int j = 1; j <= v.n; ++j) {
    FunctionElem cj = a.apply(b.component(j)) - b.apply(a.component(j));
    out.set_component(j, cj);
  }
  return out;
}

/// Element of the Lie algebra A # V of polynomial jets of vector fields, in
/// bilinear normal form: left factors are algebra basis monomials.
class SmashElem {
 public:
  SmashElem() = default;
  explicit SmashElem(const VarietyKind& v) : variety_(v) {}

  static SmashElem zero(const VarietyKind& v) { return SmashElem(v); }

  static SmashElem smash(const FunctionElem& f, const VectorFieldElem& eta) {
    SmashElem e(f.variety());
    e.add(f, eta);
    return e;
  }

  const VarietyKind& variety() const { return variety_; }
  const std::map<FKey, VectorFieldElem>& terms() const { return terms_; }

  bool is_zero() const {
    for (const auto& [k, eta] : terms_)
      if (!eta.is_zero()) return false;
    return true;
  }

  /// Adds f # eta, distributing f over its monomials.
  void add(const FunctionElem& f, const VectorFieldElem& eta) {
    if (f.variety() != variety_ || eta.variety() != variety_)
      throw std::invalid_argument("variety mismatch in smash term");
    for (const auto& [k, c] : f.terms()) {
      VectorFieldElem scaled = eta;
      scaled *= c;
      auto [it, inserted] = terms_.emplace(k, scaled);
      if (!inserted) {
        it->second += scaled;
        if (it->second.is_zero()) terms_.erase(it);
      } else if (it->second.is_zero()) {
        terms_.erase(it);
      }
    }
  }

  SmashElem& operator+=(const SmashElem& o) {
    for (const auto& [k, eta] : o.terms_)
      add(FunctionElem::from_key(variety_, k), eta);
    return *this;
  }
  SmashElem& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, eta] : terms_) eta *= c;
    return *this;
  }
  friend SmashElem operator+(SmashElem a, const SmashElem& b) {
    a += b;
    return a;
  }
  friend SmashElem operator*(const Rational& c, SmashElem a) {
    a *= c;
    return a;
  }

  bool operator==(const SmashElem& o) const {
    return variety_ == o.variety_ && terms_ == o.terms_;
  }
  bool operator!=(const SmashElem& o) const { return !(*this == o); }

 private:
  VarietyKind variety_;
  std::map<FKey, VectorFieldElem> terms_;
};

/// [f # eta, g # mu] = f eta(g) # mu - g mu(f) # eta + fg # [eta, mu]
inline SmashElem smash_bracket(const SmashElem& u, const SmashElem& w) {
  if (u.variety() != w.variety())
    throw std::invalid_argument("variety mismatch in smash bracket");
  const VarietyKind& v = u.variety();
  SmashElem out(v);
  for (const auto& [ku, eta] : u.terms()) {
    FunctionElem f = FunctionElem::from_key(v, ku);
    for (const auto& [kw, mu] : w.terms()) {
      FunctionElem g = FunctionElem::from_key(v, kw);
      out.add(multiply(f, eta.apply(g)), mu);
      FunctionElem gmf = multiply(g, mu.apply(f));
      gmf *= -1;
      out.add(gmf, eta);
      out.add(multiply(f, g), bracket_fields(eta, mu));
    }
  }
  return out;
}

/// Spanning element of Delta^s ⊗_A V:
///   sum_{i=0}^s (-1)^i binom(s,i) g f^{s-i} # f^i eta
inline SmashElem delta_element(const FunctionElem& g, const FunctionElem& f,
                               unsigned s, const VectorFieldElem& eta) {
  if (s < 1) throw std::invalid_argument("delta_element: s >= 1 required");
  const VarietyKind& v = g.variety();
  SmashElem out(v);
  FunctionElem fpow_lo = FunctionElem::one(v);  // f^i
  std::vector<FunctionElem> fpows{fpow_lo};
  for (unsigned i = 1; i <= s; ++i) fpows.push_back(multiply(fpows.back(), f));
  for (unsigned i = 0; i <= s; ++i) {
    Rational c = Rational(binomial(s, i)) * (i % 2 == 0 ? 1 : -1);
    FunctionElem left = multiply(g, fpows[s - i]);
    left *= c;
    out.add(left, fpows[i] * eta);
  }
  return out;
}

}  // namespace gfc

#endif
