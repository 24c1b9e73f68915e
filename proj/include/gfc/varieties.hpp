#ifndef GFC_VARIETIES_HPP
#define GFC_VARIETIES_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfc/rational.hpp"

namespace gfc {

enum class VarietyFamily { Affine, Torus, PuncturedSphere };

/// One of the three coordinate-algebra families:
///   Affine(n)          A = k[x_1..x_n]
///   Torus(n)           A = k[x_1^±1..x_n^±1]
///   PuncturedSphere(a) A = k[z, (z-a_1)^-1, .., (z-a_m)^-1], n = 1
struct VarietyKind {
  VarietyFamily family = VarietyFamily::Affine;
  int n = 1;
  std::vector<Rational> punctures;  // sphere only

  static VarietyKind affine(int n) {
    if (n < 1) throw std::invalid_argument("affine: n >= 1 required");
    return {VarietyFamily::Affine, n, {}};
  }
  static VarietyKind torus(int n) {
    if (n < 1) throw std::invalid_argument("torus: n >= 1 required");
    return {VarietyFamily::Torus, n, {}};
  }
  static VarietyKind punctured_sphere(std::vector<Rational> as) {
    if (as.empty())
      throw std::invalid_argument("punctured sphere: need at least one finite puncture");
    for (std::size_t i = 0; i < as.size(); ++i)
      for (std::size_t j = i + 1; j < as.size(); ++j)
        if (as[i] == as[j])
          throw std::invalid_argument("punctured sphere: punctures must be distinct");
    return {VarietyFamily::PuncturedSphere, 1, std::move(as)};
  }

  int dim() const { return n; }

  bool operator==(const VarietyKind& o) const {
    return family == o.family && n == o.n && punctures == o.punctures;
  }
  bool operator!=(const VarietyKind& o) const { return !(*this == o); }

  std::string name() const {
    switch (family) {
      case VarietyFamily::Affine: return "affine" + std::to_string(n);
      case VarietyFamily::Torus: return "torus" + std::to_string(n);
      case VarietyFamily::PuncturedSphere:
        return "sphere_m" + std::to_string(punctures.size());
    }
    return "?";
  }
};

/// Basis monomial key of the coordinate algebra.
///   Affine/Torus:     x^exps
///   PuncturedSphere:  pole == 0: z^ord (ord >= 0)
///                     pole == i: (z - a_i)^-ord (ord >= 1), 1-based i
struct FKey {
  std::vector<int> exps;
  int pole = 0;
  int ord = 0;

  static FKey monomial(std::vector<int> e) { return {std::move(e), 0, 0}; }
  static FKey zpow(int k) { return {{}, 0, k}; }
  static FKey polepow(int i, int k) { return {{}, i, k}; }

  auto tie() const { return std::tuple(pole, ord, exps); }
  bool operator<(const FKey& o) const { return tie() < o.tie(); }
  bool operator==(const FKey& o) const { return tie() == o.tie(); }

  /// Euler weight: total degree for monomials; for the sphere, z-degree.
  long long degree() const {
    if (!exps.empty())
      return std::accumulate(exps.begin(), exps.end(), 0LL);
    return pole == 0 ? ord : -ord;
  }
};

/// Element of the coordinate algebra A, in canonical normal form. Sphere
/// elements are kept in partial-fraction form: no products of distinct pole
/// factors ever appear in the stored basis.
class FunctionElem {
 public:
  FunctionElem() = default;
  explicit FunctionElem(VarietyKind v) : variety_(std::move(v)) {}

  static FunctionElem zero(const VarietyKind& v) { return FunctionElem(v); }

  static FunctionElem constant(const VarietyKind& v, const Rational& c) {
    FunctionElem f(v);
    FKey k = v.family == VarietyFamily::PuncturedSphere
                 ? FKey::zpow(0)
                 : FKey::monomial(std::vector<int>(v.n, 0));
    f.add_term(k, c);
    return f;
  }

  static FunctionElem one(const VarietyKind& v) { return constant(v, 1); }

  static FunctionElem from_key(const VarietyKind& v, const FKey& k,
                               const Rational& c = 1) {
    FunctionElem f(v);
    f.add_term(k, c);
    return f;
  }

  /// x_dir (1-based) for affine/torus, z for the sphere.
  static FunctionElem coordinate(const VarietyKind& v, int dir = 1) {
    if (v.family == VarietyFamily::PuncturedSphere)
      return from_key(v, FKey::zpow(1));
    if (dir < 1 || dir > v.n) throw std::invalid_argument("coordinate index");
    std::vector<int> e(v.n, 0);
    e[dir - 1] = 1;
    return from_key(v, FKey::monomial(std::move(e)));
  }

  static FunctionElem monomial(const VarietyKind& v, std::vector<int> exps,
                               const Rational& c = 1) {
    if (static_cast<int>(exps.size()) != v.n)
      throw std::invalid_argument("monomial arity");
    if (v.family == VarietyFamily::Affine)
      for (int e : exps)
        if (e < 0) throw std::invalid_argument("negative exponent on affine space");
    if (v.family == VarietyFamily::PuncturedSphere) {
      if (exps[0] < 0) throw std::invalid_argument("use pole keys on the sphere");
      return from_key(v, FKey::zpow(exps[0]), c);
    }
    return from_key(v, FKey::monomial(std::move(exps)), c);
  }

  const VarietyKind& variety() const { return variety_; }
  const std::map<FKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const FKey& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  FunctionElem& operator+=(const FunctionElem& o) {
    require_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  FunctionElem& operator-=(const FunctionElem& o) {
    require_same(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  FunctionElem& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
  }

  friend FunctionElem operator+(FunctionElem a, const FunctionElem& b) {
    a += b;
    return a;
  }
  friend FunctionElem operator-(FunctionElem a, const FunctionElem& b) {
    a -= b;
    return a;
  }
  friend FunctionElem operator*(FunctionElem a, const Rational& c) {
    a *= c;
    return a;
  }
  friend FunctionElem operator*(const Rational& c, FunctionElem a) {
    a *= c;
    return a;
  }

  bool operator==(const FunctionElem& o) const {
    return variety_ == o.variety_ && terms_ == o.terms_;
  }
  bool operator!=(const FunctionElem& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (variety_.family == VarietyFamily::PuncturedSphere) {
        if (k.pole == 0 && k.ord != 0) os << "*z^" << k.ord;
        if (k.pole != 0)
          os << "*(z-" << variety_.punctures[k.pole - 1] << ")^-" << k.ord;
      } else {
        for (int i = 0; i < variety_.n; ++i)
          if (k.exps[i] != 0) os << "*x" << (i + 1) << "^" << k.exps[i];
      }
    }
    return os.str();
  }

 private:
  void require_same(const FunctionElem& o) const {
    if (variety_ != o.variety_)
      throw std::invalid_argument("variety mismatch in algebra operation");
  }

  VarietyKind variety_;
  std::map<FKey, Rational> terms_;
};

namespace detail {

/// z * (single sphere key), already in partial-fraction normal form.
inline FunctionElem sphere_mul_z(const VarietyKind& v, const FKey& k) {
  FunctionElem out(v);
  if (k.pole == 0) {
    out.add_term(FKey::zpow(k.ord + 1), 1);
  } else {
    // z/(z-a)^m = (z-a)^-(m-1) + a (z-a)^-m, with (z-a)^0 = 1.
    const Rational& a = v.punctures[k.pole - 1];
    if (k.ord == 1)
      out.add_term(FKey::zpow(0), 1);
    else
      out.add_term(FKey::polepow(k.pole, k.ord - 1), 1);
    out.add_term(FKey::polepow(k.pole, k.ord), a);
  }
  return out;
}

/// (z-a_i)^-k * (z-a_j)^-l as a partial-fraction normal form, i != j.
inline FunctionElem sphere_mul_poles(const VarietyKind& v, int i, int k, int j,
                                     int l) {
  if (k == 0) return FunctionElem::from_key(v, l == 0 ? FKey::zpow(0) : FKey::polepow(j, l));
  if (l == 0) return FunctionElem::from_key(v, FKey::polepow(i, k));
  const Rational A = 1 / (v.punctures[i - 1] - v.punctures[j - 1]);
  // 1/((z-a_i)(z-a_j)) = A (z-a_i)^-1 - A (z-a_j)^-1
  FunctionElem left = sphere_mul_poles(v, i, k, j, l - 1);
  FunctionElem right = sphere_mul_poles(v, i, k - 1, j, l);
  left *= A;
  right *= -A;
  return left + right;
}

inline FunctionElem sphere_mul_keys(const VarietyKind& v, const FKey& a,
                                    const FKey& b) {
  if (a.pole == 0 && b.pole == 0)
    return FunctionElem::from_key(v, FKey::zpow(a.ord + b.ord));
  if (a.pole != 0 && b.pole != 0) {
    if (a.pole == b.pole)
      return FunctionElem::from_key(v, FKey::polepow(a.pole, a.ord + b.ord));
    return sphere_mul_poles(v, a.pole, a.ord, b.pole, b.ord);
  }
  const FKey& z = a.pole == 0 ? a : b;
  const FKey& p = a.pole == 0 ? b : a;
  FunctionElem acc = FunctionElem::from_key(v, p);
  for (int t = 0; t < z.ord; ++t) {
    FunctionElem next(v);
    for (const auto& [k, c] : acc.terms()) {
      FunctionElem part = sphere_mul_z(v, k);
      part *= c;
      next += part;
    }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace detail

inline FunctionElem multiply(const FunctionElem& f, const FunctionElem& g) {
  if (f.variety() != g.variety())
    throw std::invalid_argument("variety mismatch in multiply");
  const VarietyKind& v = f.variety();
  FunctionElem out(v);
  for (const auto& [ka, ca] : f.terms()) {
    for (const auto& [kb, cb] : g.terms()) {
      Rational c = ca * cb;
      if (v.family == VarietyFamily::PuncturedSphere) {
        FunctionElem prod = detail::sphere_mul_keys(v, ka, kb);
        prod *= c;
        out += prod;
      } else {
        std::vector<int> e(ka.exps);
        for (int i = 0; i < v.n; ++i) e[i] += kb.exps[i];
        out.add_term(FKey::monomial(std::move(e)), c);
      }
    }
  }
  return out;
}

inline FunctionElem operator*(const FunctionElem& f, const FunctionElem& g) {
  return multiply(f, g);
}

/// Exact d/dx_direction (1-based). The sphere has a single direction z.
inline FunctionElem derive(const FunctionElem& f, int direction = 1) {
  const VarietyKind& v = f.variety();
  if (direction < 1 || direction > v.n)
    throw std::invalid_argument("derive: bad direction");
  FunctionElem out(v);
  for (const auto& [k, c] : f.terms()) {
    if (v.family == VarietyFamily::PuncturedSphere) {
      if (k.pole == 0) {
        if (k.ord > 0) out.add_term(FKey::zpow(k.ord - 1), c * k.ord);
      } else {
        out.add_term(FKey::polepow(k.pole, k.ord + 1), -c * k.ord);
      }
    } else {
      int e = k.exps[direction - 1];
      if (e == 0) continue;
      std::vector<int> ne(k.exps);
      ne[direction - 1] -= 1;
      out.add_term(FKey::monomial(std::move(ne)), c * e);
    }
  }
  return out;
}

inline FunctionElem pow(const FunctionElem& f, int k) {
  if (k < 0) throw std::invalid_argument("pow: negative exponent");
  FunctionElem r = FunctionElem::one(f.variety());
  for (int i = 0; i < k; ++i) r = multiply(r, f);
  return r;
}

/// Evaluation at a rational sample point (oracle use; must avoid punctures
/// and, for the torus, coordinates equal to zero).
inline Rational evaluate(const FunctionElem& f, const std::vector<Rational>& x) {
  const VarietyKind& v = f.variety();
  if (static_cast<int>(x.size()) != v.n)
    throw std::invalid_argument("evaluate: wrong point arity");
  Rational total = 0;
  for (const auto& [k, c] : f.terms()) {
    Rational t = c;
    if (v.family == VarietyFamily::PuncturedSphere) {
      if (k.pole == 0) {
        t *= rational_pow(x[0], k.ord);
      } else {
        Rational base = x[0] - v.punctures[k.pole - 1];
        if (base == 0) throw std::domain_error("evaluate at a puncture");
        t *= rational_pow(base, -static_cast<long long>(k.ord));
      }
    } else {
      for (int i = 0; i < v.n; ++i) {
        if (k.exps[i] < 0 && x[i] == 0)
          throw std::domain_error("evaluate torus term at zero");
        t *= rational_pow(x[i], k.exps[i]);
      }
    }
    total += t;
  }
  return total;
}

/// Truncated jet series: coefficients of t^m for |m| <= truncation.
struct JetSeries {
  VarietyKind variety;
  int truncation = 0;
  std::map<std::vector<int>, FunctionElem> coeffs;  // t-exponent -> coefficient

  FunctionElem coeff(const std::vector<int>& m) const {
    auto it = coeffs.find(m);
    return it == coeffs.end() ? FunctionElem::zero(variety) : it->second;
  }

  bool operator==(const JetSeries& o) const {
    return variety == o.variety && truncation == o.truncation && coeffs == o.coeffs;
  }
};

namespace detail {
inline void enumerate_multi_indices(int n, int max_total,
                                    std::vector<std::vector<int>>& out) {
  std::vector<int> cur(n, 0);
  // lexicographic enumeration of all m in Z+^n with |m| <= max_total
  while (true) {
    out.push_back(cur);
    int i = n - 1;
    while (i >= 0) {
      ++cur[i];
      if (std::accumulate(cur.begin(), cur.end(), 0) <= max_total) break;
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
}
}  // namespace detail

/// j(g ⊗ f) truncated: sum over |m| <= truncation of (1/m!) g ∂^m f t^m.
inline JetSeries jet(const FunctionElem& g, const FunctionElem& f,
                     int truncation) {
  if (g.variety() != f.variety())
    throw std::invalid_argument("variety mismatch in jet");
  const VarietyKind& v = g.variety();
  JetSeries out{v, truncation, {}};
  std::vector<std::vector<int>> idx;
  detail::enumerate_multi_indices(v.n, truncation, idx);
  for (const auto& m : idx) {
    FunctionElem dm = f;
    Rational fact = 1;
    for (int i = 0; i < v.n; ++i)
      for (int r = 0; r < m[i]; ++r) {
        dm = derive(dm, i + 1);
        fact *= r + 1;
      }
    if (dm.is_zero()) continue;
    FunctionElem c = multiply(g, dm);
    c *= 1 / fact;
    if (!c.is_zero()) out.coeffs.emplace(m, std::move(c));
  }
  return out;
}

inline JetSeries jet_multiply(const JetSeries& a, const JetSeries& b) {
  if (a.variety != b.variety || a.truncation != b.truncation)
    throw std::invalid_argument("jet mismatch");
  JetSeries out{a.variety, a.truncation, {}};
  for (const auto& [ma, fa] : a.coeffs)
    for (const auto& [mb, fb] : b.coeffs) {
      std::vector<int> m(ma);
      int total = 0;
      for (std::size_t i = 0; i < m.size(); ++i) {
        m[i] += mb[i];
        total += m[i];
      }
      if (total > a.truncation) continue;
      FunctionElem prod = multiply(fa, fb);
      if (prod.is_zero()) continue;
      auto [it, inserted] = out.coeffs.emplace(m, prod);
      if (!inserted) {
        it->second += prod;
        if (it->second.is_zero()) out.coeffs.erase(it);
      }
    }
  return out;
}

}  // namespace gfc

#endif
