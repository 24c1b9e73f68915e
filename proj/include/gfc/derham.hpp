#ifndef GFC_DERHAM_HPP
#define GFC_DERHAM_HPP

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfc/cochains.hpp"
#include "gfc/modules.hpp"
#include "gfc/sparse.hpp"
#include "gfc/varieties.hpp"
#include "gfc/vectorfields.hpp"

namespace gfc {

/// Differential form: sparse sum of f dx_{i_1} ∧ .. ∧ dx_{i_k} with strictly
/// increasing 1-based index tuples.
class FormElem {
 public:
  FormElem() = default;
  FormElem(const VarietyKind& v, int degree) : variety_(v), degree_(degree) {
    // degree > n is allowed and necessarily zero (duplicate wedge indices)
    if (degree < 0) throw std::invalid_argument("negative form degree");
  }

  static FormElem zero(const VarietyKind& v, int degree) {
    return FormElem(v, degree);
  }

  static FormElem wedge_monomial(const FunctionElem& f,
                                 const std::vector<int>& dirs) {
    FormElem w(f.variety(), static_cast<int>(dirs.size()));
    w.add(dirs, f);
    return w;
  }

  const VarietyKind& variety() const { return variety_; }
  int degree() const { return degree_; }
  const std::map<std::vector<int>, FunctionElem>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds f dx_dirs, sorting dirs and tracking the sign; repeated indices
  /// contribute nothing.
  void add(std::vector<int> dirs, FunctionElem f) {
    if (static_cast<int>(dirs.size()) != degree_)
      throw std::invalid_argument("wedge arity mismatch");
    if (f.variety() != variety_) throw std::invalid_argument("variety mismatch");
    int sign = 1;
    for (std::size_t a = 1; a < dirs.size(); ++a)
      for (std::size_t b = a; b > 0 && dirs[b - 1] >= dirs[b]; --b) {
        if (dirs[b - 1] == dirs[b]) return;
        std::swap(dirs[b - 1], dirs[b]);
        sign = -sign;
      }
    for (int d : dirs)
      if (d < 1 || d > variety_.n) throw std::invalid_argument("wedge index");
    if (sign < 0) f *= -1;
    if (f.is_zero()) return;
    auto it = terms_.find(dirs);
    if (it == terms_.end()) {
      terms_.emplace(std::move(dirs), std::move(f));
    } else {
      it->second += f;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FormElem& operator+=(const FormElem& o) {
    if (variety_ != o.variety_ || degree_ != o.degree_)
      throw std::invalid_argument("form shape mismatch");
    for (const auto& [dirs, f] : o.terms_) add(dirs, f);
    return *this;
  }
  FormElem& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [dirs, f] : terms_) f *= c;
    return *this;
  }
  friend FormElem operator+(FormElem a, const FormElem& b) {
    a += b;
    return a;
  }
  friend FormElem operator*(const Rational& c, FormElem a) {
    a *= c;
    return a;
  }
  FormElem operator-() const {
    FormElem out = *this;
    out *= -1;
    return out;
  }

  bool operator==(const FormElem& o) const {
    return variety_ == o.variety_ && degree_ == o.degree_ && terms_ == o.terms_;
  }
  bool operator!=(const FormElem& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [dirs, f] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "[" << f.str() << "]";
      for (int d : dirs) os << " dx" << d;
    }
    return os.str();
  }

 private:
  VarietyKind variety_;
  int degree_ = 0;
  std::map<std::vector<int>, FunctionElem> terms_;
};

/// Exterior derivative: d(f dx_I) = sum_i (d f / d x_i) dx_i ∧ dx_I.
inline FormElem d_deRham(const FormElem& w) {
  const VarietyKind& v = w.variety();
  FormElem out(v, w.degree() + 1);
  if (w.degree() + 1 > v.n) return out;  // zero above top degree
  for (const auto& [dirs, f] : w.terms())
    for (int i = 1; i <= v.n; ++i) {
      FunctionElem df = derive(f, i);
      if (df.is_zero()) continue;
      std::vector<int> ext;
      ext.push_back(i);
      ext.insert(ext.end(), dirs.begin(), dirs.end());
      out.add(std::move(ext), std::move(df));
    }
  return out;
}

namespace detail {

/// Monomial keys within the truncation window:
///   affine  total degree <= K, torus  |exponent| <= K per coordinate,
///   sphere  z-power <= K and pole orders <= K.
inline std::vector<FKey> window_keys(const VarietyKind& v, int K) {
  std::vector<FKey> keys;
  switch (v.family) {
    case VarietyFamily::Affine: {
      std::vector<std::vector<int>> exps;
      enumerate_multi_indices(v.n, K, exps);
      for (auto& e : exps) keys.push_back(FKey::monomial(std::move(e)));
      break;
    }
    case VarietyFamily::Torus: {
      std::vector<int> e(v.n, -K);
      while (true) {
        keys.push_back(FKey::monomial(e));
        int i = 0;
        while (i < v.n && e[i] == K) e[i++] = -K;
        if (i == v.n) break;
        ++e[i];
      }
      break;
    }
    case VarietyFamily::PuncturedSphere: {
      for (int j = 0; j <= K; ++j) keys.push_back(FKey::zpow(j));
      for (std::size_t i = 1; i <= v.punctures.size(); ++i)
        for (int m = 1; m <= K; ++m)
          keys.push_back(FKey::polepow(static_cast<int>(i), m));
      break;
    }
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

inline bool key_in_window(const VarietyKind& v, const FKey& k, int K) {
  switch (v.family) {
    case VarietyFamily::Affine: {
      long long total = 0;
      for (int e : k.exps) total += e;
      return total <= K;
    }
    case VarietyFamily::Torus:
      for (int e : k.exps)
        if (e > K || e < -K) return false;
      return true;
    case VarietyFamily::PuncturedSphere:
      return k.ord <= K;
  }
  return false;
}

struct FormBasis {
  std::vector<std::pair<std::vector<int>, FKey>> elems;  // (wedge tuple, key)
  std::map<std::pair<std::vector<int>, FKey>, std::size_t> index;
};

inline FormBasis form_basis(const VarietyKind& v, int degree, int K) {
  FormBasis b;
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
  std::vector<FKey> keys = window_keys(v, K);
  for (const auto& t : tuples)
    for (const auto& k : keys) {
      b.index[{t, k}] = b.elems.size();
      b.elems.emplace_back(t, k);
    }
  return b;
}

/// Columns: domain basis; rows: codomain basis. Codomain window must contain
/// the image of every domain element (throws otherwise).
inline SparseMatrix d_matrix(const VarietyKind& v, const FormBasis& dom,
                             const FormBasis& cod) {
  SparseMatrix d(cod.elems.size(), dom.elems.size());
  for (std::size_t c = 0; c < dom.elems.size(); ++c) {
    const auto& [dirs, key] = dom.elems[c];
    FormElem w = FormElem::wedge_monomial(FunctionElem::from_key(v, key), dirs);
    FormElem dw = d_deRham(w);
    for (const auto& [dirs2, f] : dw.terms())
      for (const auto& [k2, coef] : f.terms()) {
        auto it = cod.index.find({dirs2, k2});
        if (it == cod.index.end())
          throw std::logic_error("codomain window too small for d image");
        d.add(it->second, c, coef);
      }
  }
  return d;
}

inline std::size_t derham_betti_at(const VarietyKind& v, int k, int K) {
  FormBasis bk = form_basis(v, k, K);
  FormBasis bk1 = form_basis(v, k + 1, K + 1);
  SparseMatrix dk = d_matrix(v, bk, bk1);
  std::size_t z = bk.elems.size() - rank(dk);
  if (k == 0) return z;
  // boundaries of window-(K+1) potentials, expressed in a window-(K+2)
  // ambient; intersect with the K-window coordinate subspace
  FormBasis bkm = form_basis(v, k - 1, K + 1);
  FormBasis amb = form_basis(v, k, K + 2);
  SparseMatrix dm = d_matrix(v, bkm, amb);
  std::vector<SparseVec> boundaries;
  {
    SparseMatrix dt = dm.transposed();
    for (std::size_t j = 0; j < dt.rows(); ++j)
      if (!dt.row(j).empty()) boundaries.push_back(dt.row(j));
  }
  // dim(B ∩ window) = rank(B) - rank(B with window coordinates deleted)
  std::size_t rb = span_rank(boundaries, amb.elems.size());
  std::vector<SparseVec> outside;
  for (const auto& row : boundaries) {
    SparseVec pr;
    for (const auto& [i, cc] : row.entries())
      if (!key_in_window(v, amb.elems[i].second, K)) pr.add(i, cc);
    if (!pr.empty()) outside.push_back(std::move(pr));
  }
  std::size_t ro = span_rank(outside, amb.elems.size());
  std::size_t inside = rb - ro;
  if (inside > z) throw std::logic_error("boundary window exceeds cocycles");
  return z - inside;
}

}  // namespace detail

struct DerhamResult {
  std::string variety;
  int degree = 0;
  int truncation = 0;
  std::size_t betti = 0;
  std::size_t betti_next = 0;  // at truncation + 1
  bool stabilized = false;
};

/// Betti number of the algebraic de Rham complex at degrees of truncation K
/// and K+1, with a stabilization flag.
inline DerhamResult derham_betti(const VarietyKind& v, int k, int K) {
  if (k < 0) throw std::invalid_argument("negative form degree");
  if (K < 1) throw std::invalid_argument("truncation >= 1 required");
  DerhamResult r;
  r.variety = v.name();
  r.degree = k;
  r.truncation = K;
  if (k > v.n) {
    r.betti = r.betti_next = 0;
    r.stabilized = true;
    return r;
  }
  r.betti = detail::derham_betti_at(v, k, K);
  r.betti_next = detail::derham_betti_at(v, k, K + 1);
  r.stabilized = r.betti == r.betti_next;
  return r;
}

/// Phi(f dx_{i_1} ∧ .. ∧ dx_{i_k})(η_1..η_k) = f det(η_j(x_{i_l})), an
/// A-multilinear alternating cochain valued in A (tensor elements with a
/// one-dimensional trivial factor).
inline VCochain phi_map(const FormElem& w) {
  const VarietyKind v = w.variety();
  int k = w.degree();
  auto eval = [w, v, k](const std::vector<VectorFieldElem>& args) {
    FunctionElem total = FunctionElem::zero(v);
    for (const auto& [dirs, f] : w.terms()) {
      // det over permutations; k is tiny here
      std::vector<int> perm(k);
      for (int i = 0; i < k; ++i) perm[i] = i;
      FunctionElem det = FunctionElem::zero(v);
      do {
        int sign = 1;
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b)
            if (perm[a] > perm[b]) sign = -sign;
        FunctionElem prod = FunctionElem::one(v);
        for (int i = 0; i < k; ++i)
          prod = multiply(prod, args[perm[i]].component(dirs[i]));
        if (sign < 0) prod *= -1;
        det += prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
      total += multiply(f, det);
    }
    TensorModuleElem out(v, 1);
    for (const auto& [key, c] : total.terms())
      out += TensorModuleElem::pure(FunctionElem::from_key(v, key, c), 0, 1);
    return out;
  };
  return {k, eval};
}

}  // namespace gfc

#endif
