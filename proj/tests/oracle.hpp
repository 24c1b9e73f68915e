// Independent brute-force reference for weight slices of H^*(L+, W), n = 1.
// Deliberately self-contained: dense matrices, its own Gaussian elimination,
// and the Witt structure constants [e_i, e_j] = (j - i) e_{i+j} written
// inline, so it shares no linear algebra or bracket code with the library
// under test.
#ifndef GFC_TESTS_ORACLE_HPP
#define GFC_TESTS_ORACLE_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <vector>

namespace oracle {

using Rat = boost::multiprecision::cpp_rational;
using DenseMatrix = std::vector<std::vector<Rat>>;

inline std::size_t dense_rank(DenseMatrix m) {
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// Finite-dimensional module for the generators e_0..e_D of weight 0..D:
/// basis weights and one dense action matrix per generator (column j holds
/// e_i . w_j). Missing matrices act as zero.
struct Module {
  std::vector<Rat> weights;
  std::map<int, DenseMatrix> action;  // generator weight -> matrix

  static Module trivial() { return {{Rat(0)}, {}}; }
  static Module f_lambda(const Rat& lambda) {
    Module m;
    m.weights = {lambda};
    if (lambda != 0) m.action[0] = {{lambda}};
    return m;
  }
};

struct SliceDims {
  std::size_t cochains = 0;
  std::size_t cocycles = 0;
  std::size_t boundaries = 0;
  std::size_t betti = 0;
};

namespace detail {

struct Key {
  std::vector<int> gens;  // strictly increasing generator weights
  std::size_t target = 0;
  auto tie() const { return std::tuple(gens, target); }
  bool operator<(const Key& o) const { return tie() < o.tie(); }
};

inline std::vector<Key> keys(const Module& w, int D, int degree,
                             const Rat& weight) {
  std::vector<Key> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == degree) {
      Rat target = weight;
      for (int g : cur) target += g;
      for (std::size_t j = 0; j < w.weights.size(); ++j)
        if (w.weights[j] == target) out.push_back({cur, j});
      return;
    }
    for (int g = start; g <= D; ++g) {
      cur.push_back(g);
      self(self, g + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Dense differential matrix, (d phi)(x_1..x_{k+1}) =
///   sum_{s<t} (-1)^{s+t-1} phi([x_s,x_t], ..) + sum_s (-1)^s x_s . phi(..)
inline DenseMatrix d_matrix(const Module& w, int D,
                            const std::vector<Key>& dom,
                            const std::vector<Key>& cod) {
  std::map<Key, std::size_t> col;
  for (std::size_t i = 0; i < dom.size(); ++i) col[dom[i]] = i;
  DenseMatrix m(cod.size(), std::vector<Rat>(dom.size(), Rat(0)));
  for (std::size_t r = 0; r < cod.size(); ++r) {
    const auto& sigma = cod[r].gens;
    int kp1 = static_cast<int>(sigma.size());
    auto lookup = [&](std::vector<int> tuple, std::size_t target, Rat coef) {
      int sign = 1;
      for (std::size_t a = 1; a < tuple.size(); ++a)
        for (std::size_t b = a; b > 0 && tuple[b - 1] >= tuple[b]; --b) {
          if (tuple[b - 1] == tuple[b]) return;
          std::swap(tuple[b - 1], tuple[b]);
          sign = -sign;
        }
      auto it = col.find({tuple, target});
      if (it != col.end()) m[r][it->second] += sign * coef;
    };
    for (int s = 1; s <= kp1; ++s) {
      std::vector<int> rest;
      for (int i = 1; i <= kp1; ++i)
        if (i != s) rest.push_back(sigma[i - 1]);
      // module term: row target receives from phi(rest, j) via e_{sigma[s-1]}
      auto it = w.action.find(sigma[s - 1]);
      if (it != w.action.end()) {
        const DenseMatrix& a = it->second;
        for (std::size_t j = 0; j < w.weights.size(); ++j) {
          Rat c = a[cod[r].target][j];
          if (c != 0) lookup(rest, j, (s % 2 == 0 ? 1 : -1) * c);
        }
      }
      for (int t = s + 1; t <= kp1; ++t) {
        int wi = sigma[s - 1], wj = sigma[t - 1];
        // Witt bracket: [e_i, e_j] = (j - i) e_{i+j}
        if (wi + wj > D) continue;
        std::vector<int> tuple{wi + wj};
        for (int i = 1; i <= kp1; ++i)
          if (i != s && i != t) tuple.push_back(sigma[i - 1]);
        lookup(tuple, cod[r].target,
               Rat(wj - wi) * ((s + t - 1) % 2 == 0 ? 1 : -1));
      }
    }
  }
  return m;
}

}  // namespace detail

/// Brute-force Betti number of the weight slice, generators e_0..e_D.
inline SliceDims slice_dims(const Module& w, int D, int degree,
                            const Rat& weight) {
  if (degree < 0) throw std::invalid_argument("degree");
  auto basis = detail::keys(w, D, degree, weight);
  auto above = detail::keys(w, D, degree + 1, weight);
  auto below = degree > 0 ? detail::keys(w, D, degree - 1, weight)
                          : std::vector<detail::Key>{};
  DenseMatrix dout = detail::d_matrix(w, D, basis, above);
  DenseMatrix din = detail::d_matrix(w, D, below, basis);
  SliceDims s;
  s.cochains = basis.size();
  s.cocycles = basis.size() - dense_rank(dout);
  s.boundaries = dense_rank(din);
  if (s.boundaries > s.cocycles) throw std::logic_error("oracle inconsistency");
  s.betti = s.cocycles - s.boundaries;
  return s;
}

}  // namespace oracle

#endif
