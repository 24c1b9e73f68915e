#ifndef GFC_GRADED_LIE_HPP
#define GFC_GRADED_LIE_HPP

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfc/sparse.hpp"
#include "gfc/varieties.hpp"
#include "gfc/vectorfields.hpp"

namespace gfc {

struct BasisElement {
  std::string label;
  int weight = 0;
};

/// Finite truncated presentation of a graded Lie algebra: indexed basis with
/// integer weights and an eagerly computed antisymmetric bracket table.
/// Immutable after construction and safe for concurrent reads.
class GradedLieAlgebra {
 public:
  GradedLieAlgebra() = default;

  GradedLieAlgebra(std::vector<BasisElement> basis,
                   std::vector<std::vector<SparseVec>> upper_table,
                   std::optional<int> truncation_degree)
      : basis_(std::move(basis)),
        table_(std::move(upper_table)),
        truncation_(truncation_degree) {
    if (table_.size() != basis_.size())
      throw std::invalid_argument("bracket table size mismatch");
  }

  std::size_t dim() const { return basis_.size(); }
  const std::vector<BasisElement>& basis() const { return basis_; }
  int weight(std::size_t i) const { return basis_.at(i).weight; }
  const std::string& label(std::size_t i) const { return basis_.at(i).label; }
  std::optional<int> truncation_degree() const { return truncation_; }

  /// [b_i, b_j] as coordinates over the basis.
  SparseVec bracket(std::size_t i, std::size_t j) const {
    if (i >= dim() || j >= dim()) throw std::out_of_range("bracket index");
    if (i == j) return {};
    if (i < j) return table_[i][j - i - 1];
    return table_[j][i - j - 1].negated();
  }

  /// [u, w] extended bilinearly.
  SparseVec bracket(const SparseVec& u, const SparseVec& w) const {
    SparseVec out;
    for (const auto& [i, a] : u.entries())
      for (const auto& [j, b] : w.entries()) out.axpy(a * b, bracket(i, j));
    return out;
  }

 private:
  std::vector<BasisElement> basis_;
  // table_[i][j-i-1] = [b_i, b_j] for i < j
  std::vector<std::vector<SparseVec>> table_;
  std::optional<int> truncation_;
};

/// Generator X^exponent d/dX_direction of L+, weight |exponent| - 1 >= 0.
struct LPlusGenerator {
  std::vector<int> exponent;
  int direction = 1;  // 1-based

  int weight() const {
    int s = 0;
    for (int e : exponent) s += e;
    return s - 1;
  }

  std::string label() const {
    std::ostringstream os;
    os << "X^(";
    for (std::size_t i = 0; i < exponent.size(); ++i)
      os << (i ? "," : "") << exponent[i];
    os << ")d" << direction;
    return os.str();
  }

  auto tie() const { return std::tuple(weight(), direction, exponent); }
  bool operator<(const LPlusGenerator& o) const { return tie() < o.tie(); }
  bool operator==(const LPlusGenerator& o) const { return tie() == o.tie(); }
};

/// L+ truncated at max_degree, together with the generator metadata the
/// module layer needs. The degree-0 slice is gl_n.
struct LPlusAlgebra {
  int n = 1;
  int max_degree = 0;
  GradedLieAlgebra lie;
  std::vector<LPlusGenerator> generators;
  std::map<std::pair<std::vector<int>, int>, std::size_t> index;

  std::size_t dim() const { return generators.size(); }

  std::optional<std::size_t> find(const std::vector<int>& exponent,
                                  int direction) const {
    auto it = index.find({exponent, direction});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

namespace detail {
inline void enumerate_exponents_total(int n, int min_total, int max_total,
                                      std::vector<std::vector<int>>& out) {
  std::vector<std::vector<int>> all;
  enumerate_multi_indices(n, max_total, all);
  for (auto& m : all) {
    int t = 0;
    for (int e : m) t += e;
    if (t >= min_total) out.push_back(std::move(m));
  }
}
}  // namespace detail

/// Builds the truncated quotient L+/L+^{>max_degree} of derivations of
/// k[X_1..X_n] of non-negative degree. Bracket:
///   [X^a d_i, X^b d_j] = b_i X^{a+b-e_i} d_j - a_j X^{a+b-e_j} d_i
/// with components above max_degree discarded.
inline LPlusAlgebra build_lplus(int n, int max_degree) {
  if (n < 1 || max_degree < 0) throw std::invalid_argument("build_lplus args");
  LPlusAlgebra out;
  out.n = n;
  out.max_degree = max_degree;
  std::vector<std::vector<int>> exps;
  detail::enumerate_exponents_total(n, 1, max_degree + 1, exps);
  for (const auto& e : exps)
    for (int d = 1; d <= n; ++d) out.generators.push_back({e, d});
  std::sort(out.generators.begin(), out.generators.end());
  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < out.generators.size(); ++i) {
    const auto& g = out.generators[i];
    out.index[{g.exponent, g.direction}] = i;
    basis.push_back({g.label(), g.weight()});
  }
  auto bracket_gens = [&](const LPlusGenerator& a,
                          const LPlusGenerator& b) -> SparseVec {
    SparseVec v;
    // b_{a.direction} X^{a+b-e_{a.dir}} d_{b.dir}
    if (b.exponent[a.direction - 1] > 0) {
      std::vector<int> e(a.exponent);
      for (int i = 0; i < n; ++i) e[i] += b.exponent[i];
      e[a.direction - 1] -= 1;
      if (auto idx = out.find(e, b.direction))
        v.add(*idx, b.exponent[a.direction - 1]);
    }
    if (a.exponent[b.direction - 1] > 0) {
      std::vector<int> e(a.exponent);
      for (int i = 0; i < n; ++i) e[i] += b.exponent[i];
      e[b.direction - 1] -= 1;
      if (auto idx = out.find(e, a.direction))
        v.add(*idx, -a.exponent[b.direction - 1]);
    }
    return v;
  };
  std::vector<std::vector<SparseVec>> table(out.generators.size());
  for (std::size_t i = 0; i < out.generators.size(); ++i)
    for (std::size_t j = i + 1; j < out.generators.size(); ++j)
      table[i].push_back(bracket_gens(out.generators[i], out.generators[j]));
  out.lie = GradedLieAlgebra(std::move(basis), std::move(table), max_degree);
  return out;
}

/// Basis element of a truncated window of V ⋉ (A ⊗ L+): either a monomial
/// vector field (in V) or monomial ⊗ L+-generator (in A ⊗ L+).
struct SemidirectGenerator {
  bool in_v = true;
  std::vector<int> monomial;     // A-basis exponent
  int direction = 1;             // V part: x^monomial d_direction
  std::size_t lplus_index = 0;   // A⊗L+ part

  int weight(const LPlusAlgebra& lp) const {
    int m = 0;
    for (int e : monomial) m += e;
    return in_v ? m - 1 : m + lp.generators[lplus_index].weight();
  }
};

struct SemidirectAlgebra {
  VarietyKind variety;
  LPlusAlgebra lplus;
  int weight_lo = 0, weight_hi = 0;
  GradedLieAlgebra lie;
  std::vector<SemidirectGenerator> generators;
  std::map<std::tuple<bool, std::vector<int>, std::size_t>, std::size_t> index;

  std::optional<std::size_t> find(bool in_v, const std::vector<int>& mono,
                                  std::size_t second) const {
    auto it = index.find({in_v, mono, second});
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

namespace detail {
/// Monomial exponents of the coordinate algebra whose total degree lies in
/// [lo, hi]. The torus is restricted to n = 1 here; for n >= 2 a fixed total
/// degree has infinitely many Laurent monomials and no finite window exists.
inline std::vector<std::vector<int>> algebra_monomials(const VarietyKind& v,
                                                       int lo, int hi) {
  std::vector<std::vector<int>> out;
  if (v.family == VarietyFamily::Affine) {
    enumerate_exponents_total(v.n, std::max(lo, 0), hi, out);
  } else if (v.family == VarietyFamily::Torus) {
    if (v.n != 1)
      throw std::invalid_argument(
          "semidirect window: torus supported for n = 1 only");
    for (int d = lo; d <= hi; ++d) out.push_back({d});
  } else {
    throw std::invalid_argument(
        "semidirect window: affine and torus varieties only");
  }
  return out;
}
}  // namespace detail

/// Builds a weight window [weight_lo, weight_hi] of V ⋉ (A ⊗ L+), with the
/// bracket: V acts on the A factor by derivations, A ⊗ L+ brackets pointwise
/// in L+. Components falling outside the window are discarded, so Jacobi is
/// only exact on triples whose intermediate weights stay inside.
inline SemidirectAlgebra build_semidirect(const VarietyKind& variety,
                                          const LPlusAlgebra& lplus,
                                          int weight_lo, int weight_hi) {
  if (weight_lo > weight_hi)
    throw std::invalid_argument("build_semidirect: empty weight window");
  if (variety.n != lplus.n)
    throw std::invalid_argument("build_semidirect: incompatible n");
  SemidirectAlgebra out;
  out.variety = variety;
  out.lplus = lplus;
  out.weight_lo = weight_lo;
  out.weight_hi = weight_hi;
  const int n = variety.n;

  for (const auto& m :
       detail::algebra_monomials(variety, weight_lo + 1, weight_hi + 1)) {
    for (int d = 1; d <= n; ++d)
      out.generators.push_back({true, m, d, 0});
  }
  for (std::size_t g = 0; g < lplus.dim(); ++g) {
    int gw = lplus.generators[g].weight();
    auto monos = detail::algebra_monomials(variety, weight_lo - gw, weight_hi - gw);
    for (const auto& m : monos) out.generators.push_back({false, m, 1, g});
  }
  std::sort(out.generators.begin(), out.generators.end(),
            [&](const SemidirectGenerator& a, const SemidirectGenerator& b) {
              auto ka = std::tuple(a.weight(lplus), !a.in_v, a.monomial,
                                   a.in_v ? std::size_t(a.direction) : a.lplus_index);
              auto kb = std::tuple(b.weight(lplus), !b.in_v, b.monomial,
                                   b.in_v ? std::size_t(b.direction) : b.lplus_index);
              return ka < kb;
            });

  std::vector<BasisElement> basis;
  for (std::size_t i = 0; i < out.generators.size(); ++i) {
    const auto& g = out.generators[i];
    out.index[{g.in_v, g.monomial, g.in_v ? std::size_t(g.direction)
                                          : g.lplus_index}] = i;
    std::ostringstream os;
    os << "x^(";
    for (std::size_t k = 0; k < g.monomial.size(); ++k)
      os << (k ? "," : "") << g.monomial[k];
    os << ")";
    if (g.in_v)
      os << "d" << g.direction;
    else
      os << "(x)" << lplus.generators[g.lplus_index].label();
    basis.push_back({os.str(), g.weight(lplus)});
  }

  auto add_v_part = [&](SparseVec& acc, const std::vector<int>& m, int dir,
                        const Rational& c) {
    if (auto idx = out.find(true, m, std::size_t(dir))) acc.add(*idx, c);
  };
  auto add_ag_part = [&](SparseVec& acc, const std::vector<int>& m,
                         std::size_t g, const Rational& c) {
    if (auto idx = out.find(false, m, g)) acc.add(*idx, c);
  };

  auto bracket_gens = [&](const SemidirectGenerator& a,
                          const SemidirectGenerator& b) -> SparseVec {
    SparseVec acc;
    auto deriv_coeff = [&](const std::vector<int>& ma, int dir,
                           const std::vector<int>& mb,
                           std::vector<int>& result) -> Rational {
      // x^ma * d_dir(x^mb) = mb[dir-1] x^{ma+mb-e_dir}
      if (mb[dir - 1] == 0) return 0;
      result = ma;
      for (int i = 0; i < n; ++i) result[i] += mb[i];
      result[dir - 1] -= 1;
      return mb[dir - 1];
    };
    if (a.in_v && b.in_v) {
      std::vector<int> m;
      Rational c = deriv_coeff(a.monomial, a.direction, b.monomial, m);
      if (c != 0) add_v_part(acc, m, b.direction, c);
      c = deriv_coeff(b.monomial, b.direction, a.monomial, m);
      if (c != 0) add_v_part(acc, m, a.direction, -c);
    } else if (a.in_v && !b.in_v) {
      std::vector<int> m;
      Rational c = deriv_coeff(a.monomial, a.direction, b.monomial, m);
      if (c != 0) add_ag_part(acc, m, b.lplus_index, c);
    } else if (!a.in_v && b.in_v) {
      std::vector<int> m;
      Rational c = deriv_coeff(b.monomial, b.direction, a.monomial, m);
      if (c != 0) add_ag_part(acc, m, a.lplus_index, -c);
    } else {
      SparseVec lb = lplus.lie.bracket(a.lplus_index, b.lplus_index);
      std::vector<int> m(a.monomial);
      for (int i = 0; i < n; ++i) m[i] += b.monomial[i];
      for (const auto& [g, c] : lb.entries()) add_ag_part(acc, m, g, c);
    }
    return acc;
  };

  std::vector<std::vector<SparseVec>> table(out.generators.size());
  for (std::size_t i = 0; i < out.generators.size(); ++i)
    for (std::size_t j = i + 1; j < out.generators.size(); ++j)
      table[i].push_back(bracket_gens(out.generators[i], out.generators[j]));
  out.lie = GradedLieAlgebra(std::move(basis), std::move(table), weight_hi);
  return out;
}

/// Max-norm of the Jacobi defect on one basis triple; exact zero means the
/// identity holds on that triple.
inline bool jacobi_holds(const GradedLieAlgebra& g, std::size_t i,
                         std::size_t j, std::size_t k) {
  SparseVec s = g.bracket(g.bracket(i, j), SparseVec::unit(k));
  s.axpy(1, g.bracket(g.bracket(j, k), SparseVec::unit(i)));
  s.axpy(1, g.bracket(g.bracket(k, i), SparseVec::unit(j)));
  return s.empty();
}

}  // namespace gfc

#endif
