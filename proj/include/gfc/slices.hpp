#ifndef GFC_SLICES_HPP
#define GFC_SLICES_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gfc/graded_lie.hpp"
#include "gfc/modules.hpp"
#include "gfc/rational.hpp"
#include "gfc/sparse.hpp"
#include "gfc/varieties.hpp"

namespace gfc {

/// Inputs to the weight-slice builder: a finite set of argument generators
/// with integer weights, scalar structure constants among them, and a graded
/// coefficient module whose weight components are finite and enumerable.
/// Module elements are addressed by opaque 64-bit ids.
struct SliceProblem {
  std::vector<int> gen_weights;
  std::vector<std::string> gen_labels;
  std::function<SparseVec(std::size_t, std::size_t)> bracket;
  std::function<std::vector<std::int64_t>(const Rational&)> module_at_weight;
  std::function<Rational(std::int64_t)> module_weight;
  // action of generator g on module element id, as (id, coeff) pairs
  std::function<std::vector<std::pair<std::int64_t, Rational>>(std::size_t,
                                                               std::int64_t)>
      action;

  std::size_t gen_count() const { return gen_weights.size(); }
};

/// Basis key of a cochain slice: strictly increasing argument tuple plus a
/// module basis id. weight(key) = wt(target) - sum of argument weights.
struct CochainBasisKey {
  std::vector<std::size_t> args;
  std::int64_t target = 0;

  auto tie() const { return std::tuple(args, target); }
  bool operator<(const CochainBasisKey& o) const { return tie() < o.tie(); }
  bool operator==(const CochainBasisKey& o) const { return tie() == o.tie(); }
};

namespace detail {

inline void combinations(std::size_t n, std::size_t k,
                         const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                          std::size_t start) {
    if (pos == k) {
      f(idx);
      return;
    }
    for (std::size_t i = start; i + (k - pos) <= n; ++i) {
      idx[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
}

}  // namespace detail

/// All cochain keys of the given degree and weight.
inline std::vector<CochainBasisKey> enumerate_slice_basis(
    const SliceProblem& p, int degree, const Rational& weight) {
  std::vector<CochainBasisKey> keys;
  detail::combinations(
      p.gen_count(), static_cast<std::size_t>(degree),
      [&](const std::vector<std::size_t>& tuple) {
        Rational target_weight = weight;
        for (std::size_t g : tuple) target_weight += p.gen_weights[g];
        for (std::int64_t id : p.module_at_weight(target_weight))
          keys.push_back({tuple, id});
      });
  std::sort(keys.begin(), keys.end());
  return keys;
}

/// Differential matrix from degree-k keys (columns) to degree-(k+1) keys
/// (rows), both at the same slice weight, with the printed sign convention:
///   (d phi)(g_1..g_{k+1}) = sum_{s<t} (-1)^{s+t-1} phi([g_s,g_t], rest)
///                         + sum_s (-1)^s g_s . phi(rest).
inline SparseMatrix slice_differential(
    const SliceProblem& p, const std::vector<CochainBasisKey>& domain,
    const std::vector<CochainBasisKey>& codomain) {
  std::map<CochainBasisKey, std::size_t> col_of;
  for (std::size_t i = 0; i < domain.size(); ++i) col_of[domain[i]] = i;
  SparseMatrix d(codomain.size(), domain.size());

  // group codomain rows by argument tuple
  std::map<std::vector<std::size_t>, std::map<std::int64_t, std::size_t>> rows;
  for (std::size_t r = 0; r < codomain.size(); ++r)
    rows[codomain[r].args][codomain[r].target] = r;

  for (const auto& [sigma, row_targets] : rows) {
    const std::size_t kp1 = sigma.size();
    // phi(tuple) contributions, where tuple arises by removing g_s and g_t
    // and prepending a bracket component, or by removing g_s (action term).
    auto add_phi_term = [&](const std::vector<std::size_t>& tuple,
                            const Rational& coeff, bool via_action,
                            std::size_t acting_gen) {
      // sort tuple, track sign, drop if repeated
      std::vector<std::size_t> sorted = tuple;
      int sign = 1;
      for (std::size_t a = 1; a < sorted.size(); ++a)
        for (std::size_t b = a; b > 0 && sorted[b - 1] >= sorted[b]; --b) {
          if (sorted[b - 1] == sorted[b]) return;
          std::swap(sorted[b - 1], sorted[b]);
          sign = -sign;
        }
      Rational c = coeff * sign;
      if (!via_action) {
        for (const auto& [target, r] : row_targets) {
          auto it = col_of.find({sorted, target});
          if (it != col_of.end()) d.add(r, it->second, c);
        }
      } else {
        // row target m' receives contributions from columns (sorted, m) with
        // m' a component of acting_gen . m
        Rational needed = 0;  // module weight of the column target
        // column target weight = slice weight + sum of tuple weights; derive
        // from any row target: wt(m') = wt(m) + wt(acting_gen)
        for (const auto& [target, r] : row_targets) {
          (void)r;
          needed = p.module_weight(target) - p.gen_weights[acting_gen];
          break;
        }
        for (std::int64_t m : p.module_at_weight(needed)) {
          auto it = col_of.find({sorted, m});
          if (it == col_of.end()) continue;
          for (const auto& [m2, cc] : p.action(acting_gen, m)) {
            auto rit = row_targets.find(m2);
            if (rit != row_targets.end()) d.add(rit->second, it->second, c * cc);
          }
        }
      }
    };

    for (std::size_t s = 1; s <= kp1; ++s) {
      std::vector<std::size_t> rest;
      for (std::size_t i = 1; i <= kp1; ++i)
        if (i != s) rest.push_back(sigma[i - 1]);
      add_phi_term(rest, s % 2 == 0 ? 1 : -1, true, sigma[s - 1]);
      for (std::size_t t = s + 1; t <= kp1; ++t) {
        SparseVec br = p.bracket(sigma[s - 1], sigma[t - 1]);
        if (br.empty()) continue;
        std::vector<std::size_t> rest2;
        for (std::size_t i = 1; i <= kp1; ++i)
          if (i != s && i != t) rest2.push_back(sigma[i - 1]);
        Rational base = (s + t - 1) % 2 == 0 ? 1 : -1;
        for (const auto& [u, cu] : br.entries()) {
          std::vector<std::size_t> tuple;
          tuple.push_back(u);
          tuple.insert(tuple.end(), rest2.begin(), rest2.end());
          add_phi_term(tuple, base * cu, false, 0);
        }
      }
    }
  }
  return d;
}

/// One finite-dimensional weight component of a cochain complex with its
/// incoming and outgoing differentials (checked to compose to zero).
struct WeightSlice {
  int degree = 0;
  Rational weight;
  std::vector<CochainBasisKey> basis;
  std::vector<CochainBasisKey> basis_below;  // degree-1
  std::vector<CochainBasisKey> basis_above;  // degree+1
  SparseMatrix d_in;   // C^{k-1} -> C^k
  SparseMatrix d_out;  // C^k -> C^{k+1}
};

inline WeightSlice build_weight_slice(const SliceProblem& p, int degree,
                                      const Rational& weight) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  WeightSlice s;
  s.degree = degree;
  s.weight = weight;
  s.basis = enumerate_slice_basis(p, degree, weight);
  s.basis_above = enumerate_slice_basis(p, degree + 1, weight);
  if (degree > 0) s.basis_below = enumerate_slice_basis(p, degree - 1, weight);
  s.d_out = slice_differential(p, s.basis, s.basis_above);
  s.d_in = degree > 0 ? slice_differential(p, s.basis_below, s.basis)
                      : SparseMatrix(s.basis.size(), 0);
  // d_out . d_in = 0 exactly, else the structure constants are wrong
  for (std::size_t j = 0; j < s.d_in.cols(); ++j) {
    SparseVec col;
    for (std::size_t i = 0; i < s.d_in.rows(); ++i) {
      Rational v = s.d_in.at(i, j);
      if (v != 0) col.add(i, v);
    }
    if (!s.d_out.apply(col).empty())
      throw std::logic_error("slice differentials do not compose to zero");
  }
  return s;
}

struct SliceReport {
  std::string algebra;
  std::string module;
  int degree = 0;
  Rational weight;
  int order = 0;  // truncation / finiteness order used
  std::size_t dim_cochains = 0;
  std::size_t dim_cocycles = 0;
  std::size_t rank_boundaries = 0;
  std::size_t betti = 0;
};

inline std::size_t cohomology_dim(const WeightSlice& s) {
  std::size_t z = s.basis.size() - rank(s.d_out);
  std::size_t b = rank(s.d_in);
  if (b > z) throw std::logic_error("inconsistent slice: rank(d_in) > dim ker(d_out)");
  return z - b;
}

/// Slice problem for H^*(L+, W) on a truncated L+.
inline SliceProblem lplus_slice_problem(const LPlusAlgebra& lp,
                                        const LPlusModule& W) {
  if (lp.n != W.n()) throw std::invalid_argument("lplus/module n mismatch");
  SliceProblem p;
  for (std::size_t i = 0; i < lp.dim(); ++i) {
    p.gen_weights.push_back(lp.generators[i].weight());
    p.gen_labels.push_back(lp.generators[i].label());
  }
  p.bracket = [lie = lp.lie](std::size_t i, std::size_t j) {
    return lie.bracket(i, j);
  };
  p.module_at_weight = [W](const Rational& w) {
    std::vector<std::int64_t> out;
    for (std::size_t j = 0; j < W.dim(); ++j)
      if (W.weight(j) == w) out.push_back(static_cast<std::int64_t>(j));
    return out;
  };
  p.module_weight = [W](std::int64_t id) {
    return W.weight(static_cast<std::size_t>(id));
  };
  p.action = [lp, W](std::size_t g, std::int64_t id) {
    std::vector<std::pair<std::int64_t, Rational>> out;
    SparseVec v = W.act(lp.generators[g], static_cast<std::size_t>(id));
    for (const auto& [j, c] : v.entries())
      out.emplace_back(static_cast<std::int64_t>(j), c);
    return out;
  };
  return p;
}

inline SliceReport lplus_cohomology(const LPlusAlgebra& lp, const LPlusModule& W,
                                    int degree, const Rational& weight) {
  WeightSlice s = build_weight_slice(lplus_slice_problem(lp, W), degree, weight);
  SliceReport r;
  r.algebra = "lplus(n=" + std::to_string(lp.n) + ",deg<=" +
              std::to_string(lp.max_degree) + ")";
  r.module = W.name();
  r.degree = degree;
  r.weight = weight;
  r.order = lp.max_degree;
  r.dim_cochains = s.basis.size();
  r.dim_cocycles = s.basis.size() - rank(s.d_out);
  r.rank_boundaries = rank(s.d_in);
  if (r.rank_boundaries > r.dim_cocycles)
    throw std::logic_error("inconsistent lplus slice");
  r.betti = r.dim_cocycles - r.rank_boundaries;
  return r;
}

/// ---------------------------------------------------------------------
/// Direct Gelfand-Fuks engine (n = 1 affine and torus).
///
/// A-linear cochains on V ⋉ (A ⊗ L+) are determined by their values on the
/// free A-basis { d } ∪ { 1 ⊗ e_j }, with coefficients in A ⊗ W. Brackets
/// among these generators are scalar: [d, 1⊗e_j] = 0 and
/// [1⊗e_i, 1⊗e_j] = (j-i) 1⊗e_{i+j} (truncated). The coefficient module
/// id encodes (x-exponent, W-basis index).
/// ---------------------------------------------------------------------

struct GfDirectProblem {
  VarietyKind variety;
  LPlusModule W;
  int order_cap = 0;  // generators e_0..e_{order_cap-1}

  SliceProblem slice_problem() const {
    if (variety.n != 1 ||
        (variety.family != VarietyFamily::Affine &&
         variety.family != VarietyFamily::Torus))
      throw std::invalid_argument(
          "direct Gelfand-Fuks computation supports affine and torus, n = 1");
    const bool torus = variety.family == VarietyFamily::Torus;
    const std::size_t nw = W.dim();
    const int cap = order_cap;
    SliceProblem p;
    p.gen_weights.push_back(-1);
    p.gen_labels.push_back("d");
    for (int j = 0; j < cap; ++j) {
      p.gen_weights.push_back(j);
      p.gen_labels.push_back("e" + std::to_string(j));
    }
    p.bracket = [cap](std::size_t a, std::size_t b) -> SparseVec {
      if (a == 0 || b == 0) return {};  // [d, 1⊗e] = 0 in the semidirect model
      long long i = static_cast<long long>(a) - 1;
      long long j = static_cast<long long>(b) - 1;
      if (i + j >= cap) return {};
      return SparseVec::unit(static_cast<std::size_t>(i + j + 1), Rational(j - i));
    };
    auto encode = [nw](long long xexp, std::size_t widx) {
      return xexp * static_cast<long long>(nw) + static_cast<long long>(widx);
    };
    auto decode = [nw](std::int64_t id, long long& xexp, std::size_t& widx) {
      long long n = static_cast<long long>(nw);
      long long q = id >= 0 ? id / n : -((-id + n - 1) / n);
      xexp = q;
      widx = static_cast<std::size_t>(id - q * n);
    };
    LPlusModule W_ = W;
    p.module_at_weight = [W_, torus, encode](const Rational& w) {
      std::vector<std::int64_t> out;
      for (std::size_t j = 0; j < W_.dim(); ++j) {
        Rational x = w - W_.weight(j);
        if (!is_integer(x)) continue;
        long long xe = to_long(x);
        if (!torus && xe < 0) continue;
        out.push_back(encode(xe, j));
      }
      return out;
    };
    p.module_weight = [W_, decode](std::int64_t id) {
      long long xe;
      std::size_t widx;
      decode(id, xe, widx);
      return Rational(xe) + W_.weight(widx);
    };
    p.action = [W_, torus, encode, decode](std::size_t g, std::int64_t id) {
      std::vector<std::pair<std::int64_t, Rational>> out;
      long long xe;
      std::size_t widx;
      decode(id, xe, widx);
      if (g == 0) {
        // d . (x^j ⊗ w) = j x^{j-1} ⊗ w
        if (xe != 0) out.emplace_back(encode(xe - 1, widx), Rational(xe));
      } else {
        // (1 ⊗ e_{g-1}) . (x^j ⊗ w) = x^j ⊗ (e_{g-1} w)
        LPlusGenerator gen{{static_cast<int>(g)}, 1};
        SparseVec v = W_.act(gen, widx);
        for (const auto& [j2, c] : v.entries()) out.emplace_back(encode(xe, j2), c);
      }
      return out;
    };
    return p;
  }
};

struct GfStabilization {
  std::vector<std::size_t> dims;  // index p-1 holds the order-p dimension
  bool stabilized = false;
  std::size_t dim_cocycles_last = 0;
  std::size_t rank_boundaries_last = 0;
};

/// Cohomology of the colimit complex of finite cochains: cocycles of the
/// order-p subcomplex, boundaries drawn from cochains up to order p_max.
/// Reports the dimension sequence and whether the last two entries agree.
inline GfStabilization stabilized_gf_cohomology(const VarietyKind& variety,
                                                const LPlusModule& W, int degree,
                                                const Rational& weight,
                                                int p_max) {
  if (p_max < 2) throw std::invalid_argument("p_max >= 2 required");
  GfDirectProblem prob{variety, W, p_max};
  SliceProblem p = prob.slice_problem();
  auto c_k = enumerate_slice_basis(p, degree, weight);
  auto c_above = enumerate_slice_basis(p, degree + 1, weight);
  auto c_below =
      degree > 0 ? enumerate_slice_basis(p, degree - 1, weight)
                 : std::vector<CochainBasisKey>{};
  SparseMatrix d_out = slice_differential(p, c_k, c_above);
  SparseMatrix d_in = degree > 0 ? slice_differential(p, c_below, c_k)
                                 : SparseMatrix(c_k.size(), 0);

  // boundary span: images of the order-p_max coboundary map
  std::vector<SparseVec> boundaries;
  {
    SparseMatrix dt = d_in.transposed();
    for (std::size_t j = 0; j < dt.rows(); ++j)
      if (!dt.row(j).empty()) boundaries.push_back(dt.row(j));
  }

  GfStabilization out;
  for (int order = 1; order <= p_max; ++order) {
    // keys whose L+ arguments all have weight < order (generator index g >= 1
    // stands for e_{g-1} of weight g-1)
    std::vector<std::size_t> cols;
    for (std::size_t c = 0; c < c_k.size(); ++c) {
      bool ok = true;
      for (std::size_t g : c_k[c].args)
        if (g >= 1 && static_cast<int>(g) - 1 >= order) ok = false;
      if (ok) cols.push_back(c);
    }
    // kernel of d_out restricted to those columns, embedded in full coords
    SparseMatrix restricted(d_out.rows(), cols.size());
    for (std::size_t i = 0; i < d_out.rows(); ++i)
      for (std::size_t cc = 0; cc < cols.size(); ++cc) {
        Rational v = d_out.at(i, cols[cc]);
        if (v != 0) restricted.add(i, cc, v);
      }
    std::vector<SparseVec> kern = kernel_basis(restricted);
    std::vector<SparseVec> cocycles;
    for (const auto& kv : kern) {
      SparseVec full;
      for (const auto& [cc, v] : kv.entries()) full.add(cols[cc], v);
      cocycles.push_back(std::move(full));
    }
    std::size_t z = cocycles.size();
    std::size_t shared = intersection_dim(cocycles, boundaries, c_k.size());
    out.dims.push_back(z - shared);
    if (order == p_max) {
      out.dim_cocycles_last = z;
      out.rank_boundaries_last = shared;
    }
  }
  out.stabilized =
      out.dims.size() >= 2 &&
      out.dims[out.dims.size() - 1] == out.dims[out.dims.size() - 2];
  return out;
}

}  // namespace gfc

#endif
