#ifndef GFC_SPARSE_HPP
#define GFC_SPARSE_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gfc/rational.hpp"

namespace gfc {

/// Sparse vector over Q: strictly increasing indices, no stored zeros.
class SparseVec {
 public:
  using Entry = std::pair<std::size_t, Rational>;

  SparseVec() = default;

  static SparseVec unit(std::size_t index, Rational value = 1) {
    SparseVec v;
    if (value != 0) v.entries_.emplace_back(index, std::move(value));
    return v;
  }

  static SparseVec from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVec v;
    for (auto& e : entries) {
      if (e.second == 0) continue;
      if (!v.entries_.empty() && v.entries_.back().first == e.first)
        throw std::invalid_argument("duplicate index in sparse vector");
      v.entries_.push_back(std::move(e));
    }
    return v;
  }

  const std::vector<Entry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t nnz() const { return entries_.size(); }

  Rational at(std::size_t index) const {
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), index,
        [](const Entry& e, std::size_t i) { return e.first < i; });
    return (it != entries_.end() && it->first == index) ? it->second : Rational(0);
  }

  void add(std::size_t index, const Rational& value) {
    if (value == 0) return;
    auto it = std::lower_bound(
        entries_.begin(), entries_.end(), index,
        [](const Entry& e, std::size_t i) { return e.first < i; });
    if (it != entries_.end() && it->first == index) {
      it->second += value;
      if (it->second == 0) entries_.erase(it);
    } else {
      entries_.insert(it, {index, value});
    }
  }

  /// this += c * other
  void axpy(const Rational& c, const SparseVec& other) {
    if (c == 0 || other.empty()) return;
    std::vector<Entry> merged;
    merged.reserve(entries_.size() + other.entries_.size());
    auto a = entries_.begin();
    auto b = other.entries_.begin();
    while (a != entries_.end() || b != other.entries_.end()) {
      if (b == other.entries_.end() ||
          (a != entries_.end() && a->first < b->first)) {
        merged.push_back(*a++);
      } else if (a == entries_.end() || b->first < a->first) {
        Rational v = c * b->second;
        if (v != 0) merged.emplace_back(b->first, std::move(v));
        ++b;
      } else {
        Rational v = a->second + c * b->second;
        if (v != 0) merged.emplace_back(a->first, std::move(v));
        ++a;
        ++b;
      }
    }
    entries_ = std::move(merged);
  }

  void scale(const Rational& c) {
    if (c == 0) {
      entries_.clear();
      return;
    }
    for (auto& e : entries_) e.second *= c;
  }

  SparseVec negated() const {
    SparseVec v = *this;
    for (auto& e : v.entries_) e.second = -e.second;
    return v;
  }

  bool operator==(const SparseVec& other) const {
    return entries_ == other.entries_;
  }

 private:
  std::vector<Entry> entries_;
};

/// Row-major sparse matrix over Q.
class SparseMatrix {
 public:
  SparseMatrix() : rows_(0), cols_(0) {}
  SparseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const SparseVec& row(std::size_t i) const { return data_.at(i); }
  SparseVec& row(std::size_t i) { return data_.at(i); }

  void set(std::size_t i, std::size_t j, const Rational& v) {
    check(i, j);
    SparseVec& r = data_[i];
    Rational cur = r.at(j);
    r.add(j, v - cur);
  }

  void add(std::size_t i, std::size_t j, const Rational& v) {
    check(i, j);
    data_[i].add(j, v);
  }

  Rational at(std::size_t i, std::size_t j) const {
    check(i, j);
    return data_[i].at(j);
  }

  SparseMatrix transposed() const {
    SparseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (const auto& [j, v] : data_[i].entries()) t.data_[j].add(i, v);
    return t;
  }

  /// m * v with v a column vector over column indices.
  SparseVec apply(const SparseVec& v) const {
    SparseVec out;
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational s = 0;
      for (const auto& [j, c] : data_[i].entries()) s += c * v.at(j);
      if (s != 0) out.add(i, s);
    }
    return out;
  }

  std::size_t nnz() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.nnz();
    return n;
  }

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("matrix index");
  }

  std::size_t rows_, cols_;
  std::vector<SparseVec> data_;
};

namespace detail {

/// Sparse Gaussian elimination working state. Pivots are selected by a
/// Markowitz-style rule: minimize (nnz(row)-1)*(nnz(col)-1), ties broken by
/// smallest column index then smallest row index, so results are
/// deterministic regardless of input row order perturbations done upstream.
class Eliminator {
 public:
  explicit Eliminator(const SparseMatrix& m) : cols_(m.cols()) {
    rows_.reserve(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (!m.row(i).empty()) rows_.push_back(m.row(i));
    col_count_.assign(cols_, 0);
    for (const auto& r : rows_)
      for (const auto& [j, v] : r.entries()) ++col_count_[j];
  }

  /// Runs to row echelon form; returns pivot (row-in-order, col) pairs.
  void run() {
    active_.assign(rows_.size(), true);
    while (true) {
      auto pick = select_pivot();
      if (pick.first == npos) break;
      std::size_t pr = pick.first, pc = pick.second;
      active_[pr] = false;
      for (const auto& [j, v] : rows_[pr].entries()) --col_count_[j];
      const Rational pivot_val = rows_[pr].at(pc);
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        if (!active_[i]) continue;
        Rational v = rows_[i].at(pc);
        if (v == 0) continue;
        for (const auto& [j, x] : rows_[i].entries()) --col_count_[j];
        rows_[i].axpy(-v / pivot_val, rows_[pr]);
        for (const auto& [j, x] : rows_[i].entries()) ++col_count_[j];
        if (rows_[i].empty()) active_[i] = false;
      }
      pivots_.emplace_back(pr, pc);
    }
  }

  std::size_t rank() const { return pivots_.size(); }

  /// Kernel basis of the original matrix (columns = cols_). Deterministic:
  /// one vector per non-pivot column, in increasing column order, with the
  /// free coordinate set to 1.
  std::vector<SparseVec> kernel_basis() {
    // Back-substitute pivot rows to reduced form (each pivot column appears
    // in exactly one row).
    std::vector<bool> is_pivot_col(cols_, false);
    for (const auto& [r, c] : pivots_) is_pivot_col[c] = true;
    // Reduce: process pivots in reverse acquisition order; later pivot rows
    // eliminate their pivot columns from earlier rows.
    for (std::size_t a = pivots_.size(); a-- > 0;) {
      auto [pr, pc] = pivots_[a];
      const Rational pv = rows_[pr].at(pc);
      for (std::size_t b = 0; b < a; ++b) {
        auto [qr, qc] = pivots_[b];
        Rational v = rows_[qr].at(pc);
        if (v != 0) rows_[qr].axpy(-v / pv, rows_[pr]);
      }
    }
    std::map<std::size_t, std::size_t> pivot_row_of_col;
    for (const auto& [r, c] : pivots_) pivot_row_of_col[c] = r;
    std::vector<SparseVec> basis;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (is_pivot_col[j]) continue;
      SparseVec v = SparseVec::unit(j);
      for (const auto& [pc, pr] : pivot_row_of_col) {
        Rational coeff = rows_[pr].at(j);
        if (coeff != 0) v.add(pc, -coeff / rows_[pr].at(pc));
      }
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::pair<std::size_t, std::size_t> select_pivot() const {
    std::size_t best_r = npos, best_c = npos;
    unsigned long long best_score = std::numeric_limits<unsigned long long>::max();
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (!active_[i] || rows_[i].empty()) continue;
      const unsigned long long rw = rows_[i].nnz() - 1;
      for (const auto& [j, v] : rows_[i].entries()) {
        unsigned long long score = rw * (col_count_[j] - 1);
        if (score < best_score ||
            (score == best_score && (j < best_c || (j == best_c && i < best_r)))) {
          best_score = score;
          best_r = i;
          best_c = j;
        }
      }
    }
    return {best_r, best_c};
  }

  std::size_t cols_;
  std::vector<SparseVec> rows_;
  std::vector<bool> active_;
  std::vector<std::size_t> col_count_;
  std::vector<std::pair<std::size_t, std::size_t>> pivots_;
};

}  // namespace detail

inline std::size_t rank(const SparseMatrix& m) {
  detail::Eliminator e(m);
  e.run();
  return e.rank();
}

/// Basis of { v : m v = 0 }. Exactly cols - rank vectors.
inline std::vector<SparseVec> kernel_basis(const SparseMatrix& m) {
  detail::Eliminator e(m);
  e.run();
  return e.kernel_basis();
}

/// dim H = dim(cocycles) - rank(previous differential). Throws when the rank
/// exceeds the cocycle count, which signals an inconsistent complex.
inline std::size_t quotient_dim(std::size_t cocycles,
                                const SparseMatrix& boundary_matrix) {
  std::size_t r = rank(boundary_matrix);
  if (r > cocycles)
    throw std::logic_error("quotient_dim: boundary rank exceeds cocycle count");
  return cocycles - r;
}

/// Rank of the row span of a set of sparse vectors in a common ambient space.
inline std::size_t span_rank(const std::vector<SparseVec>& vecs,
                             std::size_t ambient) {
  SparseMatrix m(vecs.size(), ambient);
  for (std::size_t i = 0; i < vecs.size(); ++i) m.row(i) = vecs[i];
  return rank(m);
}

/// dim(span(u) ∩ span(v)), both inside Q^ambient.
inline std::size_t intersection_dim(const std::vector<SparseVec>& u,
                                    const std::vector<SparseVec>& v,
                                    std::size_t ambient) {
  std::vector<SparseVec> joint = u;
  joint.insert(joint.end(), v.begin(), v.end());
  std::size_t ru = span_rank(u, ambient);
  std::size_t rv = span_rank(v, ambient);
  std::size_t rj = span_rank(joint, ambient);
  return ru + rv - rj;
}

}  // namespace gfc

#endif
