#ifndef NKOSZUL_LINALG_HPP
#define NKOSZUL_LINALG_HPP

// Exact dense linear algebra over F_p on Eigen integer matrices.
// Every matrix handed to these functions is expected to hold residues in
// [0, p); results are returned in the same normal form.

#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <stdexcept>
#include <vector>

#include "nkoszul/field.hpp"

namespace nkoszul {

using RowMajorMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct RrefResult {
  Matrix reduced;
  std::vector<Index> pivots;
  Index rank() const { return static_cast<Index>(pivots.size()); }
};

namespace detail {

// In-place reduced row echelon form with lowest-index pivoting.
inline std::vector<Index> rref_in_place(RowMajorMatrix& a, const PrimeField& f,
                                        Index pivot_limit = -1) {
  const Scalar p = f.modulus();
  const Index rows = a.rows(), cols = a.cols();
  const Index limit = pivot_limit < 0 ? cols : pivot_limit;
  std::vector<Index> pivots;
  Index row = 0;
  for (Index col = 0; col < limit && row < rows; ++col) {
    Index sel = -1;
    for (Index r = row; r < rows; ++r) {
      if (a(r, col) != 0) { sel = r; break; }
    }
    if (sel < 0) continue;
    if (sel != row) a.row(sel).swap(a.row(row));
    const Scalar s = f.inv(a(row, col));
    Scalar* prow = a.row(row).data();
    if (s != 1) {
      for (Index j = col; j < cols; ++j) prow[j] = (prow[j] * s) % p;
    }
    for (Index r = 0; r < rows; ++r) {
      if (r == row) continue;
      Scalar* q = a.row(r).data();
      const Scalar c = q[col];
      if (c == 0) continue;
      const Scalar m = p - c;
      for (Index j = col; j < cols; ++j) {
        if (prow[j] != 0) q[j] = (q[j] + m * prow[j]) % p;
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace detail

/// Canonical reduced row echelon form (lowest-index pivots).
template <typename Derived>
RrefResult rref(const Eigen::MatrixBase<Derived>& m, const PrimeField& f) {
  RowMajorMatrix a = f.reduce(m);
  auto pivots = detail::rref_in_place(a, f);
  return {Matrix(a), std::move(pivots)};
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m, const PrimeField& f) {
  RowMajorMatrix a = f.reduce(m);
  return static_cast<Index>(detail::rref_in_place(a, f).size());
}

/// Product mod p, chunked over the inner dimension so int64 never overflows.
template <typename DA, typename DB>
Matrix multiply(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b, const PrimeField& f) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimension mismatch");
  const Scalar p = f.modulus();
  const Scalar bound = (Scalar{1} << 62) / ((p - 1) * (p - 1) + 1);
  const Index chunk = std::max<Index>(1, static_cast<Index>(bound));
  const Index inner = a.cols();
  Matrix out = Matrix::Zero(a.rows(), b.cols());
  if (inner == 0 || out.size() == 0) return out;
  for (Index start = 0; start < inner; start += chunk) {
    const Index len = std::min(chunk, inner - start);
    out += a.middleCols(start, len) * b.middleRows(start, len);
    out = f.reduce(out);
  }
  return out;
}

/// A linear subspace of F_p^ambient, stored as the rows of its canonical RREF
/// basis. Equal subspaces have identical basis matrices.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(Index ambient_dim) : ambient_(ambient_dim), basis_(0, ambient_dim) {}

  /// Span of the rows of `rows`.
  template <typename Derived>
  static Subspace from_rows(const Eigen::MatrixBase<Derived>& rows, const PrimeField& f) {
    Subspace s(rows.cols());
    RowMajorMatrix a = f.reduce(rows);
    s.pivots_ = detail::rref_in_place(a, f);
    s.basis_ = a.topRows(static_cast<Index>(s.pivots_.size()));
    return s;
  }
  template <typename Derived>
  static Subspace from_columns(const Eigen::MatrixBase<Derived>& cols, const PrimeField& f) {
    return from_rows(cols.transpose(), f);
  }
  static Subspace full(Index ambient_dim) {
    Subspace s(ambient_dim);
    s.basis_ = Matrix::Identity(ambient_dim, ambient_dim);
    for (Index i = 0; i < ambient_dim; ++i) s.pivots_.push_back(i);
    return s;
  }

  Index ambient_dim() const { return ambient_; }
  Index dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  const Matrix& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }

  /// v minus its projection along the basis onto pivot coordinates; zero iff v is in the span.
  Vector residual(const Vector& v, const PrimeField& f) const {
    Vector r = f.reduce(v);
    for (Index i = 0; i < dim(); ++i) {
      const Scalar c = r(pivots_[i]);
      if (c == 0) continue;
      r = f.reduce(r - c * basis_.row(i).transpose());
    }
    return r;
  }
  bool contains(const Vector& v, const PrimeField& f) const {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace::contains: ambient mismatch");
    return residual(v, f).isZero();
  }
  /// Coordinates of a member vector with respect to the canonical basis.
  Vector coordinates(const Vector& v) const {
    Vector c(dim());
    for (Index i = 0; i < dim(); ++i) c(i) = v(pivots_[i]);
    return c;
  }
  /// Standard basis indices complementing the pivots (a canonical complement).
  std::vector<Index> non_pivots() const {
    std::vector<Index> out;
    std::size_t k = 0;
    for (Index j = 0; j < ambient_; ++j) {
      if (k < pivots_.size() && pivots_[k] == j) { ++k; continue; }
      out.push_back(j);
    }
    return out;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_.rows() == b.basis_.rows() && a.basis_ == b.basis_;
  }

 private:
  Index ambient_ = 0;
  Matrix basis_;
  std::vector<Index> pivots_;
};

/// {x : m x = 0}.
template <typename Derived>
Subspace kernel(const Eigen::MatrixBase<Derived>& m, const PrimeField& f) {
  RowMajorMatrix a = f.reduce(m);
  auto pivots = detail::rref_in_place(a, f);
  const Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c) if (!is_pivot[static_cast<std::size_t>(c)]) free_cols.push_back(c);
  Matrix gens = Matrix::Zero(static_cast<Index>(free_cols.size()), cols);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const Index fc = free_cols[k];
    gens(static_cast<Index>(k), fc) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      gens(static_cast<Index>(k), pivots[i]) = f.neg(a(static_cast<Index>(i), fc));
    }
  }
  return Subspace::from_rows(gens, f);
}

/// Nonzero entries of one row, by increasing column.
using SparseRow = std::vector<std::pair<Index, Scalar>>;

/// Kernel of a sparse system, one basis row per non-pivot column with a 1 there
/// (the rows `kernel` starts from, before canonicalising). Rows are eliminated
/// one at a time, so memory follows the fill of the echelon form instead of
/// rows times cols.
inline Matrix sparse_kernel_basis(const std::vector<SparseRow>& rows, Index cols, const PrimeField& f) {
  const Scalar p = f.modulus();
  const auto n = static_cast<std::size_t>(cols);
  std::vector<SparseRow> echelon;  // leading coefficient 1
  std::vector<Index> lead_row(n, -1);
  std::vector<Scalar> acc(n, 0);
  std::vector<char> touched(n, 0);
  std::vector<Index> seen;
  std::priority_queue<Index, std::vector<Index>, std::greater<>> queue;
  const auto touch = [&](Index c, Scalar v) {
    const auto k = static_cast<std::size_t>(c);
    if (!touched[k]) {
      touched[k] = 1;
      seen.push_back(c);
      queue.push(c);
    }
    acc[k] = (acc[k] + v) % p;
  };
  for (const auto& row : rows) {
    for (const auto& [c, v] : row) touch(c, f.reduce(v));
    SparseRow out;
    while (!queue.empty()) {
      const Index c = queue.top();
      queue.pop();
      const Scalar v = acc[static_cast<std::size_t>(c)];
      if (v == 0) continue;
      const Index e = lead_row[static_cast<std::size_t>(c)];
      if (e < 0) {
        out.emplace_back(c, v);
        continue;
      }
      // Entries of echelon[e] all sit at columns >= c.
      for (const auto& [c2, v2] : echelon[static_cast<std::size_t>(e)]) touch(c2, ((p - v) * v2) % p);
    }
    for (Index c : seen) {
      acc[static_cast<std::size_t>(c)] = 0;
      touched[static_cast<std::size_t>(c)] = 0;
    }
    seen.clear();
    if (out.empty()) continue;
    const Scalar s = f.inv(out.front().second);
    for (auto& [c, v] : out) v = (v * s) % p;
    lead_row[static_cast<std::size_t>(out.front().first)] = static_cast<Index>(echelon.size());
    echelon.push_back(std::move(out));
  }

  std::vector<Index> free_cols;
  for (Index c = 0; c < cols; ++c)
    if (lead_row[static_cast<std::size_t>(c)] < 0) free_cols.push_back(c);
  // Row c of x holds coordinate c of every basis vector.
  RowMajorMatrix x = RowMajorMatrix::Zero(cols, static_cast<Index>(free_cols.size()));
  for (std::size_t k = 0; k < free_cols.size(); ++k) x(free_cols[k], static_cast<Index>(k)) = 1;
  for (Index c = cols - 1; c >= 0; --c) {
    const Index e = lead_row[static_cast<std::size_t>(c)];
    if (e < 0) continue;
    const auto& row = echelon[static_cast<std::size_t>(e)];
    for (std::size_t i = 1; i < row.size(); ++i) {
      const Scalar m = p - row[i].second;
      x.row(c) = (x.row(c) + m * x.row(row[i].first)).unaryExpr([p](Scalar v) { return v % p; });
    }
  }
  return x.transpose();
}

/// Some x with a x = b (free variables zero), or nothing when inconsistent.
template <typename DA>
std::optional<Vector> solve(const Eigen::MatrixBase<DA>& a, const Vector& b, const PrimeField& f) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  RowMajorMatrix aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = f.reduce(a);
  aug.col(a.cols()) = f.reduce(b);
  auto pivots = detail::rref_in_place(aug, f);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  Vector x = Vector::Zero(a.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x(pivots[i]) = aug(static_cast<Index>(i), a.cols());
  return x;
}

/// Some X with a X = b, column by column, or nothing when any column is inconsistent.
template <typename DA, typename DB>
std::optional<Matrix> solve_matrix(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b,
                                   const PrimeField& f) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve_matrix: dimension mismatch");
  RowMajorMatrix aug(a.rows(), a.cols() + b.cols());
  aug.leftCols(a.cols()) = f.reduce(a);
  aug.rightCols(b.cols()) = f.reduce(b);
  auto pivots = detail::rref_in_place(aug, f);
  Matrix x = Matrix::Zero(a.cols(), b.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] >= a.cols()) return std::nullopt;
    x.row(pivots[i]) = aug.block(static_cast<Index>(i), a.cols(), 1, b.cols());
  }
  return x;
}

inline void require_same_ambient(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("subspace ambient dimension mismatch");
}

/// True iff inner is contained in outer.
inline bool subspace_contains(const Subspace& outer, const Subspace& inner, const PrimeField& f) {
  require_same_ambient(outer, inner);
  for (Index i = 0; i < inner.dim(); ++i) {
    if (!outer.contains(inner.basis().row(i).transpose(), f)) return false;
  }
  return true;
}

inline Subspace subspace_sum(const Subspace& a, const Subspace& b, const PrimeField& f) {
  require_same_ambient(a, b);
  Matrix stacked(a.dim() + b.dim(), a.ambient_dim());
  stacked << a.basis(), b.basis();
  return Subspace::from_rows(stacked, f);
}

inline Subspace subspace_intersect(const Subspace& a, const Subspace& b, const PrimeField& f) {
  require_same_ambient(a, b);
  // (s, t) with s A = t B  <=>  [A; -B]^T (s, t) = 0
  Matrix stacked(a.dim() + b.dim(), a.ambient_dim());
  stacked << a.basis(), f.reduce(Matrix(-b.basis()));
  Subspace rel = kernel(stacked.transpose(), f);
  Matrix coeffs = rel.basis().leftCols(a.dim());
  return Subspace::from_rows(multiply(coeffs, a.basis(), f), f);
}

/// Column space of m.
template <typename Derived>
Subspace image(const Eigen::MatrixBase<Derived>& m, const PrimeField& f) {
  return Subspace::from_columns(m, f);
}

}  // namespace nkoszul

#endif  // NKOSZUL_LINALG_HPP
