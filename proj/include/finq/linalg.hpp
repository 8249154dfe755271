#pragma once

// Small dense linear-algebra kernels that work for both exact (Rational) and
// floating (double) scalars. Exact mode never rounds: pivots are tested for
// exact zero. Float mode treats |x| <= tol as zero.

#include "finq/scalar.hpp"

#include <type_traits>
#include <utility>
#include <vector>

namespace finq {

template <typename Scalar>
struct RowEchelon {
  Mat<Scalar> reduced;                 // reduced row echelon form
  std::vector<Eigen::Index> pivots;    // pivot column of each nonzero row
  std::vector<Eigen::Index> row_order; // original row index of each reduced row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

template <typename Scalar>
RowEchelon<Scalar> row_reduce(Mat<Scalar> m, double tol = kDefaultTolerance) {
  using T = ScalarTraits<Scalar>;
  RowEchelon<Scalar> out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  out.row_order.resize(rows);
  for (Eigen::Index i = 0; i < rows; ++i) out.row_order[i] = i;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index pivot = -1;
    if constexpr (T::exact) {
      for (Eigen::Index i = r; i < rows; ++i)
        if (m(i, c) != 0) { pivot = i; break; }
    } else {
      double best = tol;
      for (Eigen::Index i = r; i < rows; ++i)
        if (std::abs(m(i, c)) > best) { best = std::abs(m(i, c)); pivot = i; }
    }
    if (pivot < 0) continue;
    m.row(r).swap(m.row(pivot));
    std::swap(out.row_order[r], out.row_order[pivot]);
    const Scalar inv = Scalar(1) / m(r, c);
    m.row(r) *= inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || T::is_zero(m(i, c), 0.0)) continue;
      const Scalar f = m(i, c);
      m.row(i) -= f * m.row(r);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename Scalar>
Eigen::Index rank(const Mat<Scalar>& m, double tol = kDefaultTolerance) {
  return row_reduce(m, tol).rank();
}

template <typename Scalar>
Scalar determinant(Mat<Scalar> m, double tol = kDefaultTolerance) {
  using T = ScalarTraits<Scalar>;
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  const Eigen::Index n = m.rows();
  Scalar det = 1;
  for (Eigen::Index c = 0; c < n; ++c) {
    Eigen::Index pivot = -1;
    if constexpr (T::exact) {
      for (Eigen::Index i = c; i < n; ++i)
        if (m(i, c) != 0) { pivot = i; break; }
    } else {
      double best = 0.0;
      for (Eigen::Index i = c; i < n; ++i)
        if (std::abs(m(i, c)) > best) { best = std::abs(m(i, c)); pivot = i; }
      if (best <= tol) pivot = -1;
    }
    if (pivot < 0) return Scalar(0);
    if (pivot != c) {
      m.row(c).swap(m.row(pivot));
      det = -det;
    }
    det *= m(c, c);
    for (Eigen::Index i = c + 1; i < n; ++i) {
      if (T::is_zero(m(i, c), 0.0)) continue;
      const Scalar f = m(i, c) / m(c, c);
      m.row(i).tail(n - c) -= f * m.row(c).tail(n - c);
    }
  }
  return det;
}

struct Inertia {
  std::size_t plus = 0;
  std::size_t minus = 0;
  std::size_t zero = 0;
  bool operator==(const Inertia&) const = default;
};

/// Sylvester inertia of a symmetric matrix by congruence diagonalization.
template <typename Scalar>
Inertia inertia(Mat<Scalar> m, double tol = kDefaultTolerance) {
  using T = ScalarTraits<Scalar>;
  const Eigen::Index n = m.rows();
  Inertia out;
  Eigen::Index k = 0;
  for (; k < n; ++k) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = k; i < n && pivot < 0; ++i)
      if (!T::is_zero(m(i, i), tol)) pivot = i;
    if (pivot < 0) {
      // Zero diagonal: combine two coordinates so that 2*m(i,j) lands on the diagonal.
      for (Eigen::Index i = k; i < n && pivot < 0; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
          if (!T::is_zero(m(i, j), tol)) {
            m.row(i) += m.row(j);
            m.col(i) += m.col(j);
            pivot = i;
            break;
          }
    }
    if (pivot < 0) break;  // remaining block is zero
    if (pivot != k) {
      m.row(k).swap(m.row(pivot));
      m.col(k).swap(m.col(pivot));
    }
    const Scalar d = m(k, k);
    if (d > 0) ++out.plus; else ++out.minus;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (T::is_zero(m(i, k), 0.0)) continue;
      const Scalar f = m(i, k) / d;
      m.row(i).tail(n - k) -= f * m.row(k).tail(n - k);
      m.col(i).tail(n - k) -= f * m.col(k).tail(n - k);
    }
  }
  out.zero = static_cast<std::size_t>(n - k);
  return out;
}

/// Expresses vectors in a fixed basis (the columns of `basis`). Exact mode picks
/// an invertible square row-subset once and reuses its inverse; float mode uses
/// a column-pivoted QR least-squares solve.
template <typename Scalar>
class BasisSolver {
 public:
  explicit BasisSolver(Mat<Scalar> basis, double tol = kDefaultTolerance)
      : basis_(std::move(basis)), tol_(tol) {
    const Eigen::Index k = basis_.cols();
    if constexpr (ScalarTraits<Scalar>::exact) {
      // Pivot rows of basis == pivot columns of basis^T.
      Mat<Scalar> bt = basis_.transpose();
      auto ech = row_reduce<Scalar>(bt, tol_);
      if (ech.rank() != k) throw DomainError("basis matrices are linearly dependent");
      rows_ = ech.pivots;
      Mat<Scalar> square(k, k);
      for (Eigen::Index i = 0; i < k; ++i) square.row(i) = basis_.row(rows_[i]);
      Mat<Scalar> aug(k, 2 * k);
      aug << square, Mat<Scalar>::Identity(k, k);
      auto inv = row_reduce<Scalar>(aug, tol_);
      inverse_ = inv.reduced.rightCols(k);
    } else {
      qr_ = basis_.colPivHouseholderQr();
      qr_.setThreshold(tol_);
      if (qr_.rank() != k) throw DomainError("basis matrices are linearly dependent");
    }
  }

  /// Coefficients c with basis * c ~= v; `residual` receives max |basis*c - v|.
  Vec<Scalar> solve(const Vec<Scalar>& v, Scalar* residual = nullptr) const {
    Vec<Scalar> c;
    if constexpr (ScalarTraits<Scalar>::exact) {
      Vec<Scalar> sub(static_cast<Eigen::Index>(rows_.size()));
      for (std::size_t i = 0; i < rows_.size(); ++i) sub(i) = v(rows_[i]);
      c = inverse_ * sub;
    } else {
      c = qr_.solve(v);
    }
    if (residual) {
      Mat<Scalar> diff = basis_ * c - v;
      *residual = max_abs<Scalar>(diff);
    }
    return c;
  }

  Eigen::Index dimension() const { return basis_.cols(); }

 private:
  Mat<Scalar> basis_;
  double tol_;
  std::vector<Eigen::Index> rows_;
  Mat<Scalar> inverse_;
  std::conditional_t<ScalarTraits<Scalar>::exact, char,
                     Eigen::ColPivHouseholderQR<Mat<Scalar>>>
      qr_{};
};

}  // namespace finq
