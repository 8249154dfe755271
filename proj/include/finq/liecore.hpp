#pragma once

// Lie algebras given by explicit matrix bases: structure constants, Jacobi
// residual, Killing form, Cartan's semisimplicity test, derived/lower central
// series, and scaled contraction families.

#include "finq/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace finq {

template <typename Scalar>
struct MatrixAlgebra {
  std::vector<Mat<Scalar>> basis;
  std::vector<std::string> labels;
  double tol = kDefaultTolerance;

  std::size_t size() const { return basis.size(); }
  Eigen::Index matrix_dim() const { return basis.empty() ? 0 : basis.front().rows(); }

  /// Validates shapes, label count, and linear independence.
  static MatrixAlgebra make(std::vector<Mat<Scalar>> basis, std::vector<std::string> labels = {},
                            double tol = kDefaultTolerance) {
    MatrixAlgebra alg{std::move(basis), std::move(labels), tol};
    if (alg.labels.empty())
      for (std::size_t i = 0; i < alg.basis.size(); ++i) alg.labels.push_back("X" + std::to_string(i + 1));
    if (alg.labels.size() != alg.basis.size()) throw DomainError("one label per basis matrix");
    for (const auto& m : alg.basis)
      if (m.rows() != alg.matrix_dim() || m.cols() != alg.matrix_dim())
        throw DomainError("basis matrices must be square and of equal size");
    if (!alg.basis.empty() && rank<Scalar>(alg.flattened(), tol) != static_cast<Eigen::Index>(alg.size()))
      throw DomainError("basis matrices are linearly dependent");
    return alg;
  }

  /// d^2 x k matrix whose columns are the vectorized basis elements.
  Mat<Scalar> flattened() const {
    const Eigen::Index d = matrix_dim();
    Mat<Scalar> out(d * d, static_cast<Eigen::Index>(size()));
    for (std::size_t i = 0; i < size(); ++i)
      out.col(static_cast<Eigen::Index>(i)) = Eigen::Map<const Vec<Scalar>>(basis[i].data(), d * d);
    return out;
  }
};

/// c(i, j, k) is the coefficient of X_k in [X_i, X_j].
template <typename Scalar>
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim, std::vector<std::string> labels = {})
      : dim_(dim), data_(dim * dim * dim, Scalar(0)), labels_(std::move(labels)) {
    if (labels_.empty())
      for (std::size_t i = 0; i < dim; ++i) labels_.push_back("X" + std::to_string(i + 1));
  }

  std::size_t dim() const { return dim_; }
  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * dim_ + j) * dim_ + k]; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Sets c(i,j,.) = v and c(j,i,.) = -v.
  void set_bracket(std::size_t i, std::size_t j, std::size_t k, const Scalar& v) {
    (*this)(i, j, k) = v;
    (*this)(j, i, k) = -v;
  }

  Scalar closure_residual = Scalar(0);

  bool operator==(const StructureConstants& o) const { return dim_ == o.dim_ && data_ == o.data_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Scalar> data_;
  std::vector<std::string> labels_;
};

template <typename Scalar>
StructureConstants<Scalar> structure_constants(const MatrixAlgebra<Scalar>& alg) {
  const std::size_t k = alg.size();
  StructureConstants<Scalar> sc(k, alg.labels);
  if (k == 0) return sc;
  const Eigen::Index d = alg.matrix_dim();
  BasisSolver<Scalar> solver(alg.flattened(), alg.tol);
  Scalar worst = 0;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) {
      Mat<Scalar> br = commutator(alg.basis[i], alg.basis[j]);
      Vec<Scalar> v = Eigen::Map<const Vec<Scalar>>(br.data(), d * d);
      Scalar residual;
      Vec<Scalar> c = solver.solve(v, &residual);
      if (residual > worst) worst = residual;
      for (std::size_t m = 0; m < k; ++m) sc.set_bracket(i, j, m, c(static_cast<Eigen::Index>(m)));
    }
  sc.closure_residual = worst;
  if (!ScalarTraits<Scalar>::is_zero(worst, alg.tol))
    throw DomainError("basis does not close under commutation (residual " + format_scalar(worst) + ")");
  return sc;
}

/// max over i,j,k,l of |sum_m c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj|.
template <typename Scalar>
Scalar jacobi_residual(const StructureConstants<Scalar>& sc) {
  const std::size_t n = sc.dim();
  Scalar worst = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Scalar acc = 0;
          for (std::size_t m = 0; m < n; ++m)
            acc += sc(i, j, m) * sc(m, k, l) + sc(j, k, m) * sc(m, i, l) + sc(k, i, m) * sc(m, j, l);
          Scalar a = ScalarTraits<Scalar>::abs(acc);
          if (a > worst) worst = a;
        }
  return worst;
}

/// Matrix of ad X_i in the basis: (ad X_i)(k, j) = c^k_ij.
template <typename Scalar>
Mat<Scalar> ad_matrix(const StructureConstants<Scalar>& sc, std::size_t i) {
  const auto n = static_cast<Eigen::Index>(sc.dim());
  Mat<Scalar> ad(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) ad(k, j) = sc(i, j, k);
  return ad;
}

/// K_ij = trace(ad X_i ad X_j).
template <typename Scalar>
Mat<Scalar> killing_form(const StructureConstants<Scalar>& sc) {
  const auto n = static_cast<Eigen::Index>(sc.dim());
  std::vector<Mat<Scalar>> ad;
  for (Eigen::Index i = 0; i < n; ++i) ad.push_back(ad_matrix(sc, i));
  Mat<Scalar> k(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i; j < n; ++j) {
      Scalar t = (ad[i].cwiseProduct(ad[j].transpose())).sum();
      k(i, j) = t;
      k(j, i) = t;
    }
  return k;
}

template <typename Scalar>
struct SemisimplicityReport {
  bool semisimple = false;
  Scalar determinant = Scalar(0);
  Eigen::Index killing_rank = 0;
  Inertia killing_signature;
  /// Float mode only: condition number of K and a note on its reliability.
  std::optional<double> condition;
  std::string caveat;
};

template <typename Scalar>
SemisimplicityReport<Scalar> is_semisimple(const StructureConstants<Scalar>& sc,
                                           double tol = kDefaultTolerance) {
  SemisimplicityReport<Scalar> r;
  const Mat<Scalar> k = killing_form(sc);
  r.determinant = determinant<Scalar>(k, tol);
  r.killing_rank = rank<Scalar>(k, tol);
  r.killing_signature = inertia<Scalar>(k, tol);
  r.semisimple = r.killing_rank == k.rows();
  if constexpr (!ScalarTraits<Scalar>::exact) {
    if (k.rows() > 0) {
      Eigen::JacobiSVD<Mat<Scalar>> svd(k);
      const auto& s = svd.singularValues();
      const double smax = s(0), smin = s(s.size() - 1);
      r.condition = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
      r.caveat = "float verdict: rank decided at tolerance " + format_scalar(tol) +
                 ", condition number " + format_scalar(*r.condition);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Derived and lower central series on coordinate vectors.

template <typename Scalar>
Vec<Scalar> bracket(const StructureConstants<Scalar>& sc, const Vec<Scalar>& u, const Vec<Scalar>& v) {
  const std::size_t n = sc.dim();
  Vec<Scalar> out = Vec<Scalar>::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (u(i) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v(j) == 0) continue;
      const Scalar w = u(i) * v(j);
      for (std::size_t k = 0; k < n; ++k)
        if (sc(i, j, k) != 0) out(k) += w * sc(i, j, k);
    }
  }
  return out;
}

namespace detail {

/// Rows of the returned matrix form a basis of the span of `vectors`' columns.
template <typename Scalar>
Mat<Scalar> span_rows(const std::vector<Vec<Scalar>>& vectors, Eigen::Index n, double tol) {
  if (vectors.empty()) return Mat<Scalar>(0, n);
  Mat<Scalar> m(static_cast<Eigen::Index>(vectors.size()), n);
  for (std::size_t i = 0; i < vectors.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = vectors[i].transpose();
  auto ech = row_reduce<Scalar>(m, tol);
  return ech.reduced.topRows(ech.rank());
}

}  // namespace detail

/// Dimensions of g, [g,g], [[g,g],[g,g]], ... until stable.
template <typename Scalar>
std::vector<std::size_t> derived_series(const StructureConstants<Scalar>& sc, double tol = kDefaultTolerance) {
  const auto n = static_cast<Eigen::Index>(sc.dim());
  Mat<Scalar> cur = Mat<Scalar>::Identity(n, n);
  std::vector<std::size_t> dims{static_cast<std::size_t>(n)};
  while (cur.rows() > 0) {
    std::vector<Vec<Scalar>> br;
    for (Eigen::Index a = 0; a < cur.rows(); ++a)
      for (Eigen::Index b = a + 1; b < cur.rows(); ++b)
        br.push_back(bracket<Scalar>(sc, cur.row(a).transpose(), cur.row(b).transpose()));
    Mat<Scalar> next = detail::span_rows<Scalar>(br, n, tol);
    if (next.rows() == cur.rows()) break;
    cur = std::move(next);
    dims.push_back(static_cast<std::size_t>(cur.rows()));
  }
  return dims;
}

/// Dimensions of g, [g,g], [g,[g,g]], ... until stable.
template <typename Scalar>
std::vector<std::size_t> lower_central_series(const StructureConstants<Scalar>& sc,
                                              double tol = kDefaultTolerance) {
  const auto n = static_cast<Eigen::Index>(sc.dim());
  const Mat<Scalar> id = Mat<Scalar>::Identity(n, n);
  Mat<Scalar> cur = id;
  std::vector<std::size_t> dims{static_cast<std::size_t>(n)};
  while (cur.rows() > 0) {
    std::vector<Vec<Scalar>> br;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < cur.rows(); ++b)
        br.push_back(bracket<Scalar>(sc, id.row(a).transpose(), cur.row(b).transpose()));
    Mat<Scalar> next = detail::span_rows<Scalar>(br, n, tol);
    if (next.rows() == cur.rows()) break;
    cur = std::move(next);
    dims.push_back(static_cast<std::size_t>(cur.rows()));
  }
  return dims;
}

enum class AlgebraClass { zero, abelian, nilpotent, solvable, semisimple, mixed };

std::string to_string(AlgebraClass c);

template <typename Scalar>
AlgebraClass classify(const StructureConstants<Scalar>& sc, double tol = kDefaultTolerance) {
  if (sc.dim() == 0) return AlgebraClass::zero;
  const auto lower = lower_central_series(sc, tol);
  if (lower.size() > 1 && lower[1] == 0) return AlgebraClass::abelian;
  if (is_semisimple(sc, tol).semisimple) return AlgebraClass::semisimple;
  if (lower.back() == 0) return AlgebraClass::nilpotent;
  if (derived_series(sc, tol).back() == 0) return AlgebraClass::solvable;
  return AlgebraClass::mixed;
}

/// Basis change X'_a = sum_b A(a,b) X_b applied to a matrix algebra.
template <typename Scalar>
MatrixAlgebra<Scalar> change_basis(const MatrixAlgebra<Scalar>& alg, const Mat<Scalar>& a) {
  std::vector<Mat<Scalar>> out;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    Mat<Scalar> m = Mat<Scalar>::Zero(alg.matrix_dim(), alg.matrix_dim());
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) m += a(i, j) * alg.basis[static_cast<std::size_t>(j)];
    out.push_back(std::move(m));
  }
  return MatrixAlgebra<Scalar>::make(std::move(out), {}, alg.tol);
}

// ---------------------------------------------------------------------------
// Contractions X_i(eps) = eps^{d_i} X_i. Then c^k_ij(eps) = eps^{d_i+d_j-d_k} c^k_ij,
// so limits are read off symbolically from the exponents.

enum class ScheduleParameter { epsilon, inverse_n };

struct ContractionFamily {
  MatrixAlgebra<Rational> algebra;
  std::vector<Rational> exponents;
  ScheduleParameter parameter = ScheduleParameter::inverse_n;
};

/// A structure constant as a monomial coefficient * eps^exponent.
struct ScaledConstant {
  std::size_t i, j, k;
  Rational coefficient;
  Rational exponent;
};

struct BracketDeviation {
  std::size_t i, j;
  double value = 0.0;
  std::optional<Rational> exact;  // present when every contributing exponent is an integer
};

struct SchedulePoint {
  Rational parameter;  // as given (N or eps)
  Rational epsilon;
  std::vector<BracketDeviation> brackets;  // only brackets with nonzero deviation
  double max_deviation = 0.0;
  std::optional<Rational> max_deviation_exact;
  /// Float cross-check: structure constants recomputed from scaled double
  /// matrices, compared with the monomial values.
  double numeric_max_relative_error = 0.0;
  double numeric_max_absolute_error = 0.0;
};

struct ContractionReport {
  std::vector<ScaledConstant> monomials;
  StructureConstants<Rational> original;
  StructureConstants<Rational> limit;
  std::vector<SchedulePoint> points;
  std::optional<double> convergence_order;  // from the last two schedule points
  Rational symbolic_order = 0;               // smallest positive exponent (0 if none)
  AlgebraClass limit_class = AlgebraClass::zero;
  SemisimplicityReport<Rational> limit_killing;
  SemisimplicityReport<Rational> original_killing;
};

ContractionReport contract(const ContractionFamily& family, const std::vector<Rational>& schedule);

/// Scaled constants at one parameter value evaluated exactly (integer exponents)
/// or in double otherwise.
double scaled_value(const ScaledConstant& m, const Rational& epsilon);

}  // namespace finq
