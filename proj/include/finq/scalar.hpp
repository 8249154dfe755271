#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace finq {

using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatQ = Mat<Rational>;
using VecQ = Vec<Rational>;

/// Domain error raised by the algebra modules (bad input, guard exceeded, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic policy per scalar type. Exact scalars compare to zero exactly;
/// floating scalars use an absolute tolerance.
template <typename Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double = 0.0) { return x == 0; }
  static double to_double(const Rational& x) { return x.convert_to<double>(); }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol) { return std::abs(x) <= tol; }
  static double to_double(double x) { return x; }
  static double abs(double x) { return std::abs(x); }
};

inline constexpr double kDefaultTolerance = 1e-12;

/// "num/den" for exact values (denominator always printed).
inline std::string format_scalar(const Rational& x) {
  return boost::multiprecision::numerator(x).str() + "/" +
         boost::multiprecision::denominator(x).str();
}

/// 17 significant digits, enough to round-trip a double.
inline std::string format_scalar(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Parses "n", "n/d", or a decimal literal such as "1e3" / "0.25" exactly.
Rational parse_rational(const std::string& text);

template <typename Scalar>
Mat<Scalar> commutator(const Mat<Scalar>& a, const Mat<Scalar>& b) {
  return a * b - b * a;
}

/// Largest absolute entry; 0 for an empty matrix.
template <typename Scalar>
Scalar max_abs(const Mat<Scalar>& m) {
  Scalar best = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      Scalar v = ScalarTraits<Scalar>::abs(m(i, j));
      if (v > best) best = v;
    }
  return best;
}

}  // namespace finq
