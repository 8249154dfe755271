#pragma once

// Finite oscillator pairs inside spin(3) and spin(2,1) irreps, their Bose
// limit, and a PBW normal-ordering rewriter for polynomials in Lie generators.
//
// Irreps use the rational ladder basis |m>, m = -j..j (index n = j + m):
//   J+ |m> = |m+1>,   J- |m> = (j+m)(j-m+1) |m-1>,   Jz |m> = m |m>.
// It is similar to the unitary one but keeps every entry rational.

#include "finq/scalar.hpp"

#include <Eigen/Sparse>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace finq {

using SpMatQ = Eigen::SparseMatrix<Rational>;

/// Drops explicit zeros.
void prune_zeros(SpMatQ& m);

/// A + B sqrt(d), with A, B rational and d a positive non-square rational
/// (B is kept zero when d is a perfect square).
struct SurdMatrix {
  SpMatQ rational;
  SpMatQ surd;
  Rational d = 1;

  Eigen::Index rows() const { return rational.rows(); }
  bool is_zero() const { return rational.nonZeros() == 0 && surd.nonZeros() == 0; }
  bool is_rational() const { return surd.nonZeros() == 0; }
};

SurdMatrix operator*(const SurdMatrix& x, const SurdMatrix& y);
SurdMatrix operator-(const SurdMatrix& x, const SurdMatrix& y);

/// Re + i Im.
struct ComplexMatrix {
  SpMatQ re;
  SpMatQ im;
};

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y);
ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y);
bool operator==(const ComplexMatrix& x, const ComplexMatrix& y);
/// Multiplication by i.
ComplexMatrix times_i(const ComplexMatrix& x);

enum class OscillatorPreset { spin3, spin21 };

std::string to_string(OscillatorPreset p);
OscillatorPreset parse_oscillator_preset(const std::string& name);

inline constexpr Eigen::Index kMaxIrrepDimension = 2048;

struct PalevOscillator {
  OscillatorPreset preset = OscillatorPreset::spin3;
  Rational j;
  Eigen::Index dim = 0;
  Rational N;  // 2j
  /// spin3: q = Jx, p = Jy, r = Jz with [q,p] = i r, [p,r] = i q, [r,q] = i p.
  /// spin21: q = -(J+ + J-)/2, p = (J+ - J-)/2, r = Jz with [q,p] = r, [p,r] = q, [q,r] = p.
  ComplexMatrix q, p, r;
  /// a = J-/sqrt(N), a+ = J+/sqrt(N); [a, a+] = -Jz/j, the identity at the bottom weight.
  SurdMatrix a, a_dag;
};

/// j is a non-negative half-integer with 2j+1 <= kMaxIrrepDimension.
/// All preset relations are verified exactly before returning.
PalevOscillator build_oscillator(OscillatorPreset preset, const Rational& j);

struct BoseDeviation {
  Rational norm_squared;
  double norm = 0.0;
  std::optional<Rational> exact;  // present when the norm is rational
};

/// |([a, a+] - I)|n>| for the n-th weight vector from the bottom, 0 <= n <= 2j.
BoseDeviation bose_deviation(const PalevOscillator& osc, std::size_t n);

/// Largest k with (a+)^k != 0, found by taking powers.
std::size_t exclusion_bound(const PalevOscillator& osc);

SurdMatrix power(const SurdMatrix& m, std::size_t k);

// ---------------------------------------------------------------------------
// Noncommutative polynomials.

struct Gaussian {
  Rational re = 0;
  Rational im = 0;
  bool is_zero() const { return re == 0 && im == 0; }
  bool operator==(const Gaussian&) const = default;
  Gaussian operator+(const Gaussian& o) const { return {re + o.re, im + o.im}; }
  Gaussian operator-(const Gaussian& o) const { return {re - o.re, im - o.im}; }
  Gaussian operator-() const { return {-re, -im}; }
  Gaussian operator*(const Gaussian& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
  std::string to_string() const;
};

using Word = std::vector<std::size_t>;

/// Lie relations [g_a, g_b] = sum_k c_k g_k + central, a < b, in a fixed
/// generator order. Missing pairs commute.
class RelationSet {
 public:
  struct Bracket {
    std::vector<std::pair<std::size_t, Gaussian>> linear;
    Gaussian central;
  };

  /// Validates antisymmetric completion and the Jacobi identity; a failure
  /// would make normal forms depend on the rewrite order, so it is rejected.
  RelationSet(std::string name, std::vector<std::string> generators, std::map<std::pair<std::size_t, std::size_t>, Bracket> brackets);

  static RelationSet preset(const std::string& name);  // "h1", "spin3", "spin21"

  const std::string& name() const { return name_; }
  const std::vector<std::string>& generators() const { return generators_; }
  std::size_t index_of(const std::string& g) const;
  /// [g_a, g_b] for any a, b.
  Bracket bracket(std::size_t a, std::size_t b) const;

 private:
  std::string name_;
  std::vector<std::string> generators_;
  std::map<std::pair<std::size_t, std::size_t>, Bracket> brackets_;
};

class NCPolynomial {
 public:
  NCPolynomial() = default;
  static NCPolynomial word(Word w, Gaussian c = {1, 0});

  /// Parses sums of terms such as "p q r - q p r", "2*q p", "i hbar", "(1/2) q".
  static NCPolynomial parse(const std::string& text, const RelationSet& rel);

  const std::map<Word, Gaussian>& terms() const { return terms_; }
  void add(const Word& w, const Gaussian& c);
  bool operator==(const NCPolynomial& o) const { return terms_ == o.terms_; }
  NCPolynomial operator+(const NCPolynomial& o) const;
  NCPolynomial operator-(const NCPolynomial& o) const;
  NCPolynomial operator*(const Gaussian& c) const;
  std::string to_string(const RelationSet& rel) const;

 private:
  std::map<Word, Gaussian> terms_;
};

/// Rewrites every word into non-decreasing generator order.
NCPolynomial normal_order(const NCPolynomial& poly, const RelationSet& rel);

/// Dense complex evaluation with a matrix per generator (re, im parts).
struct DenseComplex {
  MatQ re;
  MatQ im;
  bool operator==(const DenseComplex& o) const { return re == o.re && im == o.im; }
};

DenseComplex evaluate(const NCPolynomial& poly, const std::vector<DenseComplex>& generators);

/// A faithful representation of the preset's Lie algebra: j = 1 irreps for
/// spin3 / spin21, strictly upper triangular 3x3 matrices for h1.
std::vector<DenseComplex> preset_representation(const RelationSet& rel);

}  // namespace finq
