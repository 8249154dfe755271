#pragma once

// Yang quantum space-time generators built from spin matrices, and their
// contraction to the Heisenberg-Poincare algebra.
//
// Yang indices: mu = 1..D are space-time (D = 4, Lorentzian +,+,+,-), and two
// extra directions "5" and "6". Each Yang index is mapped to a gamma index of
// the underlying GammaSet. Generators, in order:
//   x^mu = L^{5 mu},  p^mu = L^{6 mu},  L^{mu nu} (mu < nu),  i = L^{65}
// with L^{ab} = (gamma^a gamma^b - gamma^b gamma^a) / 4.
// At size N the scaled generators are x/sqrt(N), p/sqrt(N), L and L^{65}/N, so
// every structure constant is an integer power of 1/N times a rational.

#include "finq/cliff.hpp"
#include "finq/liecore.hpp"

#include <string>
#include <vector>

namespace finq {

/// Symbolic unit X^chrone * E^erge; hbar is {1, 1}.
struct UnitTag {
  int chrone = 0;
  int erge = 0;
  bool operator==(const UnitTag&) const = default;
  UnitTag operator+(const UnitTag& o) const { return {chrone + o.chrone, erge + o.erge}; }
  std::string to_string() const;
};

inline constexpr UnitTag kHbar{1, 1};

struct YangFrame {
  GammaSet gammas;
  std::vector<std::size_t> mu;  // gamma index of each space-time direction
  std::size_t index5 = 0;       // gamma index playing "5"
  std::size_t index6 = 0;       // gamma index playing "6"
  std::vector<int> eta_mu;      // metric signs of the space-time directions
  MatrixAlgebra<Rational> generators;  // unscaled
  std::vector<UnitTag> units;
  StructureConstants<Rational> constants;

  std::size_t spacetime_dim() const { return mu.size(); }
  std::size_t x_index(std::size_t m) const { return m - 1; }
  std::size_t p_index(std::size_t m) const { return spacetime_dim() + m - 1; }
  /// Index of L^{m n}, m < n (1-based Yang indices).
  std::size_t l_index(std::size_t m, std::size_t n) const;
  std::size_t i_index() const { return generators.size() - 1; }
  /// Contraction exponents (1/2 on x and p, 0 on L, 1 on i).
  std::vector<Rational> exponents() const;
};

/// Builds the frame from explicit index choices; verifies closure exactly.
YangFrame build_yang(const GammaSet& g, std::vector<std::size_t> mu, std::size_t index5, std::size_t index6);

/// Picks mu = three positive gammas then one negative one; "5","6" are the next
/// two unused gammas of equal sign, positive pair preferred. Needs p >= 3, q >= 1, p+q >= 6.
YangFrame build_yang(int p, int q);

/// "yang-3-3" (Cl(4,4): so(3,3)), "yang-5-1" (Cl(4,4) plus its top element:
/// so(5,1)), "spin21" (toy Cl(2,1): x = L^{31}, p = L^{21}, i = L^{23}).
YangFrame build_yang_preset(const std::string& name);

/// Structure constants of the scaled generators at size N (exact).
StructureConstants<Rational> scaled_constants(const YangFrame& frame, const Rational& N);

/// Heisenberg-Poincare target in the same generator order, from its defining
/// relations: Lorentz brackets, [L^{mn}, x^r] = eta^{nr} x^m - eta^{mr} x^n
/// (same for p), [x^m, p^n] = eta^{mn} i, i central.
struct HpTarget {
  std::vector<int> eta_mu;
  StructureConstants<Rational> constants;
  std::vector<UnitTag> units;
};

HpTarget hp_target(const std::vector<int>& eta_mu);

struct CommutatorEntry {
  std::size_t i, j;
  std::vector<std::pair<std::size_t, Rational>> terms;  // (k, coefficient of generator k)
};

/// All pairwise commutators i < j of the scaled generators at size N.
std::vector<CommutatorEntry> commutator_table(const YangFrame& frame, const Rational& N);

struct HpPoint {
  Rational N;
  Rational max_deviation;  // max |c(N) - c_hp| over all brackets
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, Rational>> bracket_deviation;
  bool hbar_consistent = true;
};

struct HpContractionReport {
  ContractionReport contraction;
  HpTarget target;
  bool limit_matches_target = false;
  std::vector<HpPoint> points;
};

HpContractionReport contract_to_hp(const YangFrame& frame, const std::vector<Rational>& schedule);

/// Defect P = p - p_hat per generator in the adjoint representation: the
/// adjoint matrix of the canonical generator minus that of the scaled Yang
/// generator at the given N.
struct GaugeDefect {
  Rational N;
  std::vector<MatQ> defect;  // one per generator
  std::vector<Rational> norm;  // max-abs entry of each defect
  Rational max_norm;
};

GaugeDefect gauge_defect(const YangFrame& frame, const Rational& N);

/// Defect labelled by an ordered Yang index pair (a, b): the defect of the
/// generator L^{ab}, negated when (a, b) is the reverse of the stored order.
/// Indices: 1..D space-time, 5 and 6 the extra directions.
MatQ defect_for_pair(const YangFrame& frame, const GaugeDefect& d, std::size_t a, std::size_t b);

// ---------------------------------------------------------------------------

enum class Accumulator { feynman, penrose };

std::string to_string(Accumulator a);
Accumulator parse_accumulator(const std::string& name);

/// A step operator i^{imaginary} * matrix.
struct StepOperator {
  MatQ matrix;
  bool imaginary = false;
};

/// Feynman: gamma^direction of Cl(3,1) (1..4). Penrose: Pauli sigma^direction (1..3).
StepOperator step_operator(std::size_t direction, Accumulator kind);

struct SpectrumLine {
  long value = 0;          // eigenvalue is value (real) or value * i (imaginary)
  bool imaginary = false;
  std::uint64_t multiplicity = 0;
  bool operator==(const SpectrumLine&) const = default;
};

inline constexpr std::size_t kMaxAccumulationTerms = 12;

/// Spectrum of sum_{t=1..n} (step operator on tensor factor t).
std::vector<SpectrumLine> accumulate_coordinate(std::size_t direction, std::size_t n_terms, Accumulator kind);

/// Same, for a caller-supplied step operator.
std::vector<SpectrumLine> accumulate_spectrum(const StepOperator& step, std::size_t n_terms);

}  // namespace finq
