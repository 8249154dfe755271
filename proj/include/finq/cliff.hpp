#pragma once

// Real matrix representations of Cl(p,q) with entries in {-1,0,1}.
// Index convention: gammas 1..p square to +I, p+1..p+q square to -I.

#include "finq/liecore.hpp"

#include <string>
#include <vector>

namespace finq {

struct GammaSet {
  int p = 0;
  int q = 0;
  Eigen::Index dim = 1;
  std::vector<MatQ> gammas;  // gammas[a-1] is gamma^a
  std::vector<int> eta;      // +1 / -1 per gamma
  bool minimal = true;       // dim equals the smallest real module dimension
  std::string note;

  std::size_t size() const { return gammas.size(); }
  /// 1-based access, matching gamma^a.
  const MatQ& gamma(std::size_t a) const;
};

inline constexpr int kMaxCliffordGenerators = 10;

/// Smallest dimension of a real module of Cl(p,q) (Bott periodicity table).
Eigen::Index minimal_real_dimension(int p, int q);

/// Sign s with (gamma^top)^2 = s I, gamma^top = gamma^{p+q} ... gamma^1.
int top_square_sign(int p, int q);

/// Cl(p,q) = core Cl(p-m, q-m) tensored with m copies of Cl(1,1), m = min(p,q).
/// The core comes from a search over real Pauli strings at the minimal dimension.
GammaSet build_gammas(int p, int q);

/// Appends gamma^top as an extra generator (p+q even, so it anticommutes with all).
GammaSet with_top_element(const GammaSet& g);

/// (gamma^a gamma^b - gamma^b gamma^a)/2, 1-based indices, a != b.
MatQ antisym(const GammaSet& g, std::size_t a, std::size_t b);

/// gamma^{p+q} ... gamma^1 (identity for the empty set).
MatQ top_element(const GammaSet& g);

struct AnticommutationReport {
  std::size_t checked = 0;
  std::size_t exact = 0;
  bool ok() const { return checked == exact; }
};

/// Checks gamma^a gamma^b + gamma^b gamma^a = 2 eta^{ab} I for all a <= b.
AnticommutationReport check_anticommutation(const GammaSet& g);

/// The spin generators L^{ab} = antisym(a,b)/2 for a < b, labelled "L<a>.<b>"
/// (or "L<a><b>" when all indices are single digits).
MatrixAlgebra<Rational> spin_generators(const GammaSet& g);

std::string spin_label(std::size_t a, std::size_t b);

}  // namespace finq
