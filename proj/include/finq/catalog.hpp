#pragma once

// Named matrix algebras and contraction families used by the CLI and tests.

#include "finq/liecore.hpp"

#include <string>
#include <vector>

namespace finq {

/// "so3", "h1", "spin21", "so4", "so3xso3", or "spin:<p>,<q>" (all L^{ab} of Cl(p,q)).
MatrixAlgebra<Rational> algebra_preset(const std::string& name);

std::vector<std::string> algebra_preset_names();

/// spin(2,1) from Cl(2,1): q = L^{13}, p = L^{12}, r = L^{23}, so that
/// [q,p] = r, [p,r] = q, [q,r] = p.
MatrixAlgebra<Rational> spin21_algebra();

/// "spin21-to-h1": exponents (1/2, 1/2, 1) on (q, p, r).
/// "so4-to-iso3": rotations L^{ab} (a,b <= 3) fixed, L^{a4} with exponent 1.
ContractionFamily contraction_preset(const std::string& name);

std::vector<std::string> contraction_preset_names();

}  // namespace finq
