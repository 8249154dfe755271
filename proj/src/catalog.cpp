#include "finq/catalog.hpp"

#include "finq/cliff.hpp"

namespace finq {

namespace {

MatQ unit(Eigen::Index n, Eigen::Index r, Eigen::Index c) {
  MatQ m = MatQ::Zero(n, n);
  m(r, c) = 1;
  return m;
}

// E_ab - E_ba, 0-based.
MatQ rotation(Eigen::Index n, Eigen::Index a, Eigen::Index b) { return unit(n, a, b) - unit(n, b, a); }

MatrixAlgebra<Rational> so3() {
  // (L_i)_{jk} = -eps_{ijk}, so [L_i, L_j] = eps_{ijk} L_k.
  return MatrixAlgebra<Rational>::make({rotation(3, 2, 1), rotation(3, 0, 2), rotation(3, 1, 0)}, {"L1", "L2", "L3"});
}

MatrixAlgebra<Rational> so4() {
  std::vector<MatQ> basis;
  std::vector<std::string> labels;
  for (Eigen::Index a = 0; a < 4; ++a)
    for (Eigen::Index b = a + 1; b < 4; ++b) {
      basis.push_back(rotation(4, a, b));
      labels.push_back("L" + std::to_string(a + 1) + std::to_string(b + 1));
    }
  return MatrixAlgebra<Rational>::make(std::move(basis), std::move(labels));
}

}  // namespace

MatrixAlgebra<Rational> spin21_algebra() {
  const GammaSet g = build_gammas(2, 1);
  const auto L = [&](std::size_t a, std::size_t b) -> MatQ { return antisym(g, a, b) / Rational(2); };
  return MatrixAlgebra<Rational>::make({L(1, 3), L(1, 2), L(2, 3)}, {"q", "p", "r"});
}

MatrixAlgebra<Rational> algebra_preset(const std::string& name) {
  if (name == "so3") return so3();
  if (name == "h1") return MatrixAlgebra<Rational>::make({unit(3, 0, 1), unit(3, 1, 2), unit(3, 0, 2)}, {"q", "p", "z"});
  if (name == "spin21") return spin21_algebra();
  if (name == "so4") return so4();
  if (name == "so3xso3") {
    const auto a = so3();
    std::vector<MatQ> basis;
    std::vector<std::string> labels;
    for (int block = 0; block < 2; ++block)
      for (std::size_t i = 0; i < 3; ++i) {
        MatQ m = MatQ::Zero(6, 6);
        m.block(3 * block, 3 * block, 3, 3) = a.basis[i];
        basis.push_back(std::move(m));
        labels.push_back(a.labels[i] + (block ? "'" : ""));
      }
    return MatrixAlgebra<Rational>::make(std::move(basis), std::move(labels));
  }
  if (name.rfind("spin:", 0) == 0) {
    const auto comma = name.find(',');
    if (comma == std::string::npos) throw DomainError("spin preset must look like spin:<p>,<q>");
    int p = 0, q = 0;
    try {
      p = std::stoi(name.substr(5, comma - 5));
      q = std::stoi(name.substr(comma + 1));
    } catch (const std::exception&) {
      throw DomainError("spin preset must look like spin:<p>,<q>");
    }
    return spin_generators(build_gammas(p, q));
  }
  throw DomainError("unknown algebra preset '" + name + "'");
}

std::vector<std::string> algebra_preset_names() { return {"so3", "h1", "spin21", "so4", "so3xso3", "spin:<p>,<q>"}; }

ContractionFamily contraction_preset(const std::string& name) {
  if (name == "spin21-to-h1")
    return {spin21_algebra(), {Rational(1, 2), Rational(1, 2), Rational(1)}, ScheduleParameter::inverse_n};
  if (name == "so4-to-iso3") {
    auto alg = so4();
    std::vector<Rational> e;
    for (const auto& l : alg.labels) e.push_back(l.back() == '4' ? Rational(1) : Rational(0));
    return {std::move(alg), std::move(e), ScheduleParameter::inverse_n};
  }
  throw DomainError("unknown contraction preset '" + name + "' (spin21-to-h1, so4-to-iso3)");
}

std::vector<std::string> contraction_preset_names() { return {"spin21-to-h1", "so4-to-iso3"}; }

}  // namespace finq
