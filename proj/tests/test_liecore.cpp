#include "finq/catalog.hpp"
#include "finq/liecore.hpp"

#include <doctest.h>

#include <random>

using namespace finq;

namespace {

// Structure constants straight from commutators, solved coordinate-wise for
// bases of matrix units or rotations where each basis matrix owns a private entry.
Rational bracket_coefficient(const MatrixAlgebra<Rational>& alg, std::size_t i, std::size_t j, std::size_t k) {
  const MatQ c = alg.basis[i] * alg.basis[j] - alg.basis[j] * alg.basis[i];
  // Locate an entry where only basis element k is nonzero.
  for (Eigen::Index r = 0; r < c.rows(); ++r)
    for (Eigen::Index s = 0; s < c.cols(); ++s) {
      if (alg.basis[k](r, s) == 0) continue;
      bool private_entry = true;
      for (std::size_t o = 0; o < alg.size(); ++o) private_entry = private_entry && (o == k || alg.basis[o](r, s) == 0);
      if (private_entry) return c(r, s) / alg.basis[k](r, s);
    }
  FAIL("no private entry");
  return 0;
}

MatQ random_invertible(Eigen::Index n, std::mt19937_64& rng) {
  for (;;) {
    MatQ a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Rational(static_cast<int>(rng() % 5) - 2);
    if (determinant<Rational>(a) != 0) return a;
  }
}

}  // namespace

TEST_CASE("structure constants match private-entry commutators") {
  for (const std::string name : {"so3", "h1", "so4"}) {
    const auto alg = algebra_preset(name);
    const auto sc = structure_constants(alg);
    CHECK(sc.closure_residual == 0);
    for (std::size_t i = 0; i < alg.size(); ++i)
      for (std::size_t j = 0; j < alg.size(); ++j)
        for (std::size_t k = 0; k < alg.size(); ++k) CHECK(sc(i, j, k) == bracket_coefficient(alg, i, j, k));
  }
}

TEST_CASE("antisymmetry, Jacobi and bilinearity of the bracket") {
  std::mt19937_64 rng(2);
  for (const std::string name : {"so3", "h1", "spin21", "so4", "so3xso3", "spin:3,1"}) {
    const auto sc = structure_constants(algebra_preset(name));
    CHECK(jacobi_residual(sc) == 0);
    const auto n = static_cast<Eigen::Index>(sc.dim());
    for (std::size_t i = 0; i < sc.dim(); ++i)
      for (std::size_t j = 0; j < sc.dim(); ++j)
        for (std::size_t k = 0; k < sc.dim(); ++k) CHECK(sc(i, j, k) == -sc(j, i, k));
    VecQ u(n), v(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      u(i) = Rational(static_cast<int>(rng() % 7) - 3);
      v(i) = Rational(static_cast<int>(rng() % 7) - 3);
      w(i) = Rational(static_cast<int>(rng() % 7) - 3);
    }
    CHECK(bracket(sc, VecQ(u + v), w) == VecQ(bracket(sc, u, w) + bracket(sc, v, w)));
    CHECK(bracket(sc, VecQ(Rational(3) * u), w) == VecQ(Rational(3) * bracket(sc, u, w)));
  }
}

TEST_CASE("closure failure is reported") {
  // x and y do not close: [x, y] is outside their span.
  const MatQ x = (MatQ(2, 2) << 0, 1, 0, 0).finished();
  const MatQ y = (MatQ(2, 2) << 0, 0, 1, 0).finished();
  CHECK_THROWS_AS(structure_constants(MatrixAlgebra<Rational>::make({x, y}, {"x", "y"})), DomainError);
  CHECK_THROWS_AS(MatrixAlgebra<Rational>::make({x, x}, {"x", "x2"}), DomainError);
}

TEST_CASE("Killing dichotomy") {
  const auto so3 = structure_constants(algebra_preset("so3"));
  CHECK(killing_form(so3) == MatQ(-2 * MatQ::Identity(3, 3)));
  const auto r = is_semisimple(so3);
  CHECK(r.semisimple);
  CHECK(r.determinant == -8);
  CHECK(r.killing_signature == Inertia{0, 3, 0});

  const auto h1 = is_semisimple(structure_constants(algebra_preset("h1")));
  CHECK_FALSE(h1.semisimple);
  CHECK(h1.determinant == 0);
  CHECK(killing_form(structure_constants(algebra_preset("h1"))).isZero(0));

  const auto so4 = is_semisimple(structure_constants(algebra_preset("so4")));
  CHECK(so4.semisimple);
  CHECK(so4.killing_signature == Inertia{0, 6, 0});
  const auto s21 = is_semisimple(structure_constants(algebra_preset("spin21")));
  CHECK(s21.semisimple);
  CHECK(s21.killing_signature == Inertia{2, 1, 0});
}

TEST_CASE("Killing form transforms by congruence under a change of basis") {
  std::mt19937_64 rng(4);
  for (const std::string name : {"so3", "spin21", "h1", "so4"}) {
    const auto alg = algebra_preset(name);
    const auto k = killing_form(structure_constants(alg));
    for (int t = 0; t < 3; ++t) {
      const MatQ a = random_invertible(static_cast<Eigen::Index>(alg.size()), rng);
      const auto k2 = killing_form(structure_constants(change_basis(alg, a)));
      CHECK(k2 == MatQ(a * k * a.transpose()));
      CHECK(inertia<Rational>(k2) == inertia<Rational>(k));
    }
  }
}

TEST_CASE("classification") {
  CHECK(classify(structure_constants(algebra_preset("so3"))) == AlgebraClass::semisimple);
  CHECK(classify(structure_constants(algebra_preset("h1"))) == AlgebraClass::nilpotent);
  CHECK(classify(structure_constants(algebra_preset("so3xso3"))) == AlgebraClass::semisimple);
  const MatQ d1 = (MatQ(2, 2) << 1, 0, 0, 0).finished();
  const MatQ d2 = (MatQ(2, 2) << 0, 0, 0, 1).finished();
  CHECK(classify(structure_constants(MatrixAlgebra<Rational>::make({d1, d2}, {"a", "b"}))) == AlgebraClass::abelian);
  // Affine line: [h, e] = e.
  const MatQ h = (MatQ(2, 2) << 1, 0, 0, 0).finished();
  const MatQ e = (MatQ(2, 2) << 0, 1, 0, 0).finished();
  CHECK(classify(structure_constants(MatrixAlgebra<Rational>::make({h, e}, {"h", "e"}))) == AlgebraClass::solvable);
  CHECK(derived_series(structure_constants(algebra_preset("h1"))) == std::vector<std::size_t>{3, 1, 0});
}

TEST_CASE("float structure constants agree with exact ones") {
  const auto exact = algebra_preset("so4");
  std::vector<Mat<double>> basis;
  for (const auto& m : exact.basis) basis.push_back(m.cast<double>());
  const auto fsc = structure_constants(MatrixAlgebra<double>::make(std::move(basis), exact.labels));
  const auto qsc = structure_constants(exact);
  for (std::size_t i = 0; i < qsc.dim(); ++i)
    for (std::size_t j = 0; j < qsc.dim(); ++j)
      for (std::size_t k = 0; k < qsc.dim(); ++k)
        CHECK(fsc(i, j, k) == doctest::Approx(qsc(i, j, k).convert_to<double>()).epsilon(1e-12));
  const auto fr = is_semisimple(fsc);
  CHECK(fr.semisimple);
  CHECK(fr.condition.has_value());
}

TEST_CASE("spin(2,1) contracts to h(1) with 1/N deviations") {
  const auto rep = contract(contraction_preset("spin21-to-h1"), {Rational(1000), Rational(1000000)});
  CHECK(rep.limit == structure_constants(algebra_preset("h1")));
  CHECK(rep.limit_class == AlgebraClass::nilpotent);
  CHECK(rep.limit_killing.determinant == 0);
  CHECK(rep.original_killing.semisimple);
  CHECK(rep.symbolic_order == 1);
  REQUIRE(rep.points.size() == 2);
  for (const auto& pt : rep.points) {
    REQUIRE(pt.max_deviation_exact.has_value());
    CHECK(*pt.max_deviation_exact == 1 / pt.parameter);
    CHECK(pt.brackets.size() == 2);
    for (const auto& b : pt.brackets) CHECK(b.exact == 1 / pt.parameter);
    CHECK(pt.numeric_max_relative_error <= 1e-9);
  }
  REQUIRE(rep.convergence_order.has_value());
  CHECK(*rep.convergence_order == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("so(4) contracts to iso(3)") {
  const auto rep = contract(contraction_preset("so4-to-iso3"), {Rational(10), Rational(100)});
  CHECK_FALSE(rep.limit_killing.semisimple);
  CHECK(rep.limit_killing.determinant == 0);
  CHECK(rep.limit_class == AlgebraClass::mixed);
  CHECK(jacobi_residual(rep.limit) == 0);
}

TEST_CASE("contraction input validation") {
  auto fam = contraction_preset("spin21-to-h1");
  CHECK_THROWS_AS(contract(fam, {Rational(0)}), DomainError);
  fam.exponents.pop_back();
  CHECK_THROWS_AS(contract(fam, {Rational(10)}), DomainError);
}
