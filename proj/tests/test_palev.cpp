#include "finq/palev.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace finq;

namespace {

MatQ dense(const SpMatQ& m) { return MatQ(m); }

NCPolynomial product(const NCPolynomial& a, const NCPolynomial& b) {
  NCPolynomial out;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, ca * cb);
    }
  return out;
}

NCPolynomial random_poly(std::size_t gens, std::mt19937_64& rng) {
  NCPolynomial p;
  const std::size_t terms = 1 + rng() % 3;
  for (std::size_t t = 0; t < terms; ++t) {
    Word w(rng() % 4);
    for (auto& g : w) g = rng() % gens;
    p.add(w, Gaussian{Rational(static_cast<int>(rng() % 5) - 2), Rational(static_cast<int>(rng() % 3) - 1)});
  }
  return p;
}

bool is_sorted_words(const NCPolynomial& p) {
  for (const auto& [w, c] : p.terms())
    if (!std::is_sorted(w.begin(), w.end())) return false;
  return true;
}

}  // namespace

TEST_CASE("oscillator relations in the ladder basis") {
  for (const Rational& j : {Rational(1, 2), Rational(1), Rational(5, 2), Rational(4)}) {
    const auto s21 = build_oscillator(OscillatorPreset::spin21, j);
    const MatQ q = dense(s21.q.re), p = dense(s21.p.re), r = dense(s21.r.re);
    CHECK(MatQ(q * p - p * q) == r);
    CHECK(MatQ(p * r - r * p) == q);
    CHECK(MatQ(q * r - r * q) == p);
    const auto s3 = build_oscillator(OscillatorPreset::spin3, j);
    CHECK(s3.dim == (2 * j + 1).convert_to<Eigen::Index>());
    // Casimir q^2 + p^2 + r^2 = j(j+1), with p purely imaginary.
    const MatQ qq = dense(s3.q.re), pi = dense(s3.p.im), rr = dense(s3.r.re);
    CHECK(MatQ(qq * qq - pi * pi + rr * rr) == MatQ(j * (j + 1) * MatQ::Identity(s3.dim, s3.dim)));
  }
  CHECK_THROWS_AS(build_oscillator(OscillatorPreset::spin3, Rational(1, 3)), DomainError);
  CHECK_THROWS_AS(build_oscillator(OscillatorPreset::spin3, Rational(0)), DomainError);
  CHECK_THROWS_AS(build_oscillator(OscillatorPreset::spin3, Rational(2048)), DomainError);
}

TEST_CASE("bose deviation agrees with the unitary double-precision ladder") {
  for (const Rational& j : {Rational(1, 2), Rational(3, 2), Rational(5), Rational(8), Rational(33, 2)}) {
    const auto osc = build_oscillator(OscillatorPreset::spin3, j);
    for (std::size_t n = 0; n < static_cast<std::size_t>(osc.dim); ++n) {
      const auto d = bose_deviation(osc, n);
      CHECK(d.norm == doctest::Approx(oracle::bose_deviation(j.convert_to<double>(), n)).epsilon(1e-12));
      REQUIRE(d.exact.has_value());
      CHECK(*d.exact == Rational(static_cast<long>(n)) / j);
    }
    CHECK_THROWS_AS(bose_deviation(osc, static_cast<std::size_t>(osc.dim)), DomainError);
  }
}

TEST_CASE("bose deviation halves as j doubles") {
  double prev = 0;
  for (const int j : {8, 16, 32, 64}) {
    const double d = bose_deviation(build_oscillator(OscillatorPreset::spin21, Rational(j)), 1).norm;
    if (prev > 0) CHECK(prev / d == doctest::Approx(2.0).epsilon(1e-12));
    prev = d;
  }
}

TEST_CASE("raising operator is nilpotent of order 2j+1") {
  for (int twice_j = 1; twice_j <= 16; ++twice_j) {
    const Rational j(twice_j, 2);
    const auto osc = build_oscillator(OscillatorPreset::spin3, j);
    CHECK(exclusion_bound(osc) == static_cast<std::size_t>(twice_j));
    CHECK(power(osc.a_dag, static_cast<std::size_t>(twice_j) + 1).is_zero());
    CHECK_FALSE(power(osc.a_dag, static_cast<std::size_t>(twice_j)).is_zero());
    CHECK(power(osc.a, static_cast<std::size_t>(twice_j) + 1).is_zero());
  }
}

TEST_CASE("surd arithmetic") {
  const auto osc = build_oscillator(OscillatorPreset::spin3, Rational(3, 2));
  CHECK(osc.a.d == 3);
  CHECK_FALSE(osc.a.is_rational());
  // a a+ is rational because sqrt(3)^2 = 3.
  CHECK((osc.a * osc.a_dag).is_rational());
  const auto even = build_oscillator(OscillatorPreset::spin3, Rational(2));
  CHECK(even.a.is_rational());  // 2j = 4 is a square
}

TEST_CASE("normal ordering: worked examples") {
  const auto h1 = RelationSet::preset("h1");
  CHECK(normal_order(NCPolynomial::parse("p q", h1), h1).to_string(h1) == "q p - i hbar");
  CHECK(normal_order(NCPolynomial::parse("p p q", h1), h1) == NCPolynomial::parse("q p p - 2 i p hbar", h1));
  CHECK(normal_order(NCPolynomial::parse("q p - p q", h1), h1) == NCPolynomial::parse("i hbar", h1));
  const auto s3 = RelationSet::preset("spin3");
  CHECK(normal_order(NCPolynomial::parse("r q", s3), s3) == NCPolynomial::parse("q r + i p", s3));
  CHECK(normal_order(NCPolynomial::parse("p q r - q p r", s3), s3) == NCPolynomial::parse("-i r r", s3));
  CHECK_THROWS_AS(NCPolynomial::parse("q x", h1), DomainError);
  CHECK_THROWS_AS(NCPolynomial::parse("q + ", h1), DomainError);
}

TEST_CASE("normal ordering is a sorted, idempotent, multiplicative rewriting") {
  std::mt19937_64 rng(21);
  for (const std::string name : {"h1", "spin3", "spin21"}) {
    const auto rel = RelationSet::preset(name);
    const auto rep = preset_representation(rel);
    for (int t = 0; t < 40; ++t) {
      const auto a = random_poly(3, rng), b = random_poly(3, rng);
      const auto na = normal_order(a, rel);
      CHECK(is_sorted_words(na));
      CHECK(normal_order(na, rel) == na);
      CHECK(evaluate(na, rep) == evaluate(a, rep));
      CHECK(normal_order(product(na, normal_order(b, rel)), rel) == normal_order(product(a, b), rel));
      CHECK(normal_order(a + b, rel) == na + normal_order(b, rel));
    }
  }
}

TEST_CASE("inconsistent relations are rejected") {
  using B = RelationSet::Bracket;
  // [x, y] = x, [x, z] = y violates Jacobi.
  CHECK_THROWS_AS(RelationSet("bad", {"x", "y", "z"}, {{{0, 1}, B{{{0, Gaussian{1, 0}}}, {}}}, {{0, 2}, B{{{1, Gaussian{1, 0}}}, {}}}}),
                  DomainError);
}
