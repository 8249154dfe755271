#include "finq/qset.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <random>

using namespace finq;

using MV = Multivector<Rational>;

namespace {

// Sign of sorting the concatenated index lists, by counting inversions directly.
// Returns 0 when an index repeats.
int concat_sign(Blade a, Blade b) {
  std::vector<int> seq;
  for (int i = 0; i < 32; ++i)
    if (a >> i & 1u) seq.push_back(i);
  for (int i = 0; i < 32; ++i)
    if (b >> i & 1u) seq.push_back(i);
  int inversions = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j) {
      if (seq[i] == seq[j]) return 0;
      inversions += seq[i] > seq[j];
    }
  return inversions % 2 ? -1 : 1;
}

MV random_mv(const RankFrame<Rational>::Ptr& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(-4, 4);
  MV w(f);
  for (Blade b = 0; b <= f->top_blade(); ++b)
    if (rng() % 3 == 0) w.add(b, Rational(coef(rng), 1 + static_cast<int>(rng() % 3)));
  return w;
}

}  // namespace

TEST_CASE("frame layout follows the enumeration") {
  const auto f = RankFrame<Rational>::build(3);
  CHECK(f->generator_count() == 4);
  CHECK(f->dimension() == 16);
  for (std::size_t i = 0; i < f->generator_count(); ++i) CHECK(f->monads()[i] == iota(enumerate(2)[i]));
  CHECK_THROWS_AS(RankFrame<Rational>::build(5), DomainError);
  CHECK_THROWS_AS(RankFrame<Rational>::build(1, MetricPreset::hyperbolic), DomainError);
}

TEST_CASE("grassmann product of blades matches the sorting oracle") {
  const auto f = RankFrame<Rational>::build(3);
  for (Blade a = 0; a <= f->top_blade(); ++a)
    for (Blade b = 0; b <= f->top_blade(); ++b) {
      const MV p = grassmann(MV::blade(f, a), MV::blade(f, b));
      const int s = concat_sign(a, b);
      if (s == 0) CHECK(p.is_zero());
      else CHECK(p == MV::blade(f, a | b) * Rational(s));
    }
}

TEST_CASE("grassmann linearizes partial or") {
  const auto f = RankFrame<Rational>::build(3);
  for (const auto& x : enumerate(3))
    for (const auto& y : enumerate(3)) {
      const MV p = grassmann(embed<Rational>(x, f), embed<Rational>(y, f));
      const auto r = por(x, y);
      if (is_om(r)) CHECK(p.is_zero());
      else CHECK(abs(p.coefficient(std::get<PerfiniteSet>(r))) == 1);
    }
}

TEST_CASE("grassmann is associative and nilpotent on vectors") {
  std::mt19937_64 rng(11);
  const auto f = RankFrame<Rational>::build(3);
  for (int t = 0; t < 200; ++t) {
    const MV a = random_mv(f, rng), b = random_mv(f, rng), c = random_mv(f, rng);
    CHECK(grassmann(grassmann(a, b), c) == grassmann(a, grassmann(b, c)));
    // Bilinearity
    CHECK(grassmann(a + b, c) == grassmann(a, c) + grassmann(b, c));
    const MV v = a.grade_part(1);
    CHECK(grassmann(v, v).is_zero());
  }
}

TEST_CASE("clifford anticommutator equals twice the metric") {
  std::mt19937_64 rng(5);
  const std::size_t n = 4;
  MatQ beta(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) beta(i, j) = beta(j, i) = Rational(static_cast<int>(rng() % 7) - 3, 2);
  const auto f = RankFrame<Rational>::with_metric(3, beta);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const MV ei = MV::generator(f, i), ej = MV::generator(f, j);
      CHECK(clifford(ei, ej) + clifford(ej, ei) == MV::scalar(f, 2 * beta(i, j)));
    }
  for (int t = 0; t < 60; ++t) {
    const MV a = random_mv(f, rng), b = random_mv(f, rng), c = random_mv(f, rng);
    CHECK(clifford(clifford(a, b), c) == clifford(a, clifford(b, c)));
  }
}

TEST_CASE("zero metric clifford is grassmann") {
  std::mt19937_64 rng(3);
  const auto f = RankFrame<Rational>::build(3);
  for (int t = 0; t < 50; ++t) {
    const MV a = random_mv(f, rng), b = random_mv(f, rng);
    CHECK(clifford(a, b) == grassmann(a, b));
  }
}

TEST_CASE("hyperbolic pairs satisfy the CAR") {
  const auto f = RankFrame<Rational>::build(3, MetricPreset::hyperbolic);
  for (std::size_t i = 0; i + 1 < f->generator_count(); i += 2) {
    const MV a = MV::generator(f, i), ad = MV::generator(f, i + 1);
    CHECK(clifford(a, a).is_zero());
    CHECK(clifford(a, ad) + clifford(ad, a) == MV::scalar(f, 1));
  }
}

TEST_CASE("berezin norm is neutral") {
  const auto f = RankFrame<Rational>::build(3);
  const MV one = MV::scalar(f, 1), top = MV::top(f);
  CHECK(berezin_norm(one + top) == 2);
  CHECK(berezin_norm(one) == 0);
  CHECK(berezin_norm(top) == 0);
  CHECK(berezin_norm(one - top) == -2);
  for (std::size_t i = 0; i < f->generator_count(); ++i) CHECK(berezin_norm(MV::generator(f, i)) == 0);
  const auto scaled = RankFrame<Rational>::build(2, MetricPreset::zero, Rational(3));
  CHECK(berezin_norm(MV::scalar(scaled, 1) + MV::top(scaled)) == Rational(2, 3));
}

TEST_CASE("signature agrees with a dense Gram matrix") {
  for (std::size_t r = 1; r <= 3; ++r) {
    const auto f = RankFrame<Rational>::build(r);
    const auto dim = static_cast<Eigen::Index>(f->dimension());
    Eigen::MatrixXd gram(dim, dim);
    for (Blade a = 0; a <= f->top_blade(); ++a)
      for (Blade b = 0; b <= f->top_blade(); ++b) {
        const bool full = (a | b) == f->top_blade() && !(a & b);
        gram(a, b) = full ? (concat_sign(a, b) + concat_sign(b, a)) / 2.0 : 0.0;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
    Inertia expect;
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double e = es.eigenvalues()(i);
      if (e > 1e-9) ++expect.plus;
      else if (e < -1e-9) ++expect.minus;
      else ++expect.zero;
    }
    CHECK(signature_report<Rational>(f) == expect);
  }
  CHECK(signature_report<Rational>(RankFrame<Rational>::build(1)) == Inertia{1, 1, 0});
}

TEST_CASE("beta form polarizes the norm") {
  std::mt19937_64 rng(9);
  const auto f = RankFrame<Rational>::build(3);
  for (int t = 0; t < 50; ++t) {
    const MV v = random_mv(f, rng), w = random_mv(f, rng);
    CHECK(2 * beta_form(v, w) == berezin_norm(v + w) - berezin_norm(v) - berezin_norm(w));
  }
}

TEST_CASE("grade operator counts generators") {
  const auto f = RankFrame<Rational>::build(3);
  for (const auto& x : enumerate(3)) {
    const MV w = embed<Rational>(x, f);
    CHECK(grade_op(w) == w * Rational(static_cast<long>(x.grade())));
  }
}

TEST_CASE("iota_m sends grade-m sets to their unit set") {
  const auto f = RankFrame<Rational>::build(2), g = RankFrame<Rational>::build(3);
  for (const auto& x : enumerate(2)) {
    const MV w = embed<Rational>(x, f);
    for (std::size_t m = 0; m <= 2; ++m) {
      const MV out = iota_m(w, m, g);
      if (m == x.grade()) CHECK(out == embed<Rational>(iota(x), g));
      else CHECK(out.is_zero());
    }
    CHECK(iota_linear(w, g) == embed<Rational>(iota(x), g));
  }
  CHECK_THROWS_AS(iota_m(MV::scalar(f, 1), 0, f), DomainError);
}

TEST_CASE("float frames agree with exact ones") {
  const auto fq = RankFrame<Rational>::build(3, MetricPreset::hyperbolic);
  const auto fd = RankFrame<double>::build(3, MetricPreset::hyperbolic);
  for (Blade a = 0; a <= fq->top_blade(); ++a)
    for (Blade b = 0; b <= fq->top_blade(); ++b) {
      const MV p = clifford(MV::blade(fq, a), MV::blade(fq, b));
      const auto d = clifford(Multivector<double>::blade(fd, a), Multivector<double>::blade(fd, b));
      for (Blade c = 0; c <= fq->top_blade(); ++c)
        CHECK(d.coefficient(c) == doctest::Approx(p.coefficient(c).convert_to<double>()).epsilon(1e-12));
    }
}
