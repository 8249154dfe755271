#include "finq/yang.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <map>

using namespace finq;

namespace {

// Abstract so(D+2) bookkeeping: indices 1..D space-time, 5 and 6 the extra
// directions. Generator layout x^m = L^{5m}, p^m = L^{6m}, L^{mn} (m < n), i = L^{65}.
struct Abstract {
  std::size_t D;
  std::map<std::size_t, int> eta;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot;  // L^{ab} = +generator
  std::vector<Rational> exponent;

  explicit Abstract(const YangFrame& f) : D(f.spacetime_dim()) {
    for (std::size_t m = 1; m <= D; ++m) eta[m] = f.eta_mu[m - 1];
    eta[5] = f.gammas.eta[f.index5 - 1];
    eta[6] = f.gammas.eta[f.index6 - 1];
    std::size_t g = 0;
    for (std::size_t m = 1; m <= D; ++m, ++g) slot[{5, m}] = g;
    for (std::size_t m = 1; m <= D; ++m, ++g) slot[{6, m}] = g;
    for (std::size_t m = 1; m <= D; ++m)
      for (std::size_t n = m + 1; n <= D; ++n, ++g) slot[{m, n}] = g;
    slot[{6, 5}] = g++;
    exponent.assign(g, Rational(0));
    for (std::size_t k = 0; k < 2 * D; ++k) exponent[k] = Rational(1, 2);
    exponent[g - 1] = 1;
  }
  std::size_t size() const { return exponent.size(); }
  int h(std::size_t a, std::size_t b) const { return a == b ? eta.at(a) : 0; }
  // L^{ab} as (generator, sign); sign 0 for a == b.
  std::pair<std::size_t, int> lookup(std::size_t a, std::size_t b) const {
    if (a == b) return {0, 0};
    if (auto it = slot.find({a, b}); it != slot.end()) return {it->second, 1};
    return {slot.at({b, a}), -1};
  }
  std::pair<std::size_t, std::size_t> indices(std::size_t g) const {
    for (const auto& [ab, k] : slot)
      if (k == g) return ab;
    return {0, 0};
  }
  // Unscaled c(i, j, .) from [L^{ab}, L^{cd}] = h(b,c)L^{ad} - h(a,c)L^{bd} - h(b,d)L^{ac} + h(a,d)L^{bc}.
  std::vector<Rational> bracket(std::size_t i, std::size_t j) const {
    const auto [a, b] = indices(i);
    const auto [c, d] = indices(j);
    std::vector<Rational> out(size(), Rational(0));
    auto add = [&](std::size_t x, std::size_t y, int coef) {
      const auto [k, s] = lookup(x, y);
      if (s != 0 && coef != 0) out[k] += coef * s;
    };
    add(a, d, h(b, c));
    add(b, d, -h(a, c));
    add(a, c, -h(b, d));
    add(b, c, h(a, d));
    return out;
  }
};

Rational inverse_power(const Rational& N, const Rational& e) {
  REQUIRE(boost::multiprecision::denominator(e) == 1);
  Rational out = 1;
  for (long k = 0; k < boost::multiprecision::numerator(e).convert_to<long>(); ++k) out /= N;
  return out;
}

}  // namespace

TEST_CASE("Yang generators close and are semisimple") {
  for (const std::string name : {"yang-3-3", "yang-5-1"}) {
    const auto f = build_yang_preset(name);
    CHECK(f.generators.size() == 15);
    CHECK(f.constants.closure_residual == 0);
    CHECK(jacobi_residual(f.constants) == 0);
    const auto k = is_semisimple(f.constants);
    CHECK(k.semisimple);
    // Killing form of so(p,q): negative on the maximal compact subalgebra.
    if (name == "yang-3-3") CHECK(k.killing_signature == Inertia{9, 6, 0});
    else CHECK(k.killing_signature == Inertia{5, 10, 0});
  }
  CHECK(build_yang(4, 4).constants == build_yang_preset("yang-3-3").constants);
  CHECK_THROWS_AS(build_yang(2, 4), DomainError);
  CHECK_THROWS_AS(build_yang_preset("so8"), DomainError);
}

TEST_CASE("scaled constants follow the abstract so(D+2) brackets") {
  for (const std::string name : {"yang-3-3", "yang-5-1", "spin21"}) {
    const auto f = build_yang_preset(name);
    const Abstract abs(f);
    REQUIRE(abs.size() == f.generators.size());
    for (const Rational& N : {Rational(1), Rational(7), Rational(1000)}) {
      const auto c = scaled_constants(f, N);
      for (std::size_t i = 0; i < abs.size(); ++i)
        for (std::size_t j = 0; j < abs.size(); ++j) {
          const auto expect = abs.bracket(i, j);
          for (std::size_t k = 0; k < abs.size(); ++k) {
            const Rational e = abs.exponent[i] + abs.exponent[j] - abs.exponent[k];
            CHECK(c(i, j, k) == (expect[k] == 0 ? Rational(0) : expect[k] * inverse_power(N, e)));
          }
        }
    }
  }
}

TEST_CASE("limit is the Heisenberg-Poincare algebra") {
  for (const std::string name : {"yang-3-3", "yang-5-1", "spin21"}) {
    const auto f = build_yang_preset(name);
    const Abstract abs(f);
    const auto rep = contract_to_hp(f, {Rational(100), Rational(10000), Rational(1000000)});
    CHECK(rep.limit_matches_target);
    for (std::size_t i = 0; i < abs.size(); ++i)
      for (std::size_t j = 0; j < abs.size(); ++j) {
        const auto expect = abs.bracket(i, j);
        for (std::size_t k = 0; k < abs.size(); ++k) {
          const bool survives = abs.exponent[i] + abs.exponent[j] == abs.exponent[k];
          CHECK(rep.target.constants(i, j, k) == (survives ? expect[k] : Rational(0)));
        }
      }
    // i is central and [x^m, p^m] = eta^{mm} i.
    const std::size_t ii = f.i_index();
    for (std::size_t j = 0; j < abs.size(); ++j)
      for (std::size_t k = 0; k < abs.size(); ++k) CHECK(rep.target.constants(ii, j, k) == 0);
    for (std::size_t m = 1; m <= f.spacetime_dim(); ++m)
      CHECK(rep.target.constants(f.x_index(m), f.p_index(m), ii) == f.eta_mu[m - 1]);
    CHECK_FALSE(is_semisimple(rep.target.constants).semisimple);
    for (const auto& pt : rep.points) {
      CHECK(pt.hbar_consistent);
      const Rational scaled = pt.max_deviation * pt.N;
      CHECK(scaled >= Rational(1, 2));
      CHECK(scaled <= 2);
    }
  }
}

TEST_CASE("gauge defect decays like 1/N") {
  const auto f = build_yang_preset("yang-3-3");
  const auto d1 = gauge_defect(f, Rational(100));
  const auto d2 = gauge_defect(f, Rational(10000));
  CHECK(d1.max_norm > 0);
  CHECK(d2.max_norm * 100 == d1.max_norm);
  // Defects are labelled antisymmetrically.
  CHECK(defect_for_pair(f, d1, 5, 1) == MatQ(-defect_for_pair(f, d1, 1, 5)));
  CHECK(defect_for_pair(f, d1, 6, 5) == MatQ(-defect_for_pair(f, d1, 5, 6)));
  CHECK(defect_for_pair(f, d1, 2, 3) == MatQ(-defect_for_pair(f, d1, 3, 2)));
  CHECK_THROWS_AS(defect_for_pair(f, d1, 2, 2), DomainError);
  // Lorentz generators are not scaled, so their defect is exactly zero.
  CHECK(d1.norm[f.l_index(1, 2)] == 0);
}

TEST_CASE("units balance with one hbar") {
  const auto f = build_yang_preset("yang-3-3");
  CHECK(f.units[f.x_index(1)].to_string() == "X^1");
  CHECK(f.units[f.p_index(1)].to_string() == "E^1");
  CHECK(f.units[f.i_index()].to_string() == "1");
}

TEST_CASE("coordinate spectra match dense diagonalization") {
  for (const auto kind : {Accumulator::feynman, Accumulator::penrose}) {
    const std::size_t dirs = kind == Accumulator::feynman ? 4 : 3;
    const std::size_t max_n = kind == Accumulator::feynman ? 3 : 6;
    for (std::size_t dir = 1; dir <= dirs; ++dir)
      for (std::size_t n = 1; n <= max_n; ++n) {
        const auto lines = accumulate_coordinate(dir, n, kind);
        const auto dense = oracle::dense_spectrum(step_operator(dir, kind), n);
        std::map<std::pair<bool, long>, std::uint64_t> got;
        for (const auto& l : lines) got[{l.imaginary, l.value}] = l.multiplicity;
        CHECK(got == dense);
      }
  }
}

TEST_CASE("coordinate spectra are binomial") {
  std::uint64_t binom[13][13] = {};
  for (int a = 0; a <= 12; ++a) {
    binom[a][0] = 1;
    for (int b = 1; b <= a; ++b) binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
  }
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto lines = accumulate_coordinate(1, n, Accumulator::penrose);
    REQUIRE(lines.size() == n + 1);
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(lines[k].value == -static_cast<long>(n) + 2 * static_cast<long>(k));
      CHECK(lines[k].multiplicity == binom[n][k]);
    }
  }
  CHECK_THROWS_AS(accumulate_coordinate(1, 13, Accumulator::penrose), DomainError);
  CHECK_THROWS_AS(step_operator(5, Accumulator::feynman), DomainError);
}
