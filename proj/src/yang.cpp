#include "finq/yang.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace finq {

std::string UnitTag::to_string() const {
  if (chrone == 0 && erge == 0) return "1";
  std::string out;
  if (chrone != 0) out += "X^" + std::to_string(chrone);
  if (erge != 0) out += (out.empty() ? "" : " ") + std::string("E^") + std::to_string(erge);
  return out;
}

std::size_t YangFrame::l_index(std::size_t m, std::size_t n) const {
  const std::size_t d = spacetime_dim();
  if (m < 1 || n <= m || n > d) throw DomainError("L index pair out of range");
  std::size_t idx = 2 * d;
  for (std::size_t a = 1; a < m; ++a) idx += d - a;
  return idx + (n - m - 1);
}

std::vector<Rational> YangFrame::exponents() const {
  const std::size_t d = spacetime_dim();
  std::vector<Rational> e(generators.size(), Rational(0));
  for (std::size_t m = 0; m < 2 * d; ++m) e[m] = Rational(1, 2);
  e[i_index()] = 1;
  return e;
}

namespace {

std::vector<std::string> yang_labels(std::size_t d) {
  std::vector<std::string> labels;
  for (std::size_t m = 1; m <= d; ++m) labels.push_back("x" + std::to_string(m));
  for (std::size_t m = 1; m <= d; ++m) labels.push_back("p" + std::to_string(m));
  for (std::size_t m = 1; m <= d; ++m)
    for (std::size_t n = m + 1; n <= d; ++n) labels.push_back("L" + std::to_string(m) + std::to_string(n));
  labels.push_back("i");
  return labels;
}

std::vector<UnitTag> yang_units(std::size_t d) {
  std::vector<UnitTag> u;
  for (std::size_t m = 0; m < d; ++m) u.push_back({1, 0});
  for (std::size_t m = 0; m < d; ++m) u.push_back({0, 1});
  for (std::size_t m = 0; m < d * (d - 1) / 2; ++m) u.push_back(kHbar);
  u.push_back({0, 0});
  return u;
}

bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

Rational pow_inverse(const Rational& N, long e) {
  Rational out = 1;
  for (long i = 0; i < e; ++i) out /= N;
  return out;
}

}  // namespace

YangFrame build_yang(const GammaSet& g, std::vector<std::size_t> mu, std::size_t index5, std::size_t index6) {
  if (mu.empty() || mu.size() > 4) throw DomainError("between 1 and 4 space-time directions");
  std::set<std::size_t> used(mu.begin(), mu.end());
  used.insert(index5);
  used.insert(index6);
  if (used.size() != mu.size() + 2) throw DomainError("Yang index map must be injective");
  for (auto a : used)
    if (a < 1 || a > g.size()) throw DomainError("gamma index " + std::to_string(a) + " out of range");

  YangFrame f;
  f.gammas = g;
  f.mu = std::move(mu);
  f.index5 = index5;
  f.index6 = index6;
  for (auto a : f.mu) f.eta_mu.push_back(g.eta[a - 1]);

  const auto L = [&](std::size_t a, std::size_t b) -> MatQ { return antisym(g, a, b) / Rational(2); };
  const std::size_t d = f.mu.size();
  std::vector<MatQ> basis;
  for (std::size_t m = 0; m < d; ++m) basis.push_back(L(index5, f.mu[m]));
  for (std::size_t m = 0; m < d; ++m) basis.push_back(L(index6, f.mu[m]));
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = m + 1; n < d; ++n) basis.push_back(L(f.mu[m], f.mu[n]));
  basis.push_back(L(index6, index5));
  f.generators = MatrixAlgebra<Rational>::make(std::move(basis), yang_labels(d));
  f.units = yang_units(d);
  f.constants = structure_constants(f.generators);
  return f;
}

YangFrame build_yang(int p, int q) {
  if (p < 3 || q < 1 || p + q < 6) throw DomainError("Yang frame needs p >= 3, q >= 1 and p + q >= 6");
  const GammaSet g = build_gammas(p, q);
  std::vector<std::size_t> mu{1, 2, 3, static_cast<std::size_t>(p) + 1};
  std::vector<std::size_t> pos, neg;
  for (std::size_t a = 4; a <= static_cast<std::size_t>(p); ++a) pos.push_back(a);
  for (std::size_t a = static_cast<std::size_t>(p) + 2; a <= g.size(); ++a) neg.push_back(a);
  if (pos.size() >= 2) return build_yang(g, mu, pos[0], pos[1]);
  if (neg.size() >= 2) return build_yang(g, mu, neg[0], neg[1]);
  return build_yang(g, mu, pos.at(0), neg.at(0));
}

YangFrame build_yang_preset(const std::string& name) {
  if (name == "yang-3-3") return build_yang(4, 4);
  if (name == "yang-5-1") {
    const GammaSet g = with_top_element(build_gammas(4, 4));
    return build_yang(g, {1, 2, 3, static_cast<std::size_t>(g.p) + 1}, 4, 5);
  }
  if (name == "spin21") return build_yang(build_gammas(2, 1), {1}, 3, 2);
  throw DomainError("unknown Yang preset '" + name + "' (yang-3-3, yang-5-1, spin21)");
}

StructureConstants<Rational> scaled_constants(const YangFrame& frame, const Rational& N) {
  if (N <= 0) throw DomainError("N must be positive");
  const auto e = frame.exponents();
  const std::size_t n = frame.generators.size();
  StructureConstants<Rational> out(n, frame.generators.labels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Rational& c = frame.constants(i, j, k);
        if (c == 0) continue;
        const Rational x = e[i] + e[j] - e[k];
        if (x < 0 || !is_integer(x)) throw DomainError("unexpected scaling exponent " + format_scalar(x));
        out(i, j, k) = c * pow_inverse(N, boost::multiprecision::numerator(x).convert_to<long>());
      }
  return out;
}

HpTarget hp_target(const std::vector<int>& eta) {
  const std::size_t d = eta.size();
  if (d == 0 || d > 4) throw DomainError("between 1 and 4 space-time directions");
  const std::size_t n = 2 * d + d * (d - 1) / 2 + 1;
  HpTarget t;
  t.eta_mu = eta;
  t.constants = StructureConstants<Rational>(n, yang_labels(d));
  t.units = yang_units(d);
  auto& c = t.constants;

  std::map<std::pair<std::size_t, std::size_t>, std::size_t> lidx;
  std::size_t next = 2 * d;
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t k = m + 1; k < d; ++k) lidx[{m, k}] = next++;
  const std::size_t ii = n - 1;
  const auto h = [&](std::size_t a, std::size_t b) { return a == b ? eta[a] : 0; };
  // Adds v * L^{ab} (antisymmetric in a, b) to c(i, j, .).
  const auto addL = [&](std::size_t i, std::size_t j, std::size_t a, std::size_t b, int v) {
    if (v == 0 || a == b) return;
    if (a < b) c(i, j, lidx[{a, b}]) += v;
    else c(i, j, lidx[{b, a}]) -= v;
  };

  for (const auto& [ab, i] : lidx)
    for (const auto& [cd, j] : lidx) {
      const auto [a, b] = ab;
      const auto [cc, dd] = cd;
      addL(i, j, a, dd, h(b, cc));
      addL(i, j, b, dd, -h(a, cc));
      addL(i, j, a, cc, -h(b, dd));
      addL(i, j, b, cc, h(a, dd));
    }
  for (const auto& [ab, i] : lidx) {
    const auto [a, b] = ab;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t off : {std::size_t{0}, d}) {
        // [L^{ab}, v^r] = eta^{br} v^a - eta^{ar} v^b for v = x, p.
        const std::size_t j = off + r;
        c(i, j, off + a) += h(b, r);
        c(i, j, off + b) -= h(a, r);
        c(j, i, off + a) -= h(b, r);
        c(j, i, off + b) += h(a, r);
      }
  }
  for (std::size_t m = 0; m < d; ++m) {
    c(m, d + m, ii) += eta[m];
    c(d + m, m, ii) -= eta[m];
  }
  return t;
}

std::vector<CommutatorEntry> commutator_table(const YangFrame& frame, const Rational& N) {
  const auto c = scaled_constants(frame, N);
  std::vector<CommutatorEntry> out;
  for (std::size_t i = 0; i < c.dim(); ++i)
    for (std::size_t j = i + 1; j < c.dim(); ++j) {
      CommutatorEntry e{i, j, {}};
      for (std::size_t k = 0; k < c.dim(); ++k)
        if (c(i, j, k) != 0) e.terms.emplace_back(k, c(i, j, k));
      out.push_back(std::move(e));
    }
  return out;
}

HpContractionReport contract_to_hp(const YangFrame& frame, const std::vector<Rational>& schedule) {
  HpContractionReport r;
  r.contraction = contract(ContractionFamily{frame.generators, frame.exponents(), ScheduleParameter::inverse_n},
                           schedule);
  r.target = hp_target(frame.eta_mu);
  r.limit_matches_target = r.contraction.limit == r.target.constants;

  const auto& hp = r.target.constants;
  const std::size_t n = hp.dim();
  const std::size_t d = frame.spacetime_dim();
  for (const Rational& N : schedule) {
    const auto c = scaled_constants(frame, N);
    HpPoint pt;
    pt.N = N;
    pt.max_deviation = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational worst = 0;
        for (std::size_t k = 0; k < n; ++k) {
          const Rational diff = ScalarTraits<Rational>::abs(c(i, j, k) - hp(i, j, k));
          if (diff > worst) worst = diff;
          // Surviving brackets must balance units with one factor of hbar.
          if (c(i, j, k) != 0 && hp(i, j, k) != 0 && !(frame.units[i] + frame.units[j] == frame.units[k] + kHbar))
            pt.hbar_consistent = false;
        }
        if (worst != 0) pt.bracket_deviation.push_back({{i, j}, worst});
        if (worst > pt.max_deviation) pt.max_deviation = worst;
      }
    for (std::size_t m = 0; m < d; ++m)
      if (c(m, d + m, n - 1) != frame.eta_mu[m]) pt.hbar_consistent = false;
    r.points.push_back(std::move(pt));
  }
  return r;
}

GaugeDefect gauge_defect(const YangFrame& frame, const Rational& N) {
  const auto c = scaled_constants(frame, N);
  const auto hp = hp_target(frame.eta_mu).constants;
  GaugeDefect g;
  g.N = N;
  g.max_norm = 0;
  for (std::size_t k = 0; k < c.dim(); ++k) {
    MatQ m = ad_matrix(hp, k) - ad_matrix(c, k);
    Rational nrm = max_abs(m);
    if (nrm > g.max_norm) g.max_norm = nrm;
    g.defect.push_back(std::move(m));
    g.norm.push_back(std::move(nrm));
  }
  return g;
}

MatQ defect_for_pair(const YangFrame& frame, const GaugeDefect& d, std::size_t a, std::size_t b) {
  const std::size_t D = frame.spacetime_dim();
  const auto spacetime = [&](std::size_t x) { return x >= 1 && x <= D; };
  if (a == b) throw DomainError("defect pair needs distinct indices");
  if (a == 5 && spacetime(b)) return d.defect[frame.x_index(b)];
  if (b == 5 && spacetime(a)) return -d.defect[frame.x_index(a)];
  if (a == 6 && spacetime(b)) return d.defect[frame.p_index(b)];
  if (b == 6 && spacetime(a)) return -d.defect[frame.p_index(a)];
  if (spacetime(a) && spacetime(b))
    return a < b ? MatQ(d.defect[frame.l_index(a, b)]) : MatQ(-d.defect[frame.l_index(b, a)]);
  if (a == 6 && b == 5) return d.defect[frame.i_index()];
  if (a == 5 && b == 6) return -d.defect[frame.i_index()];
  throw DomainError("defect pair (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
}

// ---------------------------------------------------------------------------

std::string to_string(Accumulator a) { return a == Accumulator::feynman ? "feynman" : "penrose"; }

Accumulator parse_accumulator(const std::string& name) {
  if (name == "feynman") return Accumulator::feynman;
  if (name == "penrose") return Accumulator::penrose;
  throw DomainError("unknown accumulator '" + name + "' (feynman, penrose)");
}

StepOperator step_operator(std::size_t direction, Accumulator kind) {
  if (kind == Accumulator::feynman) {
    if (direction < 1 || direction > 4) throw DomainError("Feynman direction must be 1..4");
    return {build_gammas(3, 1).gamma(direction), false};
  }
  MatQ m(2, 2);
  switch (direction) {
    case 1: m << 0, 1, 1, 0; return {m, false};
    case 2: m << 0, -1, 1, 0; return {m, true};  // sigma^2 = i [[0,-1],[1,0]]
    case 3: m << 1, 0, 0, -1; return {m, false};
    default: throw DomainError("Penrose direction must be 1..3");
  }
}

std::vector<SpectrumLine> accumulate_spectrum(const StepOperator& step, std::size_t n_terms) {
  if (n_terms > kMaxAccumulationTerms)
    throw DomainError("at most " + std::to_string(kMaxAccumulationTerms) + " accumulated terms");
  const MatQ& m = step.matrix;
  const auto dim = m.rows();
  const MatQ sq = m * m;
  const Rational c = sq(0, 0);
  if (sq != c * MatQ::Identity(dim, dim) || (c != 1 && c != -1))
    throw DomainError("step operator must square to +-identity");
  const int s = step.imaginary ? -c.convert_to<int>() : c.convert_to<int>();
  // Trace of the step operator as re + i*im.
  const Rational tr = m.trace();
  const Rational re = step.imaginary ? Rational(0) : tr;
  const Rational im = step.imaginary ? tr : Rational(0);
  // Eigenvalues +-1 (s = 1) or +-i (s = -1); the trace fixes the multiplicities.
  const Rational along = s > 0 ? re : im;
  if ((s > 0 ? im : re) != 0) throw DomainError("step operator trace is inconsistent with its square");
  const Rational plus = (Rational(dim) + along) / 2;
  if (!is_integer(plus) || plus < 0 || plus > dim) throw DomainError("step operator spectrum is not balanced");
  const auto mp = plus.convert_to<std::uint64_t>();
  const auto mm = static_cast<std::uint64_t>(dim) - mp;

  std::map<long, std::uint64_t> dist{{0, 1}};
  for (std::size_t t = 0; t < n_terms; ++t) {
    std::map<long, std::uint64_t> next;
    for (const auto& [v, count] : dist) {
      if (mp) next[v + 1] += count * mp;
      if (mm) next[v - 1] += count * mm;
    }
    dist = std::move(next);
  }
  std::vector<SpectrumLine> out;
  for (const auto& [v, count] : dist) out.push_back({v, s < 0 && v != 0, count});
  return out;
}

std::vector<SpectrumLine> accumulate_coordinate(std::size_t direction, std::size_t n_terms, Accumulator kind) {
  return accumulate_spectrum(step_operator(direction, kind), n_terms);
}

}  // namespace finq
