#include "finq/verify.hpp"

#include "finq/catalog.hpp"
#include "finq/cliff.hpp"
#include "finq/palev.hpp"
#include "finq/perfinite.hpp"
#include "finq/qset.hpp"
#include "finq/vertexnet.hpp"
#include "finq/yang.hpp"

#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

namespace finq {

bool VerifyReport::all_passed() const { return passed_count() == checks.size(); }

std::size_t VerifyReport::passed_count() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += c.passed;
  return n;
}

std::string VerifyReport::to_text() const {
  std::ostringstream out;
  out << "# finq verify-all seed=" << seed << "\n";
  for (const auto& c : checks) {
    char head[96];
    std::snprintf(head, sizeof head, "%-4s %-10s %-44s ", c.passed ? "PASS" : "FAIL", c.module.c_str(),
                  c.name.c_str());
    out << head << c.detail << "\n";
  }
  out << "# " << passed_count() << "/" << checks.size() << " checks passed\n";
  return out.str();
}

namespace {

using Rng = std::mt19937_64;
using MV = Multivector<Rational>;

struct Collector {
  VerifyReport& report;
  void run(const std::string& module, const std::string& name, const std::function<std::string(bool&)>& body) {
    VerifyCheck c{module, name, false, ""};
    try {
      bool ok = true;
      c.detail = body(ok);
      c.passed = ok;
    } catch (const std::exception& e) {
      c.detail = std::string("exception: ") + e.what();
    }
    report.checks.push_back(std::move(c));
  }
};

MV random_multivector(const RankFrame<Rational>::Ptr& f, Rng& rng) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> pick(0, 3);
  MV w(f);
  for (Blade b = 0; b <= f->top_blade(); ++b)
    if (pick(rng) == 0) w.add(b, Rational(coef(rng)));
  return w;
}

// ---------------------------------------------------------------------------

void perfinite_checks(Collector& c) {
  c.run("perfinite", "code round trip 0..65535", [](bool& ok) {
    for (unsigned long code = 0; code < 65536; ++code)
      if (PerfiniteSet::decode(code).code() != code) {
        ok = false;
        return "first failure at code " + std::to_string(code);
      }
    return std::string("65536 codes");
  });
  c.run("perfinite", "xor group laws, rank <= 3", [](bool& ok) {
    const auto all = enumerate(3);
    std::size_t checked = 0;
    for (const auto& x : all) {
      ok = ok && xor_union(x, x) == empty_set() && xor_union(x, empty_set()) == x;
      for (const auto& y : all) {
        ok = ok && xor_union(x, y) == xor_union(y, x);
        for (const auto& z : all) {
          ok = ok && xor_union(xor_union(x, y), z) == xor_union(x, xor_union(y, z));
          ++checked;
        }
      }
    }
    return std::to_string(checked) + " triples";
  });
  c.run("perfinite", "grade parity homomorphism, por/xor", [](bool& ok) {
    const auto all = enumerate(3);
    for (const auto& x : all)
      for (const auto& y : all) {
        ok = ok && (grade(xor_union(x, y)) % 2) == ((grade(x) + grade(y)) % 2);
        const auto p = por(x, y);
        if (!is_om(p)) ok = ok && std::get<PerfiniteSet>(p) == xor_union(x, y);
        else ok = ok && !x.empty() && !y.empty();
      }
    return std::string("256 pairs");
  });
}

void qset_checks(Collector& c, Rng& rng) {
  c.run("qset", "grassmann associativity, r=3", [&](bool& ok) {
    const auto f = RankFrame<Rational>::build(3);
    for (int t = 0; t < 1000; ++t) {
      const MV a = random_multivector(f, rng), b = random_multivector(f, rng), d = random_multivector(f, rng);
      ok = ok && grassmann(grassmann(a, b), d) == grassmann(a, grassmann(b, d));
      const MV x = random_multivector(f, rng).grade_part(1);
      ok = ok && grassmann(x, x).is_zero();
    }
    return std::string("1000 random triples, x v x = 0 on 1000 vectors");
  });
  c.run("qset", "clifford associativity, hyperbolic r=3", [&](bool& ok) {
    const auto f = RankFrame<Rational>::build(3, MetricPreset::hyperbolic);
    for (int t = 0; t < 200; ++t) {
      const MV a = random_multivector(f, rng), b = random_multivector(f, rng), d = random_multivector(f, rng);
      ok = ok && clifford(clifford(a, b), d) == clifford(a, clifford(b, d));
    }
    const MV m = MV::generator(f, 0), md = MV::generator(f, 1);
    ok = ok && clifford(m, md) + clifford(md, m) == MV::scalar(f, 1);
    return std::string("200 random triples; CAR pair sums to 1");
  });
  c.run("qset", "berezin norm and signature", [](bool& ok) {
    const auto f = RankFrame<Rational>::build(3);
    const MV w = MV::scalar(f, 1) + MV::top(f);
    const Rational n = berezin_norm(w);
    const auto sig = signature_report<Rational>(RankFrame<Rational>::build(1));
    ok = n == 2 && sig.plus == 1 && sig.minus == 1 && sig.zero == 0;
    const auto scaled = RankFrame<Rational>::build(3, MetricPreset::zero, Rational(5));
    ok = ok && berezin_norm(MV::scalar(scaled, 1) + MV::top(scaled)) == Rational(2, 5);
    return "norm(1+top)=" + format_scalar(n) + " signature(n=1)=(" + std::to_string(sig.plus) + "," +
           std::to_string(sig.minus) + "," + std::to_string(sig.zero) + ")";
  });
  c.run("qset", "iota decomposes into iota_m", [&](bool& ok) {
    const auto f2 = RankFrame<Rational>::build(2), f3 = RankFrame<Rational>::build(3);
    for (const auto& x : enumerate(2)) {
      const MV e = embed<Rational>(x, f2);
      ok = ok && iota_linear(e, f3) == MV::generator(f3, *f3->atom_index(x));
      for (std::size_t m = 0; m <= 2; ++m)
        if (m != x.grade()) ok = ok && iota_m(e, m, f3).is_zero();
    }
    return std::string("all 4 classical monomials of rank <= 2");
  });
}

void cliff_checks(Collector& c) {
  c.run("cliff", "anticommutation p+q <= 8", [](bool& ok) {
    std::size_t relations = 0;
    for (int p = 0; p <= 8; ++p)
      for (int q = 0; p + q <= 8; ++q) {
        const auto rep = check_anticommutation(build_gammas(p, q));
        ok = ok && rep.ok();
        relations += rep.checked;
      }
    return std::to_string(relations) + " relations over 45 signatures";
  });
  c.run("cliff", "top element (anti)commutation", [](bool& ok) {
    for (int p = 0; p <= 5; ++p)
      for (int q = 0; p + q <= 6; ++q) {
        const GammaSet g = build_gammas(p, q);
        const MatQ top = top_element(g);
        const int k = p + q;
        ok = ok && top * top == Rational(top_square_sign(p, q)) * MatQ::Identity(g.dim, g.dim);
        for (std::size_t a = 1; a <= g.size(); ++a)
          ok = ok && top * g.gamma(a) == Rational(k % 2 ? 1 : -1) * g.gamma(a) * top;
      }
    return std::string("commutes for odd p+q, anticommutes for even");
  });
  c.run("cliff", "spin generators closed and semisimple", [](bool& ok) {
    std::string detail;
    for (auto [p, q] : {std::pair{3, 0}, {2, 1}, {2, 2}, {3, 1}, {4, 4}}) {
      const auto sc = structure_constants(spin_generators(build_gammas(p, q)));
      const bool jac = jacobi_residual(sc) == 0;
      const bool semi = is_semisimple(sc).semisimple;
      ok = ok && jac && semi && sc.closure_residual == 0;
      detail += "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    }
    return detail;
  });
}

void liecore_checks(Collector& c) {
  c.run("liecore", "Killing dichotomy", [](bool& ok) {
    const auto so3 = is_semisimple(structure_constants(algebra_preset("so3")));
    const auto h1 = is_semisimple(structure_constants(algebra_preset("h1")));
    const auto k = killing_form(structure_constants(algebra_preset("so3")));
    ok = so3.semisimple && so3.determinant == -8 && !h1.semisimple && h1.determinant == 0 &&
         k == Rational(-2) * MatQ::Identity(3, 3);
    return "det K(so3)=" + format_scalar(so3.determinant) + " det K(h1)=" + format_scalar(h1.determinant);
  });
  c.run("liecore", "spin(2,1) relations", [](bool& ok) {
    const auto sc = structure_constants(spin21_algebra());
    ok = sc(0, 1, 2) == 1 && sc(1, 2, 0) == 1 && sc(0, 2, 1) == 1;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k)
          if (!((i == 0 && j == 1 && k == 2) || (i == 1 && j == 2 && k == 0) || (i == 0 && j == 2 && k == 1) ||
                (i == 1 && j == 0 && k == 2) || (i == 2 && j == 1 && k == 0) || (i == 2 && j == 0 && k == 1)))
            ok = ok && sc(i, j, k) == 0;
    return std::string("[q,p]=r [p,r]=q [q,r]=p");
  });
  c.run("liecore", "spin21 -> h1 contraction", [](bool& ok) {
    const auto rep = contract(contraction_preset("spin21-to-h1"), {Rational(1000), Rational(1000000)});
    for (const auto& pt : rep.points) {
      ok = ok && pt.max_deviation_exact && *pt.max_deviation_exact == Rational(1) / pt.parameter;
      ok = ok && pt.brackets.size() == 2 && pt.numeric_max_relative_error <= 1e-9;
      for (const auto& b : pt.brackets) ok = ok && b.exact && *b.exact == Rational(1) / pt.parameter;
    }
    ok = ok && rep.limit_killing.determinant == 0 && rep.limit_class == AlgebraClass::nilpotent;
    return "limit " + to_string(rep.limit_class) + ", deviation 1/N at N=10^3,10^6";
  });
  c.run("liecore", "so4 -> iso3 contraction", [](bool& ok) {
    const auto rep = contract(contraction_preset("so4-to-iso3"), {Rational(100)});
    ok = rep.original_killing.semisimple && !rep.limit_killing.semisimple && rep.limit_killing.determinant == 0 &&
         rep.limit_killing.killing_rank < rep.original_killing.killing_rank;
    return "Killing rank " + std::to_string(rep.original_killing.killing_rank) + " -> " +
           std::to_string(rep.limit_killing.killing_rank);
  });
}

void yang_checks(Collector& c) {
  c.run("yang", "Cl(4,4) frame closed and semisimple", [](bool& ok) {
    const auto f = build_yang_preset("yang-3-3");
    const auto k = is_semisimple(f.constants);
    ok = f.generators.size() == 15 && f.constants.closure_residual == 0 && k.semisimple;
    return "15 generators, Killing signature (" + std::to_string(k.killing_signature.plus) + "," +
           std::to_string(k.killing_signature.minus) + ")";
  });
  c.run("yang", "contraction to hp(3,1)", [](bool& ok) {
    const auto f = build_yang_preset("yang-3-3");
    const std::vector<Rational> schedule{Rational(100), Rational(10000), Rational(1000000)};
    const auto rep = contract_to_hp(f, schedule);
    ok = rep.limit_matches_target && !is_semisimple(rep.target.constants).semisimple;
    std::string detail = "max deviation";
    for (const auto& pt : rep.points) {
      const Rational ratio = pt.max_deviation * pt.N;
      ok = ok && ratio >= Rational(1, 2) && ratio <= 2 && pt.hbar_consistent;
      detail += " " + format_scalar(pt.max_deviation);
    }
    return detail;
  });
  c.run("yang", "gauge defect shrinks", [](bool& ok) {
    const auto f = build_yang_preset("spin21");
    const auto d1 = gauge_defect(f, Rational(100)), d2 = gauge_defect(f, Rational(10000));
    ok = d1.max_norm == Rational(1, 100) && d2.max_norm == Rational(1, 10000);
    ok = ok && defect_for_pair(f, d1, 5, 1) == MatQ(-defect_for_pair(f, d1, 1, 5));
    return "toy frame defect " + format_scalar(d1.max_norm) + " -> " + format_scalar(d2.max_norm);
  });
  c.run("yang", "accumulation spectra are binomial", [](bool& ok) {
    for (std::size_t n = 0; n <= 8; ++n)
      for (auto [kind, dirs] : {std::pair{Accumulator::penrose, 3}, {Accumulator::feynman, 4}})
        for (std::size_t d = 1; d <= static_cast<std::size_t>(dirs); ++d) {
          const auto lines = accumulate_coordinate(d, n, kind);
          const std::uint64_t width = kind == Accumulator::penrose ? 1 : 2;
          ok = ok && lines.size() == n + 1;
          std::uint64_t binom = 1;
          for (std::size_t k = 0; k <= n && k < lines.size(); ++k) {
            std::uint64_t w = 1;
            for (std::size_t t = 0; t < n; ++t) w *= width;
            ok = ok && lines[k].value == static_cast<long>(2 * k) - static_cast<long>(n) &&
                 lines[k].multiplicity == binom * w;
            binom = binom * (n - k) / (k + 1);
          }
        }
    return std::string("n = 0..8, all directions");
  });
}

void palev_checks(Collector& c, Rng& rng) {
  c.run("palev", "Bose deviation halves as j doubles", [](bool& ok) {
    std::string detail;
    Rational prev = 0;
    for (int j : {8, 16, 32, 64}) {
      const Rational d = *bose_deviation(build_oscillator(OscillatorPreset::spin3, j), 1).exact;
      if (prev != 0) {
        const Rational ratio = prev / d;
        ok = ok && ratio >= Rational(4, 3) && ratio <= 3;
      }
      prev = d;
      detail += " " + format_scalar(d);
    }
    return "deviation(n=1):" + detail;
  });
  c.run("palev", "exclusion bound and nilpotency", [](bool& ok) {
    for (int two_j = 1; two_j <= 16; ++two_j)
      for (auto preset : {OscillatorPreset::spin3, OscillatorPreset::spin21}) {
        const auto o = build_oscillator(preset, Rational(two_j, 2));
        ok = ok && exclusion_bound(o) == static_cast<std::size_t>(two_j) &&
             power(o.a_dag, static_cast<std::size_t>(two_j) + 1).is_zero() &&
             !power(o.a_dag, static_cast<std::size_t>(two_j)).is_zero();
      }
    return std::string("j = 1/2..8, both presets");
  });
  c.run("palev", "normal order matches evaluation", [&](bool& ok) {
    std::size_t count = 0;
    for (const std::string name : {"h1", "spin3", "spin21"}) {
      const auto rel = RelationSet::preset(name);
      const auto rep = preset_representation(rel);
      std::uniform_int_distribution<int> len(0, 4), gen(0, 2), coef(-2, 2);
      for (int t = 0; t < 40; ++t) {
        NCPolynomial poly;
        for (int term = 0; term < 3; ++term) {
          Word w(static_cast<std::size_t>(len(rng)));
          for (auto& g : w) g = static_cast<std::size_t>(gen(rng));
          poly.add(w, Gaussian{coef(rng), coef(rng)});
        }
        const auto n = normal_order(poly, rel);
        ok = ok && evaluate(poly, rep) == evaluate(n, rep) && normal_order(n, rel) == n;
        ++count;
      }
    }
    return std::to_string(count) + " random polynomials, degree <= 4";
  });
}

// Reference evaluation: sum over every assignment of every leg index.
SparseTensor dense_reference(const VertexNetwork& net) {
  std::vector<std::pair<std::size_t, Eigen::Index>> vars;  // (edge or open id, dim)
  std::map<Slot, std::size_t> var_of;
  for (const auto& e : net.edges) {
    var_of[e.a] = vars.size();
    var_of[e.b] = vars.size();
    vars.push_back({vars.size(), net.vertices[e.a.vertex].legs[e.a.leg].dim});
  }
  std::vector<std::size_t> open_vars;
  for (const auto& s : net.open) {
    var_of[s] = vars.size();
    open_vars.push_back(vars.size());
    vars.push_back({vars.size(), net.vertices[s.vertex].legs[s.leg].dim});
  }
  SparseTensor out;
  for (auto v : open_vars) out.dims.push_back(vars[v].second);
  std::vector<Eigen::Index> value(vars.size(), 0);
  while (true) {
    Rational prod = 1;
    for (std::size_t v = 0; v < net.vertices.size() && prod != 0; ++v) {
      std::vector<Eigen::Index> idx;
      for (std::size_t l = 0; l < net.vertices[v].legs.size(); ++l) idx.push_back(value[var_of[{v, l}]]);
      prod *= net.vertices[v].tensor.at(idx);
    }
    std::vector<Eigen::Index> key;
    for (auto v : open_vars) key.push_back(value[v]);
    out.add(key, prod);
    std::size_t k = 0;
    while (k < vars.size() && ++value[k] == vars[k].second) value[k++] = 0;
    if (k == vars.size()) break;
  }
  return out;
}

void vertexnet_checks(Collector& c) {
  c.run("vertexnet", "two-vertex loops match reference", [](bool& ok) {
    std::size_t nets = 0;
    for (auto [p, q] : {std::pair{1, 1}, {2, 0}, {2, 2}}) {
      const GammaSet g = build_gammas(p, q);
      VertexNetwork net;
      net.vertices = {make_vertex(g), make_vertex(g)};
      // spinor of 0 into dual of 1 and back: tr(gamma^m gamma^n)
      net.edges = {{{0, 2}, {1, 0}}, {{1, 2}, {0, 0}}};
      net.open = {{0, 1}, {1, 1}};
      const auto res = contract(net).tensor;
      ok = ok && res == dense_reference(net);
      for (std::size_t m = 0; m < g.size(); ++m)
        ok = ok && res.at({static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)}) ==
                       Rational(g.eta[m] * g.dim);
      VertexNetwork loop;
      loop.vertices = {make_vertex(g)};
      loop.edges = {{{0, 2}, {0, 0}}};
      loop.open = {{0, 1}};
      ok = ok && contract(loop).tensor.nnz() == 0;
      nets += 2;
    }
    return std::to_string(nets) + " networks";
  });
  c.run("vertexnet", "parity flags exactly the iota nodes", [](bool& ok) {
    const GammaSet g = build_gammas(1, 1);
    VertexNetwork gauge;
    gauge.vertices = {make_vertex(g), make_vertex(g)};
    gauge.edges = {{{0, 2}, {1, 0}}, {{0, 1}, {1, 1}}};
    gauge.open = {{0, 0}, {1, 2}};
    ok = parity_check(gauge).ok() && parity_check(VertexNetwork{}).ok();
    for (std::size_t m = 1; m <= 2; ++m) {
      VertexNetwork net;
      net.vertices = {make_iota_node(m, 2)};
      for (std::size_t l = 0; l <= m; ++l) net.open.push_back({0, l});
      const auto rep = parity_check(net);
      ok = ok && !rep.ok() && rep.findings.front().kind == "iota_node";
    }
    return std::string("gauge network ok; iota^(1), iota^(2) flagged");
  });
}

}  // namespace

VerifyReport verify_all(std::uint64_t seed) {
  VerifyReport report;
  report.seed = seed;
  Rng rng(seed);
  Collector c{report};
  perfinite_checks(c);
  qset_checks(c, rng);
  cliff_checks(c);
  liecore_checks(c);
  yang_checks(c);
  palev_checks(c, rng);
  vertexnet_checks(c);
  return report;
}

}  // namespace finq
