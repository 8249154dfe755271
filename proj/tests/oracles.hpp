#pragma once

// Brute-force reference computations shared by the unit tests and the
// acceptance runner. None of them call into the code they check.

#include "finq/vertexnet.hpp"
#include "finq/yang.hpp"

#include <Eigen/Eigenvalues>

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace oracle {

using Index = Eigen::Index;

// ---------------------------------------------------------------------------
// Small real Clifford modules by exhaustive search.

/// True when Cl(p,q) has a d x d representation with entries in {-1,0,1}, d <= 2.
inline bool has_small_module(int p, int q, int d) {
  using M = Eigen::Matrix2i;
  std::vector<M> cands;
  const int cells = d * d;
  int total = 1;
  for (int i = 0; i < cells; ++i) total *= 3;
  for (int code = 0; code < total; ++code) {
    M m = M::Zero();
    int c = code;
    for (int i = 0; i < cells; ++i, c /= 3) m(i / d, i % d) = c % 3 - 1;
    cands.push_back(m);
  }
  M id = M::Zero();
  for (int i = 0; i < d; ++i) id(i, i) = 1;
  const int n = p + q;
  std::vector<M> chosen;
  std::function<bool(int)> search = [&](int k) {
    if (k == n) return true;
    const int sign = k < p ? 1 : -1;
    for (const auto& m : cands) {
      if (m * m != sign * id) continue;
      bool ok = true;
      for (const auto& o : chosen) ok = ok && (m * o + o * m) == M::Zero();
      if (!ok) continue;
      chosen.push_back(m);
      if (search(k + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return search(0);
}

// ---------------------------------------------------------------------------
// Coordinate spectra by dense diagonalization.

using CMat = Eigen::MatrixXcd;

inline CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline CMat to_complex(const finq::StepOperator& s) {
  CMat m = s.matrix.unaryExpr([](const finq::Rational& x) { return x.convert_to<double>(); }).cast<std::complex<double>>();
  return s.imaginary ? CMat(std::complex<double>(0, 1) * m) : m;
}

/// Eigenvalue counts of sum_t (step on factor t), keyed by (imaginary, value).
inline std::map<std::pair<bool, long>, std::uint64_t> dense_spectrum(const finq::StepOperator& step, std::size_t n) {
  const CMat s = to_complex(step);
  const Index d = s.rows();
  CMat total = CMat::Zero(1, 1);
  CMat id_left = CMat::Identity(1, 1);
  for (std::size_t t = 0; t < n; ++t) {
    // total acts on the first t factors; extend by one factor.
    total = kron(total, CMat::Identity(d, d)) + kron(id_left, s);
    id_left = CMat::Identity(id_left.rows() * d, id_left.cols() * d);
  }
  Eigen::ComplexEigenSolver<CMat> es(total);
  std::map<std::pair<bool, long>, std::uint64_t> out;
  for (Index i = 0; i < total.rows(); ++i) {
    const auto e = es.eigenvalues()(i);
    const bool imag = std::abs(e.imag()) > std::abs(e.real()) + 1e-9;
    const long v = std::lround(imag ? e.imag() : e.real());
    ++out[{imag && v != 0, v}];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Unitary spin-j ladder in double precision: |m>, m = -j..j, index n = j + m.

struct SpinJ {
  Eigen::MatrixXd jp, jm, jz;
};

inline SpinJ spin_matrices(double j) {
  const auto dim = static_cast<Index>(std::lround(2 * j + 1));
  SpinJ s{Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim), Eigen::MatrixXd::Zero(dim, dim)};
  for (Index n = 0; n < dim; ++n) {
    const double m = -j + static_cast<double>(n);
    s.jz(n, n) = m;
    if (n + 1 < dim) s.jp(n + 1, n) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  s.jm = s.jp.transpose();
  return s;
}

/// |([a, a+] - 1)|n>| with a = J-/sqrt(2j).
inline double bose_deviation(double j, std::size_t n) {
  const auto s = spin_matrices(j);
  const Eigen::MatrixXd a = s.jm / std::sqrt(2 * j), ad = s.jp / std::sqrt(2 * j);
  const Eigen::MatrixXd c = a * ad - ad * a - Eigen::MatrixXd::Identity(s.jz.rows(), s.jz.cols());
  return c.col(static_cast<Index>(n)).norm();
}

// ---------------------------------------------------------------------------
// Vertex networks: dense backtracking einsum in int64.

using Dense = std::map<std::vector<Index>, std::int64_t>;

inline Dense einsum(const finq::VertexNetwork& net) {
  // One index variable per edge and per open slot.
  std::map<finq::Slot, std::size_t> var;
  std::vector<Index> var_dim;
  auto leg_dim = [&](const finq::Slot& s) { return net.vertices[s.vertex].legs[s.leg].dim; };
  for (const auto& e : net.edges) {
    var[e.a] = var[e.b] = var_dim.size();
    var_dim.push_back(leg_dim(e.a));
  }
  for (const auto& s : net.open) {
    var[s] = var_dim.size();
    var_dim.push_back(leg_dim(s));
  }
  // Dense copies of every vertex tensor.
  std::vector<std::vector<std::int64_t>> dense(net.vertices.size());
  for (std::size_t v = 0; v < net.vertices.size(); ++v) {
    const auto& t = net.vertices[v].tensor;
    std::size_t size = 1;
    for (auto d : t.dims) size *= static_cast<std::size_t>(d);
    dense[v].assign(size, 0);
    for (const auto& [idx, val] : t.entries) {
      std::size_t flat = 0;
      for (std::size_t k = 0; k < idx.size(); ++k) flat = flat * static_cast<std::size_t>(t.dims[k]) + static_cast<std::size_t>(idx[k]);
      dense[v][flat] = val.convert_to<std::int64_t>();
    }
  }
  std::vector<Index> value(var_dim.size(), -1);
  Dense out;
  std::function<void(std::size_t, std::int64_t)> visit = [&](std::size_t v, std::int64_t acc) {
    if (v == net.vertices.size()) {
      std::vector<Index> key;
      for (const auto& s : net.open) key.push_back(value[var.at(s)]);
      out[key] += acc;
      return;
    }
    const auto& legs = net.vertices[v].legs;
    std::vector<Index> idx(legs.size(), 0);
    for (std::size_t flat = 0; flat < dense[v].size(); ++flat) {
      const std::int64_t x = dense[v][flat];
      if (x == 0) continue;
      std::size_t rest = flat;
      for (std::size_t k = legs.size(); k-- > 0;) {
        idx[k] = static_cast<Index>(rest % static_cast<std::size_t>(legs[k].dim));
        rest /= static_cast<std::size_t>(legs[k].dim);
      }
      // Consistency with variables already fixed by earlier vertices.
      std::vector<std::size_t> fixed_here;
      bool ok = true;
      for (std::size_t k = 0; k < legs.size() && ok; ++k) {
        const std::size_t vi = var.at({v, k});
        if (value[vi] < 0) {
          value[vi] = idx[k];
          fixed_here.push_back(vi);
        } else {
          ok = value[vi] == idx[k];
        }
      }
      if (ok) visit(v + 1, acc * x);
      for (auto vi : fixed_here) value[vi] = -1;
    }
  };
  visit(0, 1);
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline bool same(const Dense& d, const finq::SparseTensor& t) {
  if (d.size() != t.entries.size()) return false;
  for (const auto& [idx, v] : t.entries) {
    auto it = d.find(idx);
    if (it == d.end() || v != finq::Rational(it->second)) return false;
  }
  return true;
}

/// Calls `fn` on every network over the given vertices: each partial matching
/// of compatible legs, remaining legs open in (vertex, leg) order.
inline void for_each_network(const std::vector<finq::Vertex>& vertices,
                             const std::function<void(const finq::VertexNetwork&)>& fn) {
  std::vector<finq::Slot> slots;
  for (std::size_t v = 0; v < vertices.size(); ++v)
    for (std::size_t l = 0; l < vertices[v].legs.size(); ++l) slots.push_back({v, l});
  std::vector<int> partner(slots.size(), -2);  // -2 undecided, -1 open
  auto leg = [&](std::size_t i) { return vertices[slots[i].vertex].legs[slots[i].leg]; };
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == slots.size()) {
      finq::VertexNetwork net;
      net.vertices = vertices;
      for (std::size_t k = 0; k < slots.size(); ++k) {
        if (partner[k] == -1) net.open.push_back(slots[k]);
        else if (static_cast<std::size_t>(partner[k]) > k) net.edges.push_back({slots[k], slots[static_cast<std::size_t>(partner[k])]});
      }
      fn(net);
      return;
    }
    if (partner[i] != -2) return rec(i + 1);
    partner[i] = -1;
    rec(i + 1);
    for (std::size_t k = i + 1; k < slots.size(); ++k) {
      if (partner[k] != -2) continue;
      if (leg(k).kind != finq::partner(leg(i).kind) || leg(k).dim != leg(i).dim) continue;
      partner[i] = static_cast<int>(k);
      partner[k] = static_cast<int>(i);
      rec(i + 1);
      partner[k] = -2;
    }
    partner[i] = -2;
  };
  rec(0);
}

/// Vertex alphabet for exhaustive network checks: gauge vertices of small
/// signatures (spinor and vector dims <= 8) and uniting nodes of rank <= 2.
inline std::vector<finq::Vertex> network_alphabet() {
  std::vector<finq::Vertex> out;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {3, 1}, {1, 3}})
    out.push_back(finq::make_vertex(finq::build_gammas(p, q)));
  out.push_back(finq::make_iota_node(1, 1));
  out.push_back(finq::make_iota_node(1, 2));
  out.push_back(finq::make_iota_node(2, 2));
  return out;
}

}  // namespace oracle
