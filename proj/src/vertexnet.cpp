#include "finq/vertexnet.hpp"

#include "finq/perfinite.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>

namespace finq {

std::string to_string(LegKind k) {
  switch (k) {
    case LegKind::spinor: return "spinor";
    case LegKind::dual_spinor: return "dual_spinor";
    case LegKind::vector: return "vector";
    case LegKind::monad: return "monad";
    case LegKind::dual_monad: return "dual_monad";
  }
  return "unknown";
}

LegKind partner(LegKind k) {
  switch (k) {
    case LegKind::spinor: return LegKind::dual_spinor;
    case LegKind::dual_spinor: return LegKind::spinor;
    case LegKind::vector: return LegKind::vector;
    case LegKind::monad: return LegKind::dual_monad;
    case LegKind::dual_monad: return LegKind::monad;
  }
  return k;
}

void SparseTensor::add(const std::vector<Eigen::Index>& index, const Rational& v) {
  if (v == 0) return;
  auto [it, inserted] = entries.emplace(index, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) entries.erase(it);
  }
}

Rational SparseTensor::at(const std::vector<Eigen::Index>& index) const {
  auto it = entries.find(index);
  return it == entries.end() ? Rational(0) : it->second;
}

Vertex make_vertex(const GammaSet& g) {
  Vertex v;
  v.type = VertexType::gauge;
  const auto k = static_cast<Eigen::Index>(g.size());
  v.legs = {{LegKind::dual_spinor, g.dim, 1}, {LegKind::vector, k, 0}, {LegKind::spinor, g.dim, 1}};
  v.tensor.dims = {g.dim, k, g.dim};
  for (Eigen::Index m = 0; m < k; ++m) {
    const MatQ& gm = g.gamma(static_cast<std::size_t>(m) + 1);
    for (Eigen::Index r = 0; r < g.dim; ++r)
      for (Eigen::Index c = 0; c < g.dim; ++c) v.tensor.add({r, m, c}, gm(r, c));
  }
  return v;
}

Vertex make_iota_node(std::size_t m, std::size_t rank) {
  if (rank < 1 || rank > kMaxIotaRank) throw DomainError("uniting node rank must be 1.." + std::to_string(kMaxIotaRank));
  const auto inputs = enumerate(rank - 1);
  const auto outputs = enumerate(rank);
  if (m < 1 || m > inputs.size()) throw DomainError("uniting node arity must be 1.." + std::to_string(inputs.size()));
  const auto n_in = static_cast<Eigen::Index>(inputs.size());
  const auto n_out = static_cast<Eigen::Index>(outputs.size());

  Vertex v;
  v.type = VertexType::iota;
  v.iota_m = m;
  v.iota_rank = rank;
  for (std::size_t a = 0; a < m; ++a) v.legs.push_back({LegKind::dual_monad, n_in, 1});
  v.legs.push_back({LegKind::monad, n_out, 1});
  v.tensor.dims.assign(m, n_in);
  v.tensor.dims.push_back(n_out);

  std::vector<Eigen::Index> idx(m);
  std::function<void(std::size_t)> fill = [&](std::size_t pos) {
    if (pos == m) {
      std::vector<Eigen::Index> sorted = idx;
      int sign = 1;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = a + 1; b < m; ++b) {
          if (idx[a] == idx[b]) return;
          if (idx[a] > idx[b]) sign = -sign;
        }
      std::sort(sorted.begin(), sorted.end());
      std::vector<PerfiniteSet> elems;
      for (auto s : sorted) elems.push_back(inputs[static_cast<std::size_t>(s)]);
      const auto x = PerfiniteSet::from_elements(std::move(elems));
      const auto at = std::lower_bound(outputs.begin(), outputs.end(), x);
      std::vector<Eigen::Index> full = idx;
      full.push_back(static_cast<Eigen::Index>(at - outputs.begin()));
      v.tensor.add(full, Rational(sign));
      return;
    }
    for (Eigen::Index s = 0; s < n_in; ++s) {
      idx[pos] = s;
      fill(pos + 1);
    }
  };
  fill(0);
  return v;
}

void VertexNetwork::validate() const {
  std::set<Slot> seen;
  const auto use = [&](const Slot& s) {
    if (s.vertex >= vertices.size() || s.leg >= vertices[s.vertex].legs.size())
      throw DomainError("slot (" + std::to_string(s.vertex) + "," + std::to_string(s.leg) + ") does not exist");
    if (!seen.insert(s).second)
      throw DomainError("slot (" + std::to_string(s.vertex) + "," + std::to_string(s.leg) + ") used twice");
  };
  for (const auto& e : edges) {
    use(e.a);
    use(e.b);
    const Leg& la = vertices[e.a.vertex].legs[e.a.leg];
    const Leg& lb = vertices[e.b.vertex].legs[e.b.leg];
    if (partner(la.kind) != lb.kind)
      throw DomainError("edge joins " + to_string(la.kind) + " to " + to_string(lb.kind) + " at vertex " +
                        std::to_string(e.a.vertex));
    if (la.dim != lb.dim) throw DomainError("edge joins legs of different dimension at vertex " + std::to_string(e.a.vertex));
  }
  for (const auto& s : open) use(s);
  for (std::size_t v = 0; v < vertices.size(); ++v)
    for (std::size_t l = 0; l < vertices[v].legs.size(); ++l)
      if (!seen.count({v, l}))
        throw DomainError("slot (" + std::to_string(v) + "," + std::to_string(l) + ") is neither joined nor open");
}

ParityReport parity_check(const VertexNetwork& net) {
  ParityReport r;
  for (std::size_t v = 0; v < net.vertices.size(); ++v) {
    const Vertex& x = net.vertices[v];
    int sum = 0;
    for (const auto& l : x.legs) sum += l.parity;
    if (x.type == VertexType::iota)
      r.findings.push_back({"iota_node", v,
                            "uniting node iota^(" + std::to_string(x.iota_m) +
                                ") maps grade " + std::to_string(x.iota_m) + " to a monad of grade 1"});
    if (sum % 2 != 0)
      r.findings.push_back({"leg_imbalance", v, "leg parities sum to " + std::to_string(sum) + " (odd)"});
  }
  int boundary = 0;
  for (const auto& s : net.open)
    if (s.vertex < net.vertices.size() && s.leg < net.vertices[s.vertex].legs.size())
      boundary += net.vertices[s.vertex].legs[s.leg].parity;
  if (boundary % 2 != 0)
    r.findings.push_back({"boundary", 0, "open legs carry odd total parity " + std::to_string(boundary)});
  return r;
}

namespace {

// Working tensor: labels >= 0 are internal edges, label -(k+1) is open leg k.
struct Work {
  std::vector<long> labels;
  std::vector<Eigen::Index> dims;
  std::map<std::vector<Eigen::Index>, Rational> entries;
};

std::size_t dense_size(const std::vector<Eigen::Index>& dims) {
  std::size_t s = 1;
  for (auto d : dims) s *= static_cast<std::size_t>(d);
  return s;
}

// Sums over pairs of positions carrying the same label.
Work self_trace(Work w) {
  while (true) {
    std::size_t a = 0, b = 0;
    bool found = false;
    for (std::size_t i = 0; i < w.labels.size() && !found; ++i)
      for (std::size_t j = i + 1; j < w.labels.size() && !found; ++j)
        if (w.labels[i] == w.labels[j]) {
          a = i;
          b = j;
          found = true;
        }
    if (!found) return w;
    Work out;
    for (std::size_t i = 0; i < w.labels.size(); ++i)
      if (i != a && i != b) {
        out.labels.push_back(w.labels[i]);
        out.dims.push_back(w.dims[i]);
      }
    for (const auto& [idx, v] : w.entries) {
      if (idx[a] != idx[b]) continue;
      std::vector<Eigen::Index> k;
      for (std::size_t i = 0; i < idx.size(); ++i)
        if (i != a && i != b) k.push_back(idx[i]);
      auto [it, ins] = out.entries.emplace(k, v);
      if (!ins) it->second += v;
    }
    std::erase_if(out.entries, [](const auto& e) { return e.second == 0; });
    w = std::move(out);
  }
}

std::vector<long> shared_labels(const Work& x, const Work& y) {
  std::vector<long> s;
  for (auto l : x.labels)
    if (std::find(y.labels.begin(), y.labels.end(), l) != y.labels.end()) s.push_back(l);
  return s;
}

std::vector<Eigen::Index> merged_dims(const Work& x, const Work& y, const std::vector<long>& shared) {
  std::vector<Eigen::Index> d;
  const auto keep = [&](long l) { return std::find(shared.begin(), shared.end(), l) == shared.end(); };
  for (std::size_t i = 0; i < x.labels.size(); ++i)
    if (keep(x.labels[i])) d.push_back(x.dims[i]);
  for (std::size_t i = 0; i < y.labels.size(); ++i)
    if (keep(y.labels[i])) d.push_back(y.dims[i]);
  return d;
}

Work merge(const Work& x, const Work& y) {
  const auto shared = shared_labels(x, y);
  const auto pos = [](const Work& w, long l) {
    return static_cast<std::size_t>(std::find(w.labels.begin(), w.labels.end(), l) - w.labels.begin());
  };
  std::vector<std::size_t> xs, ys, xr, yr;
  for (auto l : shared) {
    xs.push_back(pos(x, l));
    ys.push_back(pos(y, l));
  }
  Work out;
  for (std::size_t i = 0; i < x.labels.size(); ++i)
    if (std::find(xs.begin(), xs.end(), i) == xs.end()) {
      xr.push_back(i);
      out.labels.push_back(x.labels[i]);
      out.dims.push_back(x.dims[i]);
    }
  for (std::size_t i = 0; i < y.labels.size(); ++i)
    if (std::find(ys.begin(), ys.end(), i) == ys.end()) {
      yr.push_back(i);
      out.labels.push_back(y.labels[i]);
      out.dims.push_back(y.dims[i]);
    }

  std::map<std::vector<Eigen::Index>, std::vector<std::pair<std::vector<Eigen::Index>, const Rational*>>> by_key;
  for (const auto& [idx, v] : y.entries) {
    std::vector<Eigen::Index> key, rest;
    for (auto i : ys) key.push_back(idx[i]);
    for (auto i : yr) rest.push_back(idx[i]);
    by_key[key].emplace_back(std::move(rest), &v);
  }
  for (const auto& [idx, v] : x.entries) {
    std::vector<Eigen::Index> key, head;
    for (auto i : xs) key.push_back(idx[i]);
    for (auto i : xr) head.push_back(idx[i]);
    auto it = by_key.find(key);
    if (it == by_key.end()) continue;
    for (const auto& [rest, w] : it->second) {
      std::vector<Eigen::Index> full = head;
      full.insert(full.end(), rest.begin(), rest.end());
      const Rational prod = v * *w;
      auto [e, ins] = out.entries.emplace(std::move(full), prod);
      if (!ins) e->second += prod;
    }
  }
  std::erase_if(out.entries, [](const auto& e) { return e.second == 0; });
  return out;
}

struct Plan {
  std::vector<ContractionStep> steps;
  std::size_t cost = std::numeric_limits<std::size_t>::max();
};

// Connected pairs first; a disconnected pair is only merged when nothing else is left.
std::vector<std::pair<std::size_t, std::size_t>> candidate_pairs(const std::vector<Work>& ws) {
  std::vector<std::pair<std::size_t, std::size_t>> connected, all;
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      all.emplace_back(i, j);
      if (!shared_labels(ws[i], ws[j]).empty()) connected.emplace_back(i, j);
    }
  return connected.empty() ? all : connected;
}

std::vector<Work> apply_step(std::vector<Work> ws, std::size_t i, std::size_t j, Work merged) {
  ws.erase(ws.begin() + static_cast<std::ptrdiff_t>(j));
  ws[i] = std::move(merged);
  return ws;
}

// Order search on shapes only (no entries), minimizing the summed intermediate size.
void search(const std::vector<Work>& ws, std::vector<ContractionStep>& path, std::size_t cost, Plan& best) {
  if (ws.size() <= 1) {
    if (cost < best.cost) best = {path, cost};
    return;
  }
  for (auto [i, j] : candidate_pairs(ws)) {
    const auto shared = shared_labels(ws[i], ws[j]);
    Work shape;
    shape.dims = merged_dims(ws[i], ws[j], shared);
    for (auto l : ws[i].labels)
      if (std::find(shared.begin(), shared.end(), l) == shared.end()) shape.labels.push_back(l);
    for (auto l : ws[j].labels)
      if (std::find(shared.begin(), shared.end(), l) == shared.end()) shape.labels.push_back(l);
    const std::size_t size = dense_size(shape.dims);
    if (cost + size >= best.cost) continue;
    path.push_back({i, j, size});
    search(apply_step(ws, i, j, std::move(shape)), path, cost + size, best);
    path.pop_back();
  }
}

Work shape_of(const Work& w) { return {w.labels, w.dims, {}}; }

}  // namespace

NetworkResult contract(const VertexNetwork& net, const ContractOptions& options) {
  net.validate();
  if (options.enforce_parity) {
    const auto report = parity_check(net);
    if (!report.ok())
      throw DomainError("parity violation at vertex " + std::to_string(report.findings.front().vertex) + ": " +
                        report.findings.front().message);
  }

  std::vector<Work> ws;
  for (const auto& v : net.vertices) {
    Work w;
    w.labels.assign(v.legs.size(), 0);
    w.dims = v.tensor.dims;
    w.entries = v.tensor.entries;
    ws.push_back(std::move(w));
  }
  for (std::size_t e = 0; e < net.edges.size(); ++e) {
    ws[net.edges[e].a.vertex].labels[net.edges[e].a.leg] = static_cast<long>(e);
    ws[net.edges[e].b.vertex].labels[net.edges[e].b.leg] = static_cast<long>(e);
  }
  for (std::size_t k = 0; k < net.open.size(); ++k)
    ws[net.open[k].vertex].labels[net.open[k].leg] = -static_cast<long>(k) - 1;
  for (auto& w : ws) w = self_trace(std::move(w));

  NetworkResult result;
  if (ws.empty()) {
    result.tensor.add({}, Rational(1));
    return result;
  }

  if (ws.size() <= options.exhaustive_limit) {
    std::vector<Work> shapes;
    for (const auto& w : ws) shapes.push_back(shape_of(w));
    Plan best;
    std::vector<ContractionStep> path;
    search(shapes, path, 0, best);
    for (const auto& s : best.steps) ws = apply_step(ws, s.left, s.right, merge(ws[s.left], ws[s.right]));
    result.plan = best.steps;
  } else {
    while (ws.size() > 1) {
      std::size_t bi = 0, bj = 0, best = std::numeric_limits<std::size_t>::max();
      for (auto [i, j] : candidate_pairs(ws)) {
        const std::size_t size = dense_size(merged_dims(ws[i], ws[j], shared_labels(ws[i], ws[j])));
        if (size < best) {
          best = size;
          bi = i;
          bj = j;
        }
      }
      result.plan.push_back({bi, bj, best});
      ws = apply_step(ws, bi, bj, merge(ws[bi], ws[bj]));
    }
  }

  const Work& w = ws.front();
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < net.open.size(); ++k) {
    const long l = -static_cast<long>(k) - 1;
    order.push_back(static_cast<std::size_t>(std::find(w.labels.begin(), w.labels.end(), l) - w.labels.begin()));
    result.tensor.dims.push_back(w.dims[order.back()]);
  }
  for (const auto& [idx, v] : w.entries) {
    std::vector<Eigen::Index> out;
    for (auto p : order) out.push_back(idx[p]);
    result.tensor.add(out, v);
  }
  return result;
}

}  // namespace finq
