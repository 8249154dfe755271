#include "finq/cliff.hpp"

#include <map>
#include <mutex>
#include <optional>

namespace finq {

namespace {

using IMat = Eigen::MatrixXi;

// Real Pauli strings on n qubits: per qubit 0 = I, 1 = X, 2 = Z, 3 = Y := ZX,
// with Y = [[0,1],[-1,0]] the only factor squaring to -I.
struct PauliString {
  std::uint32_t code;
  int n;
  int factor(int qubit) const { return static_cast<int>(code >> (2 * qubit) & 3u); }
  int square_sign() const {
    int ys = 0;
    for (int i = 0; i < n; ++i) ys += factor(i) == 3;
    return ys % 2 ? -1 : 1;
  }
};

bool anticommute(const PauliString& a, const PauliString& b) {
  int s = 0;
  for (int i = 0; i < a.n; ++i) {
    const int fa = a.factor(i), fb = b.factor(i);
    const int xa = fa == 1 || fa == 3, za = fa == 2 || fa == 3;
    const int xb = fb == 1 || fb == 3, zb = fb == 2 || fb == 3;
    s += xa * zb + za * xb;
  }
  return s % 2 == 1;
}

IMat single(int f) {
  IMat m(2, 2);
  switch (f) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 1, 0, 0, -1; break;
    default: m << 0, 1, -1, 0; break;
  }
  return m;
}

IMat kron(const IMat& a, const IMat& b) {
  IMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

IMat to_matrix(const PauliString& s) {
  IMat m = IMat::Identity(1, 1);
  for (int i = 0; i < s.n; ++i) m = kron(m, single(s.factor(i)));
  return m;
}

constexpr long kSearchBudget = 20'000'000;

class CoreSearch {
 public:
  CoreSearch(int p, int q, int qubits) : p_(p), q_(q) {
    const std::uint32_t count = 1u << (2 * qubits);
    // The identity commutes with everything, so it only survives for a single generator.
    for (std::uint32_t c = 0; c < count; ++c) {
      PauliString s{c, qubits};
      (s.square_sign() > 0 ? pos_ : neg_).push_back(s);
    }
  }

  std::optional<std::vector<PauliString>> run() {
    chosen_.clear();
    if (extend(0, 0)) return chosen_;
    return std::nullopt;
  }

 private:
  // Slots 0..p-1 take positive strings, then q negative ones; within a sign
  // class candidates are taken in increasing order to skip permutations.
  bool extend(int slot, std::size_t start) {
    if (++nodes_ > kSearchBudget) return false;
    if (slot == p_ + q_) return true;
    const bool positive = slot < p_;
    const auto& pool = positive ? pos_ : neg_;
    if (slot == p_) start = 0;
    for (std::size_t c = start; c < pool.size(); ++c) {
      bool ok = true;
      for (const auto& s : chosen_)
        if (!anticommute(s, pool[c])) { ok = false; break; }
      if (!ok) continue;
      chosen_.push_back(pool[c]);
      if (extend(slot + 1, c + 1)) return true;
      chosen_.pop_back();
      if (nodes_ > kSearchBudget) return false;
    }
    return false;
  }

  int p_, q_;
  std::vector<PauliString> pos_, neg_, chosen_;
  long nodes_ = 0;
};

struct Core {
  std::vector<IMat> positive, negative;
  Eigen::Index dim = 1;
  bool minimal = true;
};

int log2_exact(Eigen::Index d) {
  int k = 0;
  while ((Eigen::Index{1} << k) < d) ++k;
  return k;
}

Core build_core(int p, int q) {
  Core core;
  if (p + q == 0) return core;
  const Eigen::Index target = minimal_real_dimension(p, q);
  for (int qubits = log2_exact(target); qubits <= log2_exact(target) + 2; ++qubits) {
    if (auto found = CoreSearch(p, q, qubits).run()) {
      for (const auto& s : *found) (s.square_sign() > 0 ? core.positive : core.negative).push_back(to_matrix(s));
      core.dim = Eigen::Index{1} << qubits;
      core.minimal = core.dim == target;
      return core;
    }
  }
  throw DomainError("no real Pauli-string representation found for Cl(" + std::to_string(p) + "," +
                    std::to_string(q) + ")");
}

const Core& cached_core(int p, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, Core> cache;
  std::lock_guard lock(mu);
  auto it = cache.find({p, q});
  if (it == cache.end()) it = cache.emplace(std::pair{p, q}, build_core(p, q)).first;
  return it->second;
}

}  // namespace

const MatQ& GammaSet::gamma(std::size_t a) const {
  if (a < 1 || a > gammas.size()) throw DomainError("gamma index " + std::to_string(a) + " out of range");
  return gammas[a - 1];
}

Eigen::Index minimal_real_dimension(int p, int q) {
  if (p < 0 || q < 0) throw DomainError("negative signature");
  const int k = p + q;
  const int s = (((p - q) % 8) + 8) % 8;
  int exp2 = 0;
  switch (s) {
    case 0: case 2: exp2 = k / 2; break;
    case 1: exp2 = (k - 1) / 2; break;
    case 3: case 5: case 7: exp2 = (k + 1) / 2; break;
    case 4: case 6: exp2 = (k + 2) / 2; break;
  }
  return Eigen::Index{1} << exp2;
}

int top_square_sign(int p, int q) {
  const int k = p + q;
  const int s1 = (k * (k - 1) / 2) % 2 ? -1 : 1;
  const int s2 = q % 2 ? -1 : 1;
  return s1 * s2;
}

GammaSet build_gammas(int p, int q) {
  if (p < 0 || q < 0) throw DomainError("negative signature");
  if (p + q > kMaxCliffordGenerators)
    throw DomainError("p + q must be at most " + std::to_string(kMaxCliffordGenerators));
  const int m = std::min(p, q);
  const Core& core = cached_core(p - m, q - m);

  std::vector<IMat> pos = core.positive, neg = core.negative;
  Eigen::Index dim = core.dim;
  const IMat x = single(1), z = single(2), y = single(3);
  for (int step = 0; step < m; ++step) {
    const IMat id = IMat::Identity(dim, dim);
    for (auto& g : pos) g = kron(g, z);
    for (auto& g : neg) g = kron(g, z);
    pos.push_back(kron(id, x));
    neg.push_back(kron(id, y));
    dim *= 2;
  }

  GammaSet g;
  g.p = p;
  g.q = q;
  g.dim = dim;
  g.minimal = core.minimal;
  for (const auto& m2 : pos) {
    g.gammas.push_back(m2.cast<Rational>());
    g.eta.push_back(1);
  }
  for (const auto& m2 : neg) {
    g.gammas.push_back(m2.cast<Rational>());
    g.eta.push_back(-1);
  }
  if (!g.minimal)
    g.note = "dimension " + std::to_string(dim) + " exceeds the minimal real dimension " +
             std::to_string(minimal_real_dimension(p, q));
  return g;
}

GammaSet with_top_element(const GammaSet& g) {
  if (g.size() % 2 != 0) throw DomainError("top element commutes with the gammas when p+q is odd");
  GammaSet out = g;
  const int s = top_square_sign(g.p, g.q);
  MatQ top = top_element(g);
  if (s > 0) {
    out.gammas.insert(out.gammas.begin() + g.p, top);
    out.eta.insert(out.eta.begin() + g.p, 1);
    ++out.p;
  } else {
    out.gammas.push_back(top);
    out.eta.push_back(-1);
    ++out.q;
  }
  out.minimal = out.dim == minimal_real_dimension(out.p, out.q);
  out.note = "extended by the top element of Cl(" + std::to_string(g.p) + "," + std::to_string(g.q) + ")";
  return out;
}

MatQ antisym(const GammaSet& g, std::size_t a, std::size_t b) {
  if (a == b) throw DomainError("antisym needs distinct indices");
  const MatQ& ga = g.gamma(a);
  const MatQ& gb = g.gamma(b);
  return (ga * gb - gb * ga) / Rational(2);
}

MatQ top_element(const GammaSet& g) {
  MatQ out = MatQ::Identity(g.dim, g.dim);
  for (std::size_t a = g.size(); a >= 1; --a) out = out * g.gamma(a);
  return out;
}

AnticommutationReport check_anticommutation(const GammaSet& g) {
  AnticommutationReport r;
  const MatQ id = MatQ::Identity(g.dim, g.dim);
  for (std::size_t a = 1; a <= g.size(); ++a)
    for (std::size_t b = a; b <= g.size(); ++b) {
      ++r.checked;
      const MatQ lhs = g.gamma(a) * g.gamma(b) + g.gamma(b) * g.gamma(a);
      const Rational expected = a == b ? Rational(2 * g.eta[a - 1]) : Rational(0);
      if (lhs == expected * id) ++r.exact;
    }
  return r;
}

std::string spin_label(std::size_t a, std::size_t b) {
  if (a < 10 && b < 10) return "L" + std::to_string(a) + std::to_string(b);
  return "L" + std::to_string(a) + "." + std::to_string(b);
}

MatrixAlgebra<Rational> spin_generators(const GammaSet& g) {
  std::vector<MatQ> basis;
  std::vector<std::string> labels;
  for (std::size_t a = 1; a <= g.size(); ++a)
    for (std::size_t b = a + 1; b <= g.size(); ++b) {
      basis.push_back(antisym(g, a, b) / Rational(2));
      labels.push_back(spin_label(a, b));
    }
  return MatrixAlgebra<Rational>::make(std::move(basis), std::move(labels));
}

}  // namespace finq
