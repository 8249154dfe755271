#include "finq/palev.hpp"

#include <cctype>

namespace finq {

void prune_zeros(SpMatQ& m) {
  m.prune([](Eigen::Index, Eigen::Index, const Rational& v) { return v != 0; });
}

namespace {

SpMatQ zero_like(Eigen::Index n) { return SpMatQ(n, n); }

SpMatQ pruned(SpMatQ m) {
  prune_zeros(m);
  return m;
}

bool same(const SpMatQ& x, const SpMatQ& y) { return pruned(SpMatQ(x - y)).nonZeros() == 0; }

std::optional<Rational> exact_sqrt(const Rational& x) {
  if (x < 0) return std::nullopt;
  const BigInt n = boost::multiprecision::numerator(x);
  const BigInt d = boost::multiprecision::denominator(x);
  const BigInt sn = boost::multiprecision::sqrt(n);
  const BigInt sd = boost::multiprecision::sqrt(d);
  if (sn * sn != n || sd * sd != d) return std::nullopt;
  return Rational(sn, sd);
}

struct Ladder {
  SpMatQ plus, minus, z;
};

Ladder ladder(const Rational& j, Eigen::Index dim) {
  Ladder l{SpMatQ(dim, dim), SpMatQ(dim, dim), SpMatQ(dim, dim)};
  for (Eigen::Index n = 0; n < dim; ++n) {
    const Rational m = -j + n;
    if (n + 1 < dim) l.plus.insert(n + 1, n) = 1;
    if (n >= 1) l.minus.insert(n - 1, n) = (j + m) * (j - m + 1);
    if (m != 0) l.z.insert(n, n) = m;
  }
  l.plus.makeCompressed();
  l.minus.makeCompressed();
  l.z.makeCompressed();
  return l;
}

ComplexMatrix real(SpMatQ m) {
  const auto n = m.rows();
  return {std::move(m), zero_like(n)};
}

SurdMatrix scaled_by_inverse_sqrt(const SpMatQ& m, const Rational& N) {
  SurdMatrix s;
  if (auto root = exact_sqrt(N)) {
    s.rational = m / *root;
    s.surd = zero_like(m.rows());
    s.d = 1;
  } else {
    s.rational = zero_like(m.rows());
    s.surd = m / N;  // 1/sqrt(N) = sqrt(N)/N
    s.d = N;
  }
  return s;
}

}  // namespace

SurdMatrix operator*(const SurdMatrix& x, const SurdMatrix& y) {
  if (x.d != y.d && !x.is_rational() && !y.is_rational()) throw DomainError("surd matrices over different fields");
  const Rational d = x.is_rational() ? y.d : x.d;
  SurdMatrix out;
  out.d = d;
  out.rational = pruned(SpMatQ(x.rational * y.rational + d * SpMatQ(x.surd * y.surd)));
  out.surd = pruned(SpMatQ(x.rational * y.surd + x.surd * y.rational));
  return out;
}

SurdMatrix operator-(const SurdMatrix& x, const SurdMatrix& y) {
  if (x.d != y.d && !x.is_rational() && !y.is_rational()) throw DomainError("surd matrices over different fields");
  SurdMatrix out;
  out.d = x.is_rational() ? y.d : x.d;
  out.rational = pruned(SpMatQ(x.rational - y.rational));
  out.surd = pruned(SpMatQ(x.surd - y.surd));
  return out;
}

SurdMatrix power(const SurdMatrix& m, std::size_t k) {
  SurdMatrix out;
  out.d = m.d;
  out.rational = SpMatQ(m.rows(), m.rows());
  out.rational.setIdentity();
  out.surd = zero_like(m.rows());
  for (std::size_t i = 0; i < k; ++i) out = out * m;
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
  return {pruned(SpMatQ(x.re * y.re - x.im * y.im)), pruned(SpMatQ(x.re * y.im + x.im * y.re))};
}

ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
  return {pruned(SpMatQ(x.re - y.re)), pruned(SpMatQ(x.im - y.im))};
}

bool operator==(const ComplexMatrix& x, const ComplexMatrix& y) { return same(x.re, y.re) && same(x.im, y.im); }

ComplexMatrix times_i(const ComplexMatrix& x) { return {pruned(SpMatQ(-x.im)), x.re}; }

std::string to_string(OscillatorPreset p) { return p == OscillatorPreset::spin3 ? "spin3" : "spin21"; }

OscillatorPreset parse_oscillator_preset(const std::string& name) {
  if (name == "spin3") return OscillatorPreset::spin3;
  if (name == "spin21") return OscillatorPreset::spin21;
  throw DomainError("unknown oscillator preset '" + name + "' (spin3, spin21)");
}

PalevOscillator build_oscillator(OscillatorPreset preset, const Rational& j) {
  const Rational two_j = 2 * j;
  if (j <= 0 || boost::multiprecision::denominator(two_j) != 1)
    throw DomainError("j must be a positive half-integer");
  if (two_j + 1 > kMaxIrrepDimension)
    throw DomainError("irrep dimension 2j+1 exceeds " + std::to_string(kMaxIrrepDimension));

  PalevOscillator o;
  o.preset = preset;
  o.j = j;
  o.dim = (two_j + 1).convert_to<Eigen::Index>();
  o.N = two_j;
  const Ladder l = ladder(j, o.dim);
  const auto comm = [](const ComplexMatrix& x, const ComplexMatrix& y) { return x * y - y * x; };

  if (preset == OscillatorPreset::spin3) {
    o.q = real(pruned(SpMatQ((l.plus + l.minus) / Rational(2))));
    o.p = {zero_like(o.dim), pruned(SpMatQ((l.minus - l.plus) / Rational(2)))};
    o.r = real(l.z);
    if (!(comm(o.q, o.p) == times_i(o.r)) || !(comm(o.p, o.r) == times_i(o.q)) ||
        !(comm(o.r, o.q) == times_i(o.p)))
      throw DomainError("spin(3) relations failed in the ladder irrep");
  } else {
    o.q = real(pruned(SpMatQ(-(l.plus + l.minus) / Rational(2))));
    o.p = real(pruned(SpMatQ((l.plus - l.minus) / Rational(2))));
    o.r = real(l.z);
    if (!(comm(o.q, o.p) == o.r) || !(comm(o.p, o.r) == o.q) || !(comm(o.q, o.r) == o.p))
      throw DomainError("spin(2,1) relations failed in the ladder irrep");
  }

  o.a = scaled_by_inverse_sqrt(l.minus, o.N);
  o.a_dag = scaled_by_inverse_sqrt(l.plus, o.N);
  const SurdMatrix c = o.a * o.a_dag - o.a_dag * o.a;
  if (!c.is_rational() || !same(c.rational, SpMatQ(-l.z / j)))
    throw DomainError("oscillator commutator is not -Jz/j");
  return o;
}

BoseDeviation bose_deviation(const PalevOscillator& osc, std::size_t n) {
  if (static_cast<Eigen::Index>(n) >= osc.dim) throw DomainError("level out of range (0..2j)");
  const SurdMatrix c = osc.a * osc.a_dag - osc.a_dag * osc.a;
  if (!c.is_rational()) throw DomainError("oscillator commutator left the rational field");
  BoseDeviation d;
  d.norm_squared = 0;
  const auto col = static_cast<Eigen::Index>(n);
  for (Eigen::Index row = 0; row < osc.dim; ++row) {
    Rational v = c.rational.coeff(row, col) - (row == col ? Rational(1) : Rational(0));
    d.norm_squared += v * v;
  }
  d.exact = exact_sqrt(d.norm_squared);
  d.norm = d.exact ? d.exact->convert_to<double>() : std::sqrt(d.norm_squared.convert_to<double>());
  return d;
}

std::size_t exclusion_bound(const PalevOscillator& osc) {
  SurdMatrix p = osc.a_dag;
  std::size_t k = 1;
  while (!p.is_zero()) {
    if (static_cast<Eigen::Index>(k) > osc.dim) throw DomainError("raising operator is not nilpotent");
    p = p * osc.a_dag;
    ++k;
  }
  return k - 1;
}

// ---------------------------------------------------------------------------

std::string Gaussian::to_string() const {
  if (im == 0) return format_scalar(re);
  if (re == 0) return format_scalar(im) + "i";
  return "(" + format_scalar(re) + (im < 0 ? "" : "+") + format_scalar(im) + "i)";
}

RelationSet::RelationSet(std::string name, std::vector<std::string> generators,
                         std::map<std::pair<std::size_t, std::size_t>, Bracket> brackets)
    : name_(std::move(name)), generators_(std::move(generators)), brackets_(std::move(brackets)) {
  const std::size_t n = generators_.size();
  for (const auto& [key, br] : brackets_) {
    if (key.first >= key.second || key.second >= n) throw DomainError("relations must be keyed by a < b");
    for (const auto& [k, c] : br.linear)
      if (k >= n) throw DomainError("relation refers to an unknown generator");
  }
  // Jacobi on the linear parts; central terms drop out of double brackets.
  const auto lin = [&](std::size_t a, std::size_t b) {
    std::vector<Gaussian> v(n);
    for (const auto& [k, c] : bracket(a, b).linear) v[k] = v[k] + c;
    return v;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        std::vector<Gaussian> total(n);
        const std::size_t cyc[3][3] = {{a, b, c}, {b, c, a}, {c, a, b}};
        for (const auto& t : cyc) {
          const auto inner = lin(t[0], t[1]);
          for (std::size_t m = 0; m < n; ++m) {
            if (inner[m].is_zero()) continue;
            const auto outer = lin(m, t[2]);
            for (std::size_t k = 0; k < n; ++k) total[k] = total[k] + inner[m] * outer[k];
          }
        }
        for (const auto& g : total)
          if (!g.is_zero())
            throw DomainError("relation set '" + name_ + "' violates the Jacobi identity; normal forms would not be unique");
      }
}

RelationSet RelationSet::preset(const std::string& name) {
  using B = Bracket;
  const Gaussian one{1, 0}, i{0, 1}, minus_i{0, -1};
  if (name == "h1") return RelationSet("h1", {"q", "p", "hbar"}, {{{0, 1}, B{{{2, i}}, {}}}});
  if (name == "spin3")
    return RelationSet("spin3", {"q", "p", "r"},
                       {{{0, 1}, B{{{2, i}}, {}}}, {{1, 2}, B{{{0, i}}, {}}}, {{0, 2}, B{{{1, minus_i}}, {}}}});
  if (name == "spin21")
    return RelationSet("spin21", {"q", "p", "r"},
                       {{{0, 1}, B{{{2, one}}, {}}}, {{1, 2}, B{{{0, one}}, {}}}, {{0, 2}, B{{{1, one}}, {}}}});
  throw DomainError("unknown relation preset '" + name + "' (h1, spin3, spin21)");
}

std::size_t RelationSet::index_of(const std::string& g) const {
  for (std::size_t k = 0; k < generators_.size(); ++k)
    if (generators_[k] == g) return k;
  throw DomainError("unknown generator '" + g + "' in relation set '" + name_ + "'");
}

RelationSet::Bracket RelationSet::bracket(std::size_t a, std::size_t b) const {
  if (a == b) return {};
  const bool flip = a > b;
  auto it = brackets_.find(flip ? std::pair{b, a} : std::pair{a, b});
  if (it == brackets_.end()) return {};
  Bracket out = it->second;
  if (flip) {
    for (auto& [k, c] : out.linear) c = -c;
    out.central = -out.central;
  }
  return out;
}

NCPolynomial NCPolynomial::word(Word w, Gaussian c) {
  NCPolynomial p;
  p.add(w, c);
  return p;
}

void NCPolynomial::add(const Word& w, const Gaussian& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (!inserted) {
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCPolynomial NCPolynomial::operator+(const NCPolynomial& o) const {
  NCPolynomial out = *this;
  for (const auto& [w, c] : o.terms_) out.add(w, c);
  return out;
}

NCPolynomial NCPolynomial::operator-(const NCPolynomial& o) const { return *this + o * Gaussian{-1, 0}; }

NCPolynomial NCPolynomial::operator*(const Gaussian& c) const {
  NCPolynomial out;
  for (const auto& [w, v] : terms_) out.add(w, v * c);
  return out;
}

namespace {

// Integers print bare inside symbolic expressions: "2i p", "1/2 q".
std::string compact(const Rational& x) {
  return boost::multiprecision::denominator(x) == 1 ? boost::multiprecision::numerator(x).str() : format_scalar(x);
}

std::string coefficient_text(const Gaussian& c) {
  if (c.im == 0) return compact(c.re);
  const std::string im = c.im == 1 ? "i" : c.im == -1 ? "-i" : compact(c.im) + "i";
  if (c.re == 0) return im;
  return "(" + compact(c.re) + (c.im < 0 ? "" : "+") + im + ")";
}

}  // namespace

std::string NCPolynomial::to_string(const RelationSet& rel) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [w, c] : terms_) {
    // Lead with the sign so "q p + -1i hbar" reads "q p - i hbar".
    const bool negative = c.re < 0 || (c.re == 0 && c.im < 0);
    const Gaussian mag = negative ? Gaussian{-c.re, -c.im} : c;
    if (out.empty()) out += negative ? "-" : "";
    else out += negative ? " - " : " + ";
    if (w.empty() || !(mag == Gaussian{1, 0})) out += coefficient_text(mag);
    for (auto g : w) out += (out.empty() || out.back() == '-' || out.back() == ' ' ? "" : " ") + rel.generators()[g];
  }
  return out;
}

NCPolynomial NCPolynomial::parse(const std::string& text, const RelationSet& rel) {
  NCPolynomial out;
  std::size_t pos = 0;
  const auto skip = [&] {
    while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == '*')) ++pos;
  };
  bool first = true;
  while (true) {
    skip();
    if (pos >= text.size()) break;
    Gaussian coeff{1, 0};
    if (text[pos] == '+' || text[pos] == '-') {
      if (text[pos] == '-') coeff = -coeff;
      ++pos;
    } else if (!first) {
      throw DomainError("expected '+' or '-' at position " + std::to_string(pos));
    }
    first = false;
    Word w;
    bool any = false;
    while (true) {
      skip();
      if (pos >= text.size() || text[pos] == '+' || text[pos] == '-') break;
      any = true;
      const char ch = text[pos];
      if (ch == '(') {
        const auto close = text.find(')', pos);
        if (close == std::string::npos) throw DomainError("unbalanced parenthesis");
        coeff = coeff * Gaussian{parse_rational(text.substr(pos + 1, close - pos - 1)), 0};
        pos = close + 1;
      } else if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::size_t end = pos;
        while (end < text.size() && (std::isdigit(static_cast<unsigned char>(text[end])) || text[end] == '/' || text[end] == '.'))
          ++end;
        coeff = coeff * Gaussian{parse_rational(text.substr(pos, end - pos)), 0};
        pos = end;
      } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t end = pos;
        while (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) ++end;
        const std::string name = text.substr(pos, end - pos);
        pos = end;
        const auto& gens = rel.generators();
        if (name == "i" && std::find(gens.begin(), gens.end(), "i") == gens.end())
          coeff = coeff * Gaussian{0, 1};
        else
          w.push_back(rel.index_of(name));
      } else {
        throw DomainError(std::string("unexpected character '") + ch + "' in polynomial");
      }
    }
    if (!any) throw DomainError("empty term in polynomial");
    out.add(w, coeff);
  }
  return out;
}

NCPolynomial normal_order(const NCPolynomial& poly, const RelationSet& rel) {
  // Each rewrite either swaps an inversion or shortens the word, so the loop ends.
  std::map<Word, Gaussian> pending = poly.terms();
  NCPolynomial out;
  const auto push = [&](const Word& w, const Gaussian& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = pending.emplace(w, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) pending.erase(it);
    }
  };
  while (!pending.empty()) {
    // Longest words first so shorter rewrites accumulate before being processed.
    auto it = std::max_element(pending.begin(), pending.end(), [](const auto& x, const auto& y) {
      return x.first.size() != y.first.size() ? x.first.size() < y.first.size() : x.first < y.first;
    });
    const Word w = it->first;
    const Gaussian c = it->second;
    pending.erase(it);
    std::size_t t = 0;
    while (t + 1 < w.size() && w[t] <= w[t + 1]) ++t;
    if (t + 1 >= w.size()) {
      out.add(w, c);
      continue;
    }
    // w[t] w[t+1] = w[t+1] w[t] + [w[t], w[t+1]]
    Word swapped = w;
    std::swap(swapped[t], swapped[t + 1]);
    push(swapped, c);
    const auto br = rel.bracket(w[t], w[t + 1]);
    for (const auto& [k, ck] : br.linear) {
      Word r(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
      r.push_back(k);
      r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(t) + 2, w.end());
      push(r, c * ck);
    }
    if (!br.central.is_zero()) {
      Word r(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(t));
      r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(t) + 2, w.end());
      push(r, c * br.central);
    }
  }
  return out;
}

DenseComplex evaluate(const NCPolynomial& poly, const std::vector<DenseComplex>& gens) {
  if (gens.empty()) throw DomainError("no generator matrices");
  const auto n = gens.front().re.rows();
  DenseComplex out{MatQ::Zero(n, n), MatQ::Zero(n, n)};
  for (const auto& [w, c] : poly.terms()) {
    DenseComplex acc{MatQ::Identity(n, n), MatQ::Zero(n, n)};
    for (auto g : w) {
      if (g >= gens.size()) throw DomainError("generator index out of range");
      const auto& m = gens[g];
      acc = {acc.re * m.re - acc.im * m.im, acc.re * m.im + acc.im * m.re};
    }
    out.re += c.re * acc.re - c.im * acc.im;
    out.im += c.re * acc.im + c.im * acc.re;
  }
  return out;
}

std::vector<DenseComplex> preset_representation(const RelationSet& rel) {
  if (rel.name() == "h1") {
    DenseComplex q{MatQ::Zero(3, 3), MatQ::Zero(3, 3)}, p = q, hbar = q;
    q.re(0, 1) = 1;
    p.re(1, 2) = 1;
    hbar.im(0, 2) = -1;
    return {q, p, hbar};
  }
  const auto o = build_oscillator(parse_oscillator_preset(rel.name()), 1);
  const auto dense = [](const ComplexMatrix& m) { return DenseComplex{MatQ(m.re), MatQ(m.im)}; };
  return {dense(o.q), dense(o.p), dense(o.r)};
}

}  // namespace finq
