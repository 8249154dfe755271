#pragma once

// Linearized perfinite sets. A RankFrame fixes the generator monads
// {s} (rank(s) <= r-1) in Ackermann order; a classical basis element x of
// rank <= r is the Grassmann monomial of the monads {a}, a in x, and is
// stored internally as a bitmask over generator indices. Mask order equals
// Ackermann order of the labels, so every sign below derives from that order.

#include "finq/linalg.hpp"
#include "finq/perfinite.hpp"

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace finq {

using Blade = std::uint32_t;

enum class MetricPreset { zero, berezin, hyperbolic, custom };

std::string to_string(MetricPreset preset);
MetricPreset parse_metric_preset(const std::string& name);

inline constexpr std::size_t kMaxFrameRank = 4;

namespace detail {

/// Sign of e_a ∨ e_b for disjoint blades: (-1)^(pairs i in a, j in b, i > j).
inline int wedge_sign(Blade a, Blade b) {
  int swaps = 0;
  for (Blade rest = b; rest; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

}  // namespace detail

template <typename Scalar>
class RankFrame {
 public:
  using Ptr = std::shared_ptr<const RankFrame>;

  static Ptr build(std::size_t r, MetricPreset preset = MetricPreset::zero,
                   Scalar top_scale = Scalar(1), double tol = kDefaultTolerance) {
    auto f = std::shared_ptr<RankFrame>(new RankFrame(r, top_scale, tol));
    f->preset_ = preset;
    const auto n = static_cast<Eigen::Index>(f->monads_.size());
    f->metric_ = Mat<Scalar>::Zero(n, n);
    switch (preset) {
      case MetricPreset::zero:
        break;
      case MetricPreset::berezin:
        // Polarized Berezin form restricted to generators: top coefficient of
        // (e_i ∨ e_j + e_j ∨ e_i)/2.
        for (Eigen::Index i = 0; i < n; ++i)
          for (Eigen::Index j = 0; j < n; ++j) {
            Scalar acc = 0;
            const Blade a = Blade{1} << i, b = Blade{1} << j;
            if (!(a & b) && (a | b) == f->top_blade())
              acc = Scalar(detail::wedge_sign(a, b) + detail::wedge_sign(b, a)) / Scalar(2);
            f->metric_(i, j) = acc / f->top_scale_;
          }
        break;
      case MetricPreset::hyperbolic:
        if (n % 2 != 0)
          throw DomainError("hyperbolic metric needs an even number of generators");
        for (Eigen::Index i = 0; i + 1 < n; i += 2) {
          f->metric_(i, i + 1) = Scalar(1) / Scalar(2);
          f->metric_(i + 1, i) = Scalar(1) / Scalar(2);
        }
        break;
      case MetricPreset::custom:
        throw DomainError("use with_metric() for a custom metric");
    }
    return f;
  }

  static Ptr with_metric(std::size_t r, Mat<Scalar> metric, Scalar top_scale = Scalar(1),
                         double tol = kDefaultTolerance) {
    auto f = std::shared_ptr<RankFrame>(new RankFrame(r, top_scale, tol));
    const auto n = static_cast<Eigen::Index>(f->monads_.size());
    if (metric.rows() != n || metric.cols() != n)
      throw DomainError("metric must be " + std::to_string(n) + "x" + std::to_string(n));
    if (!(metric - metric.transpose()).isZero(0))
      throw DomainError("metric must be symmetric");
    f->preset_ = MetricPreset::custom;
    f->metric_ = std::move(metric);
    return f;
  }

  std::size_t rank_bound() const { return r_; }
  std::size_t generator_count() const { return monads_.size(); }
  /// Generator labels {s}, in Ackermann order.
  const std::vector<PerfiniteSet>& monads() const { return monads_; }
  /// The s of each generator {s}: all sets of rank <= r-1.
  const std::vector<PerfiniteSet>& atoms() const { return atoms_; }
  const Mat<Scalar>& metric() const { return metric_; }
  MetricPreset preset() const { return preset_; }
  Blade top_blade() const {
    return monads_.size() >= 32 ? ~Blade{0} : (Blade{1} << monads_.size()) - 1;
  }
  const Scalar& top_scale() const { return top_scale_; }
  double tolerance() const { return tol_; }
  std::size_t dimension() const { return std::size_t{1} << monads_.size(); }

  std::optional<std::size_t> atom_index(const PerfiniteSet& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Classical basis label of a blade: the union of its monads, i.e. the set of atoms.
  PerfiniteSet label(Blade b) const {
    std::vector<PerfiniteSet> el;
    for (Blade rest = b; rest; rest &= rest - 1) el.push_back(atoms_[std::countr_zero(rest)]);
    return PerfiniteSet::from_elements(std::move(el));
  }

  Blade blade_of(const PerfiniteSet& x) const {
    if (x.rank() > r_)
      throw DomainError("rank " + std::to_string(x.rank()) + " set does not fit frame of rank " +
                        std::to_string(r_));
    Blade b = 0;
    for (const auto& e : x.elements()) b |= Blade{1} << *atom_index(e);
    return b;
  }

  bool same_as(const RankFrame& o) const {
    return this == &o || (r_ == o.r_ && preset_ == o.preset_ && top_scale_ == o.top_scale_ &&
                          metric_ == o.metric_);
  }

 private:
  RankFrame(std::size_t r, Scalar top_scale, double tol) : r_(r), top_scale_(top_scale), tol_(tol) {
    if (r > kMaxFrameRank)
      throw DomainError("rank frames above " + std::to_string(kMaxFrameRank) + " are refused");
    if (ScalarTraits<Scalar>::is_zero(top_scale, 0.0)) throw DomainError("top scale must be nonzero");
    if (r > 0) atoms_ = enumerate(r - 1);
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      monads_.push_back(iota(atoms_[i]));
      index_.emplace(atoms_[i], i);
    }
  }

  std::size_t r_;
  Scalar top_scale_;
  double tol_;
  MetricPreset preset_ = MetricPreset::zero;
  std::vector<PerfiniteSet> atoms_;
  std::vector<PerfiniteSet> monads_;
  std::unordered_map<PerfiniteSet, std::size_t, PerfiniteHash> index_;
  Mat<Scalar> metric_;
};

template <typename Scalar>
class Multivector {
 public:
  using Frame = RankFrame<Scalar>;
  using FramePtr = typename Frame::Ptr;
  using Terms = std::map<Blade, Scalar>;

  explicit Multivector(FramePtr frame) : frame_(std::move(frame)) {}

  static Multivector scalar(FramePtr frame, const Scalar& c) {
    Multivector m(std::move(frame));
    m.add(0, c);
    return m;
  }
  static Multivector generator(FramePtr frame, std::size_t i, const Scalar& c = Scalar(1)) {
    if (i >= frame->generator_count()) throw DomainError("generator index out of range");
    Multivector m(std::move(frame));
    m.add(Blade{1} << i, c);
    return m;
  }
  static Multivector blade(FramePtr frame, Blade b, const Scalar& c = Scalar(1)) {
    Multivector m(std::move(frame));
    m.add(b, c);
    return m;
  }
  static Multivector top(FramePtr frame) {
    const Blade t = frame->top_blade();
    return blade(std::move(frame), t);
  }

  /// Adds c to the coefficient of blade b, dropping the term if it cancels.
  void add(Blade b, const Scalar& c) {
    if (ScalarTraits<Scalar>::is_zero(c, frame_->tolerance())) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
      it->second += c;
      if (ScalarTraits<Scalar>::is_zero(it->second, frame_->tolerance())) terms_.erase(it);
    }
  }

  const Terms& terms() const { return terms_; }
  const FramePtr& frame() const { return frame_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(Blade b) const {
    auto it = terms_.find(b);
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  Scalar coefficient(const PerfiniteSet& label) const {
    return coefficient(frame_->blade_of(label));
  }

  Multivector grade_part(std::size_t k) const {
    Multivector out(frame_);
    for (const auto& [b, c] : terms_)
      if (static_cast<std::size_t>(std::popcount(b)) == k) out.terms_.emplace(b, c);
    return out;
  }

  Multivector& operator+=(const Multivector& o) {
    check_frame(o);
    for (const auto& [b, c] : o.terms_) add(b, c);
    return *this;
  }
  Multivector& operator-=(const Multivector& o) {
    check_frame(o);
    for (const auto& [b, c] : o.terms_) add(b, -c);
    return *this;
  }
  Multivector& operator*=(const Scalar& s) {
    if (ScalarTraits<Scalar>::is_zero(s, frame_->tolerance())) {
      terms_.clear();
      return *this;
    }
    for (auto& [b, c] : terms_) c *= s;
    return *this;
  }
  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const Scalar& s) { return a *= s; }
  friend Multivector operator*(const Scalar& s, Multivector a) { return a *= s; }
  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.frame_->same_as(*b.frame_) && a.terms_ == b.terms_;
  }

  void check_frame(const Multivector& o) const {
    if (!frame_->same_as(*o.frame_)) throw DomainError("multivectors live in different frames");
  }

 private:
  FramePtr frame_;
  Terms terms_;
};

// ---------------------------------------------------------------------------

template <typename Scalar>
Multivector<Scalar> embed(const PerfiniteSet& x, typename RankFrame<Scalar>::Ptr frame) {
  const Blade b = frame->blade_of(x);
  return Multivector<Scalar>::blade(std::move(frame), b);
}

template <typename Scalar>
Multivector<Scalar> grassmann(const Multivector<Scalar>& v, const Multivector<Scalar>& w) {
  v.check_frame(w);
  Multivector<Scalar> out(v.frame());
  for (const auto& [a, ca] : v.terms())
    for (const auto& [b, cb] : w.terms()) {
      if (a & b) continue;
      Scalar c = ca * cb;
      if (detail::wedge_sign(a, b) < 0) c = -c;
      out.add(a | b, c);
    }
  return out;
}

namespace detail {

template <typename Scalar>
using BladeTerms = std::map<Blade, Scalar>;

template <typename Scalar>
void accumulate(BladeTerms<Scalar>& out, Blade b, const Scalar& c) {
  auto [it, inserted] = out.try_emplace(b, c);
  if (!inserted) it->second += c;
}

/// e_i ⌋ e_b = sum_k (-1)^k beta(i, b_k) e_{b \ b_k}, b_k in ascending order.
template <typename Scalar>
void left_contract(const Mat<Scalar>& beta, std::size_t i, Blade b, const Scalar& coef,
                   BladeTerms<Scalar>& out) {
  int k = 0;
  for (Blade rest = b; rest; rest &= rest - 1, ++k) {
    const int j = std::countr_zero(rest);
    const Scalar& g = beta(static_cast<Eigen::Index>(i), j);
    if (g == 0) continue;
    Scalar c = coef * g;
    if (k & 1) c = -c;
    accumulate(out, b & ~(Blade{1} << j), c);
  }
}

/// e_i ⊔ u = e_i ∨ u + e_i ⌋ u.
template <typename Scalar>
BladeTerms<Scalar> generator_times(const Mat<Scalar>& beta, std::size_t i,
                                   const BladeTerms<Scalar>& u) {
  BladeTerms<Scalar> out;
  const Blade e = Blade{1} << i;
  for (const auto& [b, c] : u) {
    if (!(b & e)) {
      const int below = std::popcount(b & (e - 1));
      accumulate(out, b | e, (below & 1) ? Scalar(-c) : c);
    }
    left_contract(beta, i, b, c, out);
  }
  return out;
}

/// Clifford product of two basis blades (Chevalley construction):
/// e_A = e_i ∨ e_A' with i = min(A), and e_i ∨ u = e_i ⊔ u - e_i ⌋ u.
template <typename Scalar>
BladeTerms<Scalar> clifford_blades(const Mat<Scalar>& beta, Blade a, Blade b) {
  if (a == 0) return {{b, Scalar(1)}};
  const auto i = static_cast<std::size_t>(std::countr_zero(a));
  const Blade rest = a & (a - 1);
  BladeTerms<Scalar> out = generator_times(beta, i, clifford_blades(beta, rest, b));
  BladeTerms<Scalar> inner;
  left_contract(beta, i, rest, Scalar(1), inner);
  for (const auto& [ib, ic] : inner) {
    if (ic == 0) continue;
    for (const auto& [ob, oc] : clifford_blades(beta, ib, b)) accumulate(out, ob, Scalar(-ic * oc));
  }
  return out;
}

}  // namespace detail

template <typename Scalar>
Multivector<Scalar> clifford(const Multivector<Scalar>& v, const Multivector<Scalar>& w) {
  v.check_frame(w);
  const auto& beta = v.frame()->metric();
  Multivector<Scalar> out(v.frame());
  for (const auto& [a, ca] : v.terms())
    for (const auto& [b, cb] : w.terms())
      for (const auto& [p, cp] : detail::clifford_blades(beta, a, b)) out.add(p, ca * cb * cp);
  return out;
}

/// Coefficient along the frame's top element (scaled by 1/top_scale).
template <typename Scalar>
Scalar top_coefficient(const Multivector<Scalar>& w) {
  return w.coefficient(w.frame()->top_blade()) / w.frame()->top_scale();
}

template <typename Scalar>
Scalar berezin_norm(const Multivector<Scalar>& w) {
  return top_coefficient(grassmann(w, w));
}

template <typename Scalar>
Scalar beta_form(const Multivector<Scalar>& v, const Multivector<Scalar>& w) {
  return (top_coefficient(grassmann(v, w)) + top_coefficient(grassmann(w, v))) / Scalar(2);
}

template <typename Scalar>
Multivector<Scalar> grade_op(const Multivector<Scalar>& w) {
  Multivector<Scalar> out(w.frame());
  for (const auto& [b, c] : w.terms()) out.add(b, c * Scalar(std::popcount(b)));
  return out;
}

inline int grade_parity(const PerfiniteSet& x) { return static_cast<int>(x.grade() % 2); }

/// Sends each grade-m classical monomial with label x to the generator {x} of
/// the next frame; annihilates all other grades.
template <typename Scalar>
Multivector<Scalar> iota_m(const Multivector<Scalar>& w, std::size_t m,
                           const typename RankFrame<Scalar>::Ptr& frame_out) {
  const auto& in = *w.frame();
  if (frame_out->rank_bound() != in.rank_bound() + 1)
    throw DomainError("iota_m needs an output frame of rank " + std::to_string(in.rank_bound() + 1));
  Multivector<Scalar> out(frame_out);
  for (const auto& [b, c] : w.terms()) {
    if (static_cast<std::size_t>(std::popcount(b)) != m) continue;
    const auto idx = frame_out->atom_index(in.label(b));
    out.add(Blade{1} << *idx, c);
  }
  return out;
}

/// Linear extension of the classical iota: the sum of iota_m over all m.
template <typename Scalar>
Multivector<Scalar> iota_linear(const Multivector<Scalar>& w,
                                const typename RankFrame<Scalar>::Ptr& frame_out) {
  Multivector<Scalar> out(frame_out);
  for (std::size_t m = 0; m <= w.frame()->generator_count(); ++m) out += iota_m(w, m, frame_out);
  return out;
}

inline constexpr std::size_t kMaxSignatureDimension = std::size_t{1} << 16;

/// Inertia of the polarized Berezin form on the full Grassmann algebra of the
/// frame. The form pairs blade A only with its complement, so the Gram matrix
/// splits into blocks of size <= 2 that are diagonalized independently.
template <typename Scalar>
Inertia signature_report(const typename RankFrame<Scalar>::Ptr& frame) {
  if (frame->dimension() > kMaxSignatureDimension)
    throw DomainError("signature_report dimension guard exceeded");
  const Blade top = frame->top_blade();
  const Scalar scale = frame->top_scale();
  Inertia total;
  auto form = [&](Blade a, Blade b) -> Scalar {
    if ((a & b) || (a | b) != top) return Scalar(0);
    return Scalar(detail::wedge_sign(a, b) + detail::wedge_sign(b, a)) / (Scalar(2) * scale);
  };
  for (Blade a = 0; a <= top; ++a) {
    const Blade c = top & ~a;
    if (c < a) continue;  // visit each {A, complement} pair once
    Mat<Scalar> block;
    if (c == a) {
      block = Mat<Scalar>::Constant(1, 1, form(a, a));
    } else {
      block.resize(2, 2);
      block << form(a, a), form(a, c), form(c, a), form(c, c);
    }
    const Inertia part = inertia<Scalar>(block, frame->tolerance());
    total.plus += part.plus;
    total.minus += part.minus;
    total.zero += part.zero;
    if (a == top) break;
  }
  return total;
}

}  // namespace finq
