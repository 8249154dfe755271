#pragma once

// Hereditarily finite ("perfinite") sets with the Ackermann bijection to the
// naturals. Sets are immutable and share structure, so copies are cheap and
// values can be handed between threads freely.

#include "finq/scalar.hpp"

#include <compare>
#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace finq {

class PerfiniteSet {
 public:
  /// The empty set, identity of the symmetric-union group.
  PerfiniteSet() = default;

  /// Canonicalizes: sorts by Ackermann order and drops duplicates.
  static PerfiniteSet from_elements(std::vector<PerfiniteSet> elements);

  /// Inverse of code(); throws DomainError for negative input.
  static PerfiniteSet decode(const BigInt& code);
  static PerfiniteSet decode(unsigned long code) { return decode(BigInt(code)); }

  /// Accepts the brace syntax "{}", "{{}}", "{{},{{}}}" (whitespace ignored).
  static PerfiniteSet parse(std::string_view text);

  const std::vector<PerfiniteSet>& elements() const;
  bool empty() const { return rep_ == nullptr; }
  std::size_t grade() const { return rep_ ? rep_->elements.size() : 0; }
  std::size_t rank() const { return rep_ ? rep_->rank : 0; }
  std::size_t hash() const { return rep_ ? rep_->hash : 0x9e3779b97f4a7c15ull; }
  bool contains(const PerfiniteSet& x) const;

  /// Ackermann code: sum of 2^code(e) over elements. Throws DomainError when
  /// an element code is too large to be used as a bit position.
  BigInt code() const;

  /// Canonical brace text; parse(to_string()) == *this.
  std::string to_string() const;

  friend bool operator==(const PerfiniteSet& a, const PerfiniteSet& b);
  /// Ackermann order: the larger set owns the largest element of the symmetric difference.
  friend std::strong_ordering operator<=>(const PerfiniteSet& a, const PerfiniteSet& b);

 private:
  struct Rep {
    std::vector<PerfiniteSet> elements;
    std::size_t rank = 0;
    std::size_t hash = 0;
  };
  explicit PerfiniteSet(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static PerfiniteSet from_sorted(std::vector<PerfiniteSet> sorted);

  std::shared_ptr<const Rep> rep_;
};

struct PerfiniteHash {
  std::size_t operator()(const PerfiniteSet& x) const { return x.hash(); }
};

/// The semantic zero: result of a partial-or on overlapping operands.
/// Never equal to any set, in particular not to the empty set.
struct Om {
  bool operator==(const Om&) const = default;
};

using PorResult = std::variant<Om, PerfiniteSet>;

inline bool is_om(const PorResult& r) { return std::holds_alternative<Om>(r); }

PerfiniteSet empty_set();
/// {x}
PerfiniteSet iota(const PerfiniteSet& x);
/// Symmetric difference; the group operation.
PerfiniteSet xor_union(const PerfiniteSet& x, const PerfiniteSet& y);
/// Union of disjoint sets, Om otherwise.
PorResult por(const PerfiniteSet& x, const PerfiniteSet& y);

inline std::size_t grade(const PerfiniteSet& x) { return x.grade(); }
inline std::size_t rank(const PerfiniteSet& x) { return x.rank(); }

inline constexpr std::size_t kMaxEnumerationRank = 3;

/// All sets of rank <= max_rank in Ackermann order (2^^max_rank of them).
/// Ranks above kMaxEnumerationRank are refused.
std::vector<PerfiniteSet> enumerate(std::size_t max_rank);

/// Tower 2^^k for k <= 4.
std::size_t tower2(std::size_t k);

std::string to_string(const PorResult& r);

}  // namespace finq
