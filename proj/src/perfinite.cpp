#include "finq/perfinite.hpp"

#include <algorithm>
#include <cctype>

namespace finq {

namespace {

// Bit positions beyond this would need more than 2 MiB per code.
constexpr unsigned long kMaxCodeBit = 1ul << 24;

const std::vector<PerfiniteSet>& no_elements() {
  static const std::vector<PerfiniteSet> none;
  return none;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  PerfiniteSet run() {
    PerfiniteSet s = parse_set();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return s;
  }

 private:
  PerfiniteSet parse_set() {
    skip_space();
    expect('{');
    std::vector<PerfiniteSet> elements;
    skip_space();
    if (peek() == '}') {
      ++pos_;
      return PerfiniteSet();
    }
    for (;;) {
      elements.push_back(parse_set());
      skip_space();
      if (peek() == ',') { ++pos_; continue; }
      expect('}');
      break;
    }
    return PerfiniteSet::from_elements(std::move(elements));
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("set syntax error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

PerfiniteSet PerfiniteSet::from_sorted(std::vector<PerfiniteSet> sorted) {
  if (sorted.empty()) return PerfiniteSet();
  auto rep = std::make_shared<Rep>();
  std::size_t h = sorted.size() * 0x100000001b3ull;
  for (const auto& e : sorted) {
    rep->rank = std::max(rep->rank, e.rank() + 1);
    h ^= e.hash() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  rep->hash = h;
  rep->elements = std::move(sorted);
  return PerfiniteSet(std::move(rep));
}

PerfiniteSet PerfiniteSet::from_elements(std::vector<PerfiniteSet> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  return from_sorted(std::move(elements));
}

const std::vector<PerfiniteSet>& PerfiniteSet::elements() const {
  return rep_ ? rep_->elements : no_elements();
}

bool PerfiniteSet::contains(const PerfiniteSet& x) const {
  const auto& el = elements();
  return std::binary_search(el.begin(), el.end(), x);
}

bool operator==(const PerfiniteSet& a, const PerfiniteSet& b) {
  if (a.rep_ == b.rep_) return true;
  if (a.hash() != b.hash() || a.grade() != b.grade() || a.rank() != b.rank()) return false;
  return a.elements() == b.elements();
}

std::strong_ordering operator<=>(const PerfiniteSet& a, const PerfiniteSet& b) {
  if (a.rep_ == b.rep_) return std::strong_ordering::equal;
  const auto& x = a.elements();
  const auto& y = b.elements();
  auto i = x.rbegin();
  auto j = y.rbegin();
  for (; i != x.rend() && j != y.rend(); ++i, ++j) {
    auto c = *i <=> *j;
    if (c != 0) return c;
  }
  if (i == x.rend() && j == y.rend()) return std::strong_ordering::equal;
  return i == x.rend() ? std::strong_ordering::less : std::strong_ordering::greater;
}

BigInt PerfiniteSet::code() const {
  BigInt out = 0;
  for (const auto& e : elements()) {
    BigInt c = e.code();
    if (c >= kMaxCodeBit) throw DomainError("Ackermann code too large to materialize");
    boost::multiprecision::bit_set(out, c.convert_to<unsigned long>());
  }
  return out;
}

PerfiniteSet PerfiniteSet::decode(const BigInt& code) {
  if (code < 0) throw DomainError("Ackermann codes are non-negative");
  if (code == 0) return PerfiniteSet();
  const unsigned long top = boost::multiprecision::msb(code);
  std::vector<PerfiniteSet> elements;
  for (unsigned long bit = 0; bit <= top; ++bit)
    if (boost::multiprecision::bit_test(code, bit)) elements.push_back(decode(BigInt(bit)));
  // Increasing bit position is increasing Ackermann order, so already canonical.
  return from_sorted(std::move(elements));
}

PerfiniteSet PerfiniteSet::parse(std::string_view text) { return Parser(text).run(); }

std::string PerfiniteSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& e : elements()) {
    if (!first) out += ',';
    first = false;
    out += e.to_string();
  }
  out += '}';
  return out;
}

PerfiniteSet empty_set() { return PerfiniteSet(); }

PerfiniteSet iota(const PerfiniteSet& x) { return PerfiniteSet::from_elements({x}); }

PerfiniteSet xor_union(const PerfiniteSet& x, const PerfiniteSet& y) {
  std::vector<PerfiniteSet> out;
  const auto& a = x.elements();
  const auto& b = y.elements();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return PerfiniteSet::from_elements(std::move(out));
}

PorResult por(const PerfiniteSet& x, const PerfiniteSet& y) {
  const auto& a = x.elements();
  const auto& b = y.elements();
  std::vector<PerfiniteSet> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  if (out.size() != a.size() + b.size()) return Om{};
  return PerfiniteSet::from_elements(std::move(out));
}

std::size_t tower2(std::size_t k) {
  if (k > 4) throw DomainError("2^^k overflows for k > 4");
  std::size_t v = 1;
  for (std::size_t i = 0; i < k; ++i) v = std::size_t{1} << v;
  return v;
}

std::vector<PerfiniteSet> enumerate(std::size_t max_rank) {
  if (max_rank > kMaxEnumerationRank)
    throw DomainError("enumeration beyond rank " + std::to_string(kMaxEnumerationRank) +
                      " is refused (2^^4 = 65536 sets)");
  std::vector<PerfiniteSet> level{PerfiniteSet()};
  for (std::size_t r = 1; r <= max_rank; ++r) {
    // Subsets of the previous level; mask order coincides with Ackermann order
    // because bit i stands for the i-th smallest element.
    const std::size_t m = level.size();
    std::vector<PerfiniteSet> next;
    next.reserve(std::size_t{1} << m);
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<PerfiniteSet> el;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) el.push_back(level[i]);
      next.push_back(PerfiniteSet::from_elements(std::move(el)));
    }
    level = std::move(next);
  }
  return level;
}

std::string to_string(const PorResult& r) {
  return is_om(r) ? std::string("OM") : std::get<PerfiniteSet>(r).to_string();
}

}  // namespace finq
