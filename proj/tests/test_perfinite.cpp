#include "finq/perfinite.hpp"

#include <doctest.h>

#include <cstdint>
#include <string>

using namespace finq;

namespace {

// Independent decoding: bit k of the code is the element with code k.
std::string braces_of(std::uint64_t code) {
  std::string out = "{";
  bool first = true;
  for (std::uint64_t k = 0; k < 64; ++k)
    if (code >> k & 1u) {
      if (!first) out += ",";
      out += braces_of(k);
      first = false;
    }
  return out + "}";
}

}  // namespace

TEST_CASE("decoding agrees with bitwise oracle") {
  for (std::uint64_t code = 0; code < 4096; ++code) {
    const auto x = PerfiniteSet::decode(code);
    REQUIRE(x.to_string() == braces_of(code));
    REQUIRE(PerfiniteSet::parse(braces_of(code)) == x);
    CHECK(x.code() == code);
  }
}

TEST_CASE("round trip on large codes") {
  const BigInt big = (BigInt(1) << 65536) + 5;  // {{{{{}}}}}... plus small elements
  const auto x = PerfiniteSet::decode(big);
  CHECK(x.code() == big);
  CHECK(x.grade() == 3);
  CHECK_THROWS_AS(PerfiniteSet::decode(BigInt(-1)), DomainError);
}

TEST_CASE("enumeration sizes and order") {
  CHECK(enumerate(0).size() == 1);
  CHECK(enumerate(1).size() == 2);
  CHECK(enumerate(2).size() == 4);
  const auto all = enumerate(3);
  REQUIRE(all.size() == 16);
  for (std::size_t i = 0; i < all.size(); ++i) {
    CHECK(all[i].code() == i);
    CHECK(all[i].rank() <= 3);
  }
  CHECK_THROWS_AS(enumerate(4), DomainError);
  CHECK(tower2(4) == 65536);
}

TEST_CASE("ackermann order matches codes") {
  const auto all = enumerate(3);
  for (const auto& x : all)
    for (const auto& y : all) CHECK(((x <=> y) < 0) == (x.code() < y.code()));
}

TEST_CASE("symmetric union is an elementary abelian 2-group") {
  const auto all = enumerate(3);
  for (const auto& x : all) {
    CHECK(xor_union(x, x) == empty_set());
    for (const auto& y : all) {
      CHECK(xor_union(x, y) == xor_union(y, x));
      // Codes of sets of naturals-like elements: xor of codes.
      CHECK(xor_union(x, y).code() == (x.code() ^ y.code()));
      for (const auto& z : all) CHECK(xor_union(xor_union(x, y), z) == xor_union(x, xor_union(y, z)));
    }
  }
}

TEST_CASE("partial or is defined exactly on disjoint pairs") {
  const auto all = enumerate(3);
  for (const auto& x : all)
    for (const auto& y : all) {
      const bool disjoint = (x.code() & y.code()) == 0;
      const auto r = por(x, y);
      CHECK(is_om(r) == !disjoint);
      if (disjoint) CHECK(std::get<PerfiniteSet>(r).code() == (x.code() | y.code()));
    }
  CHECK(to_string(por(iota(empty_set()), iota(empty_set()))) == "OM");
}

TEST_CASE("grade parity is a homomorphism to Z2") {
  const auto all = enumerate(3);
  for (const auto& x : all)
    for (const auto& y : all) CHECK(grade(xor_union(x, y)) % 2 == (grade(x) + grade(y)) % 2);
}

TEST_CASE("iota and rank") {
  auto x = empty_set();
  for (std::size_t k = 0; k < 6; ++k) {
    CHECK(x.rank() == k);
    x = iota(x);
  }
  CHECK(iota(empty_set()).grade() == 1);
  CHECK(iota(empty_set()).contains(empty_set()));
}

TEST_CASE("parser rejects malformed text") {
  CHECK_THROWS_AS(PerfiniteSet::parse("{"), DomainError);
  CHECK_THROWS_AS(PerfiniteSet::parse("{}}"), DomainError);
  CHECK_THROWS_AS(PerfiniteSet::parse("{a}"), DomainError);
  CHECK(PerfiniteSet::parse(" { {} , {} } ") == iota(empty_set()));
}
