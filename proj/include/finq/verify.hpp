#pragma once

// The invariant suite behind `finq verify-all`. Every check is exact and
// seeded, so the report text depends only on the seed.

#include <cstdint>
#include <string>
#include <vector>

namespace finq {

struct VerifyCheck {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;

  bool all_passed() const;
  std::size_t passed_count() const;
  /// Fixed-width pass/fail table.
  std::string to_text() const;
};

VerifyReport verify_all(std::uint64_t seed);

}  // namespace finq
