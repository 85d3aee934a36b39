#pragma once

#include <cstdint>
#include <string>

namespace dlat {

// Default node budget; DLAT_BUDGET overrides it.
inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

std::uint64_t default_budget();

class Budget {
 public:
  explicit Budget(std::uint64_t limit = default_budget(), std::string what = "enumeration")
      : limit_(limit), what_(std::move(what)) {}
  void tick(std::uint64_t n = 1);
  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t used_ = 0;
  std::uint64_t limit_;
  std::string what_;
};

// Checked int64 arithmetic; throws InvariantError on overflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace dlat
