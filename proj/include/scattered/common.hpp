#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace scattered {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* an enumeration or scan would visit more objects than the caller allowed */
struct budget_error : error {
  u64 needed;
  u64 limit;
  budget_error(const std::string& what, u64 needed_, u64 limit_)
      : error(what + ": needs " + std::to_string(needed_) + " objects, budget is " +
              std::to_string(limit_)),
        needed(needed_),
        limit(limit_) {}
};

/* a checked mathematical invariant failed; `name` identifies the assertion */
struct invariant_error : error {
  std::string name;
  invariant_error(const std::string& name_, const std::string& detail)
      : error(name_ + ": " + detail), name(name_) {}
};

constexpr std::optional<u64> checked_pow(u64 base, u64 exp) {
  constexpr u64 kMax = std::numeric_limits<u64>::max();
  u64 result = 1;
  u64 b = base;
  while (exp) {
    if (exp & 1) {
      if (b != 0 && result > kMax / b) return std::nullopt;
      result *= b;
    }
    exp >>= 1;
    if (exp) {
      if (b != 0 && b > kMax / b) return std::nullopt;
      b *= b;
    }
  }
  return result;
}

inline u64 pow_u64(u64 base, u64 exp, const char* what = "power") {
  auto v = checked_pow(base, exp);
  if (!v) throw error(std::string(what) + ": 64-bit overflow");
  return *v;
}

/* theta_k(q) = |PG(k, q)| = (q^{k+1} - 1)/(q - 1); theta_{-1} = 0 */
inline u64 theta(long long k, u64 q) {
  if (k < 0) return 0;
  return (pow_u64(q, u64(k) + 1, "theta") - 1) / (q - 1);
}

struct Budget {
  u64 limit = 10'000'000;

  void require(u64 count, const char* what) const {
    if (count > limit) throw budget_error(what, count, limit);
  }

  /* SCATTER_BUDGET overrides the default object budget */
  static Budget from_env() {
    Budget b;
    if (const char* s = std::getenv("SCATTER_BUDGET")) {
      char* end = nullptr;
      u64 v = std::strtoull(s, &end, 10);
      if (end && *end == '\0' && v > 0) b.limit = v;
    }
    return b;
  }
};

}  // namespace scattered
