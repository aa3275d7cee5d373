#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string_view>

namespace fqdist {

// Relative slack applied in favour of "holds" when an exact count is
// compared against an analytic expression evaluated in floating point.
inline constexpr long double kBoundSlack = 1e-9L;

// Enumeration budget shared by every exhaustive routine.
inline constexpr std::uint64_t kEnumerationBudget = 100'000'000ULL;

inline bool within_upper(long double value, long double bound) {
  return value <= bound + kBoundSlack * std::max(std::fabs(bound), 1.0L);
}

inline bool within_lower(long double value, long double bound) {
  return value >= bound - kBoundSlack * std::max(std::fabs(bound), 1.0L);
}

// Outcome of checking a (possibly conditional) inequality.
enum class Verdict { holds, violated, vacuous };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::violated: return "violated";
    case Verdict::vacuous: return "vacuous";
  }
  return "unknown";
}

inline Verdict conditional_verdict(bool hypothesis_met, bool inequality_holds) {
  if (!hypothesis_met) return Verdict::vacuous;
  return inequality_holds ? Verdict::holds : Verdict::violated;
}

// q^{e/2} for the half-integer exponents that appear throughout the bounds.
inline long double half_power(std::uint32_t q, int twice_exponent) {
  return std::pow(static_cast<long double>(q), static_cast<long double>(twice_exponent) / 2.0L);
}

inline const long double kLn2 = std::log(2.0L);

}  // namespace fqdist
