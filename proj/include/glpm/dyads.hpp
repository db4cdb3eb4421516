#pragma once

#include <cstdint>
#include <cmath>
#include <utility>

#include "glpm/errors.hpp"

namespace glpm {

/// Unordered node pair in canonical form (i < j), 0-based.
struct Dyad {
  std::int32_t i = 0;
  std::int32_t j = 0;

  friend bool operator==(const Dyad&, const Dyad&) = default;
};

inline Dyad make_dyad(std::int32_t a, std::int32_t b) {
  if (a == b) throw ValidationError("dyad endpoints must differ");
  return a < b ? Dyad{a, b} : Dyad{b, a};
}

inline std::int64_t dyad_count(std::int64_t n) { return n * (n - 1) / 2; }

/// Linear index of the canonical dyad (i, j), i < j: j(j-1)/2 + i.
inline std::int64_t dyad_index(const Dyad& d) {
  return static_cast<std::int64_t>(d.j) * (d.j - 1) / 2 + d.i;
}

inline std::int64_t dyad_index(std::int32_t i, std::int32_t j) {
  return dyad_index(make_dyad(i, j));
}

inline Dyad dyad_from_index(std::int64_t k) {
  const auto j = static_cast<std::int32_t>(
      (1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(k))) / 2.0);
  // Guard against roundoff at block boundaries.
  std::int32_t jj = j;
  while (static_cast<std::int64_t>(jj) * (jj - 1) / 2 > k) --jj;
  while (static_cast<std::int64_t>(jj + 1) * jj / 2 <= k) ++jj;
  const auto i = static_cast<std::int32_t>(k - static_cast<std::int64_t>(jj) * (jj - 1) / 2);
  return Dyad{i, jj};
}

/// Orders dyads by linear index; used wherever a canonical scan order matters.
inline bool dyad_less(const Dyad& a, const Dyad& b) {
  return dyad_index(a) < dyad_index(b);
}

}  // namespace glpm
