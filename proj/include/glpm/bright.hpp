#pragma once

#include <cstdint>
#include <vector>

#include "glpm/dyads.hpp"

namespace glpm {

class Network;

/// Auxiliary bright/dark indicators over the observed non-edge dyads. Edge
/// dyads are implicitly always bright and never stored. Per covariate
/// category, the member dyads live in one array partitioned into a bright
/// prefix and a dark suffix, giving O(1) toggles and indexed access to the
/// dark dyads for uniform subsampling.
class BrightSet {
 public:
  explicit BrightSet(const Network& net);

  std::int32_t num_categories() const {
    return static_cast<std::int32_t>(by_category_.size()) - 1;
  }

  bool is_bright(std::int64_t dyad_idx) const;
  void brighten(std::int64_t dyad_idx);
  void darken(std::int64_t dyad_idx);

  std::int64_t bright_count(std::int32_t category) const {
    return bright_count_[category];
  }
  std::int64_t dark_count(std::int32_t category) const {
    return static_cast<std::int64_t>(by_category_[category].size()) -
           bright_count_[category];
  }
  std::int64_t total_bright() const;
  std::int64_t member_count(std::int32_t category) const {
    return static_cast<std::int64_t>(by_category_[category].size());
  }

  /// r-th dark dyad of the category, 0 <= r < dark_count(category). The
  /// ordering is unspecified and changes under toggles.
  std::int64_t dark_at(std::int32_t category, std::int64_t r) const {
    return by_category_[category][bright_count_[category] + r];
  }
  /// Swaps two dark slots (partial Fisher-Yates support for sampling without
  /// replacement).
  void swap_dark(std::int32_t category, std::int64_t r1, std::int64_t r2);

  /// Bright dyad linear indices in ascending order; cached, rebuilt lazily.
  const std::vector<std::int64_t>& sorted_bright() const;

 private:
  // by_category_[c]: linear dyad indices of the observed non-edges with
  // covariate c; [0, bright_count_[c]) bright, rest dark. Index 0 unused.
  std::vector<std::vector<std::int64_t>> by_category_;
  std::vector<std::int64_t> bright_count_;
  // Per linear dyad index: category (0 = not a member) and position within
  // its category array.
  std::vector<std::int16_t> category_;
  std::vector<std::int64_t> position_;
  mutable std::vector<std::int64_t> sorted_bright_;
  mutable bool sorted_dirty_ = true;
};

}  // namespace glpm
