#include "glpm/bright.hpp"

#include <algorithm>

#include "glpm/errors.hpp"
#include "glpm/network.hpp"

namespace glpm {

BrightSet::BrightSet(const Network& net) {
  const std::int32_t c_count = net.num_categories();
  by_category_.assign(c_count + 1, {});
  bright_count_.assign(c_count + 1, 0);
  const std::int64_t m = dyad_count(net.n());
  category_.assign(m, 0);
  position_.assign(m, -1);
  for (std::int32_t c = 1; c <= c_count; ++c) {
    const auto& dyads = net.observed_non_edges(c);
    by_category_[c].reserve(dyads.size());
    for (const Dyad& d : dyads) {
      const std::int64_t k = dyad_index(d);
      category_[k] = static_cast<std::int16_t>(c);
      position_[k] = static_cast<std::int64_t>(by_category_[c].size());
      by_category_[c].push_back(k);
    }
  }
}

bool BrightSet::is_bright(std::int64_t dyad_idx) const {
  const std::int16_t c = category_[dyad_idx];
  if (c == 0) throw ValidationError("bright set: dyad is not a member");
  return position_[dyad_idx] < bright_count_[c];
}

void BrightSet::brighten(std::int64_t dyad_idx) {
  const std::int16_t c = category_[dyad_idx];
  if (c == 0) throw ValidationError("bright set: dyad is not a member");
  const std::int64_t p = position_[dyad_idx];
  std::int64_t& head = bright_count_[c];
  if (p < head) return;  // already bright
  auto& arr = by_category_[c];
  const std::int64_t other = arr[head];
  std::swap(arr[p], arr[head]);
  position_[other] = p;
  position_[dyad_idx] = head;
  ++head;
  sorted_dirty_ = true;
}

void BrightSet::darken(std::int64_t dyad_idx) {
  const std::int16_t c = category_[dyad_idx];
  if (c == 0) throw ValidationError("bright set: dyad is not a member");
  const std::int64_t p = position_[dyad_idx];
  std::int64_t& head = bright_count_[c];
  if (p >= head) return;  // already dark
  auto& arr = by_category_[c];
  const std::int64_t last_bright = head - 1;
  const std::int64_t other = arr[last_bright];
  std::swap(arr[p], arr[last_bright]);
  position_[other] = p;
  position_[dyad_idx] = last_bright;
  --head;
  sorted_dirty_ = true;
}

std::int64_t BrightSet::total_bright() const {
  std::int64_t total = 0;
  for (std::int64_t b : bright_count_) total += b;
  return total;
}

void BrightSet::swap_dark(std::int32_t category, std::int64_t r1,
                          std::int64_t r2) {
  if (r1 == r2) return;
  auto& arr = by_category_[category];
  const std::int64_t base = bright_count_[category];
  const std::int64_t a = arr[base + r1];
  const std::int64_t b = arr[base + r2];
  std::swap(arr[base + r1], arr[base + r2]);
  std::swap(position_[a], position_[b]);
}

const std::vector<std::int64_t>& BrightSet::sorted_bright() const {
  if (sorted_dirty_) {
    sorted_bright_.clear();
    for (std::size_t c = 1; c < by_category_.size(); ++c) {
      const auto& arr = by_category_[c];
      sorted_bright_.insert(sorted_bright_.end(), arr.begin(),
                            arr.begin() + bright_count_[c]);
    }
    std::sort(sorted_bright_.begin(), sorted_bright_.end());
    sorted_dirty_ = false;
  }
  return sorted_bright_;
}

}  // namespace glpm
