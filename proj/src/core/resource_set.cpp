#include "tagnav/core/resource_set.hpp"

#include <algorithm>
#include <bit>
#include <iterator>

namespace tagnav {

bool is_canonical(std::span<const ResourceKey> set) noexcept {
  return std::adjacent_find(set.begin(), set.end(),
                            [](ResourceKey a, ResourceKey b) { return !(a < b); }) == set.end();
}

namespace {

// Galloping search: first position in [from, end) whose key is >= target.
std::size_t gallop(std::span<const ResourceKey> keys, std::size_t from, ResourceKey target) {
  std::size_t step = 1;
  std::size_t lo = from;
  std::size_t hi = from;
  while (hi < keys.size() && keys[hi] < target) {
    lo = hi + 1;
    hi += step;
    step <<= 1;
  }
  hi = std::min(hi, keys.size());
  return static_cast<std::size_t>(
      std::lower_bound(keys.begin() + static_cast<std::ptrdiff_t>(lo),
                       keys.begin() + static_cast<std::ptrdiff_t>(hi), target) -
      keys.begin());
}

}  // namespace

ResourceSet intersect(std::span<const ResourceKey> a, std::span<const ResourceKey> b) {
  if (a.size() > b.size()) std::swap(a, b);
  ResourceSet out;
  if (a.empty()) return out;
  out.reserve(a.size());

  if (b.size() / a.size() < 8) {
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }
  std::size_t pos = 0;
  for (ResourceKey key : a) {
    pos = gallop(b, pos, key);
    if (pos == b.size()) break;
    if (b[pos] == key) out.push_back(key);
  }
  return out;
}

void intersect_into(ResourceSet& acc, std::span<const ResourceKey> b) {
  acc = intersect(acc, b);
}

ResourceSet merge_disjoint(std::span<const std::span<const ResourceKey>> parts) {
  std::size_t total = 0;
  for (auto part : parts) total += part.size();
  ResourceSet out;
  out.reserve(total);
  if (parts.size() == 1) {
    out.assign(parts[0].begin(), parts[0].end());
    return out;
  }
  if (parts.size() == 2) {
    std::merge(parts[0].begin(), parts[0].end(), parts[1].begin(), parts[1].end(), std::back_inserter(out));
    return out;
  }
  std::uint32_t top = 0;
  for (auto part : parts) {
    if (!part.empty()) top = std::max(top, static_cast<std::uint32_t>(part.back()) + 1);
  }
  // Dense enough: mark a bitmap and sweep it instead of sorting.
  if (top / 16 <= total) {
    std::vector<std::uint64_t> bits((top + 63) / 64, 0);
    for (auto part : parts) {
      for (ResourceKey k : part) bits[static_cast<std::uint32_t>(k) / 64] |= std::uint64_t{1} << (static_cast<std::uint32_t>(k) % 64);
    }
    for (std::size_t w = 0; w < bits.size(); ++w) {
      for (std::uint64_t word = bits[w]; word; word &= word - 1) {
        out.push_back(static_cast<ResourceKey>(w * 64 + static_cast<std::size_t>(std::countr_zero(word))));
      }
    }
    return out;
  }
  for (auto part : parts) out.insert(out.end(), part.begin(), part.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tagnav
