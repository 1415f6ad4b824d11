#include "tagnav/core/tag_cloud.hpp"

#include <algorithm>

namespace tagnav {

std::optional<std::uint32_t> TagCloud::count(TagId tag) const noexcept {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), tag,
                             [](const CloudEntry& e, TagId t) { return e.tag < t; });
  if (it == entries_.end() || it->tag != tag) return std::nullopt;
  return it->count;
}

std::vector<DisplayEntry> display_order(const TagCloud& cloud, const Vocabulary& vocabulary) {
  std::vector<DisplayEntry> out;
  out.reserve(cloud.size());
  for (const auto& entry : cloud.entries()) out.push_back({vocabulary.label(entry.tag), entry.count});
  std::sort(out.begin(), out.end(), [](const DisplayEntry& a, const DisplayEntry& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.tag < b.tag;
  });
  return out;
}

}  // namespace tagnav
