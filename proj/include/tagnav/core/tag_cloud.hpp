#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tagnav/core/tag.hpp"

namespace tagnav {

struct CloudEntry {
  TagId tag;
  std::uint32_t count;

  friend bool operator==(const CloudEntry&, const CloudEntry&) = default;
};

/// Tag -> presence count over some scope. Entries are kept sorted by TagId so
/// two clouds compare equal iff they hold the same tags with the same counts.
class TagCloud {
 public:
  TagCloud() = default;
  /// `entries` must be sorted by tag and carry counts >= 1.
  explicit TagCloud(std::vector<CloudEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<CloudEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  bool contains(TagId tag) const noexcept { return count(tag).has_value(); }
  std::optional<std::uint32_t> count(TagId tag) const noexcept;

  friend bool operator==(const TagCloud&, const TagCloud&) = default;

 private:
  std::vector<CloudEntry> entries_;
};

struct DisplayEntry {
  std::string tag;
  std::uint32_t count;

  friend bool operator==(const DisplayEntry&, const DisplayEntry&) = default;
};

/// Cloud entries ordered for display: count descending, then label ascending.
std::vector<DisplayEntry> display_order(const TagCloud& cloud, const Vocabulary& vocabulary);

}  // namespace tagnav
