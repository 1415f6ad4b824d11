#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tagnav/core/tag.hpp"
#include "tagnav/core/tag_cloud.hpp"

namespace tagnav {

enum class CategoryId : std::uint32_t {};

struct CategoryNode {
  std::string name;
  std::optional<CategoryId> parent;
  std::vector<CategoryId> children;
  std::vector<TagId> tags;  // sorted
};

// Presentational grouping of tags into a rooted, ordered tree. Each tag sits
// in at most one node; tags assigned nowhere are "uncategorized". Nothing here
// affects which resources a tag selects.
class CategoryTree {
 public:
  explicit CategoryTree(std::string root_name = "root");

  CategoryId root() const noexcept { return CategoryId{0}; }
  std::size_t size() const noexcept { return nodes_.size(); }
  bool contains(CategoryId id) const noexcept { return static_cast<std::uint32_t>(id) < nodes_.size(); }
  const CategoryNode& node(CategoryId id) const;

  CategoryId add(CategoryId parent, std::string name);
  void rename(CategoryId node, std::string name);
  void assign(CategoryId node, TagId tag);
  void unassign(TagId tag);
  std::optional<CategoryId> category_of(TagId tag) const;

  /// Relocates the subtree rooted at `node` to be the last child of
  /// `new_parent`. Throws CycleError when `new_parent` lies inside that
  /// subtree (this includes any attempt to move the root).
  void move(CategoryId node, CategoryId new_parent);

  /// True when `node` equals `ancestor` or lies beneath it.
  bool within(CategoryId node, CategoryId ancestor) const;

  /// Slash-joined names from the root, e.g. "root/Period/Ancient".
  std::string path(CategoryId id) const;

  /// Node ids in depth-first preorder.
  std::vector<CategoryId> preorder() const;

  friend bool operator==(const CategoryTree& a, const CategoryTree& b);

 private:
  void check(CategoryId id) const;

  std::vector<CategoryNode> nodes_;
  std::unordered_map<TagId, CategoryId> owner_;
};

struct CloudGroup {
  std::optional<CategoryId> category;  // nullopt: uncategorized
  TagCloud cloud;

  friend bool operator==(const CloudGroup&, const CloudGroup&) = default;
};

/// Splits a cloud by category, in tree preorder with uncategorized tags last.
/// Empty groups are omitted.
std::vector<CloudGroup> group_cloud(const CategoryTree& tree, const TagCloud& cloud);

}  // namespace tagnav
