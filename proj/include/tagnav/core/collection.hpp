#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tagnav/core/category_tree.hpp"
#include "tagnav/core/resource_set.hpp"
#include "tagnav/core/tag.hpp"
#include "tagnav/core/tag_cloud.hpp"

namespace tagnav {

struct Resource {
  ResourceKey key;
  std::string id;
  std::optional<std::string> title;
  std::optional<std::string> uri;
  std::vector<TagId> tags;  // sorted by id, duplicate-free
};

struct ResourceMeta {
  std::optional<std::string> title;
  std::optional<std::string> uri;
};

// A folksonomy: resources, their tag annotations, and a category tree over
// the tags. The tag cloud is emergent: a tag is part of the collection while
// it annotates at least one resource.
//
// Collection is a value type. Copying it yields an independent snapshot;
// every mutation bumps revision(). Mutation requires a single writer.
class Collection {
 public:
  Collection() = default;

  /// Throws EmptyId, DuplicateResource, InvalidTag.
  ResourceKey add_resource(std::string_view id, std::span<const std::string> tags, ResourceMeta meta = {});
  ResourceKey add_resource(std::string_view id, std::initializer_list<std::string_view> tags,
                           ResourceMeta meta = {});
  /// Throws UnknownResource.
  void remove_resource(std::string_view id);

  /// Tags annotating some but not every resource of `scope`, with counts.
  /// Throws EmptyScope for an empty scope and UnknownResource for keys not in
  /// the collection.
  TagCloud induced_cloud(std::span<const ResourceKey> scope) const;
  /// Induced cloud over the whole collection: the cloud of the initial
  /// browsing state, where a tag on every resource is left out.
  TagCloud root_cloud() const;

  CategoryId add_category(CategoryId parent, std::string name);
  void rename_category(CategoryId node, std::string name);
  /// Throws UnknownCategoryTag when the label names no tag of the cloud and
  /// CategoryConflict when the tag already sits in another node.
  void assign_category(CategoryId node, std::string_view tag_label);
  void move_category(CategoryId node, CategoryId new_parent);
  const CategoryTree& categories() const noexcept { return categories_; }

  std::size_t size() const noexcept { return by_id_.size(); }
  bool empty() const noexcept { return by_id_.empty(); }
  std::uint64_t revision() const noexcept { return revision_; }

  /// Number of tags with nonempty extent.
  std::size_t tag_count() const noexcept { return live_tags_; }
  /// The collection's tag cloud: every tag with nonempty extent, with its
  /// extent size.
  TagCloud cloud() const;
  std::uint32_t presence(TagId tag) const noexcept;

  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  std::optional<TagId> find_tag(std::string_view label) const;

  std::optional<ResourceKey> find(std::string_view id) const;
  bool contains(ResourceKey key) const noexcept;
  const Resource& resource(ResourceKey key) const;
  std::span<const TagId> tags(ResourceKey key) const { return resource(key).tags; }

  /// All resource keys in insertion order.
  ResourceSet keys() const;
  /// Upper bound on key indices issued so far.
  std::uint32_t key_capacity() const noexcept { return static_cast<std::uint32_t>(slots_.size()); }

  /// Extent of a tag by direct scan.
  ResourceSet extent(TagId tag) const;

 private:
  std::vector<std::optional<Resource>> slots_;
  std::unordered_map<std::string, ResourceKey> by_id_;
  std::vector<std::uint32_t> presence_;
  std::size_t live_tags_ = 0;
  Vocabulary vocabulary_;
  CategoryTree categories_;
  std::uint64_t revision_ = 0;
};

}  // namespace tagnav
