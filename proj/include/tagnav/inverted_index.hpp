#pragma once

#include <span>
#include <vector>

#include "tagnav/core/collection.hpp"
#include "tagnav/core/resource_set.hpp"
#include "tagnav/core/tag_cloud.hpp"

namespace tagnav {

// Tag -> sorted postings (the tag's extent). This is the one-level browsing
// structure; multilevel browsing over it means evaluating a conjunctive
// query and recounting the induced cloud at every step.
class InvertedIndex {
 public:
  InvertedIndex() = default;

  static InvertedIndex build(const Collection& collection);

  /// Throws DuplicateResource.
  void insert(ResourceKey key, std::span<const TagId> tags);
  /// `tags` must be the tags the resource was inserted with. Throws UnknownResource.
  void remove(ResourceKey key, std::span<const TagId> tags);

  std::span<const ResourceKey> extent(TagId tag) const noexcept;
  const ResourceSet& all() const noexcept { return all_; }
  std::size_t doc_count() const noexcept { return all_.size(); }
  /// Number of tags with a nonempty posting list.
  std::size_t posting_count() const noexcept;

  /// Intersection of the extents of `tags`, smallest posting list first. The
  /// empty conjunction is every resource; an unknown tag yields the empty set.
  ResourceSet conjunctive(std::span<const TagId> tags) const;

  friend bool operator==(const InvertedIndex&, const InvertedIndex&) = default;

 private:
  std::vector<ResourceSet> postings_;  // indexed by TagId
  ResourceSet all_;
};

struct BrowseStep {
  ResourceSet resources;
  TagCloud cloud;
};

/// One multilevel step paid in full: conjunctive query plus a counting pass
/// for the induced cloud. Throws EmptyScope when the selection matches nothing.
BrowseStep browse_step(const InvertedIndex& index, std::span<const TagId> selected, const Collection& collection);

}  // namespace tagnav
