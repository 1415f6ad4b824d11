#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "tagnav/core/collection.hpp"
#include "tagnav/core/resource_set.hpp"
#include "tagnav/core/tag_cloud.hpp"

namespace tagnav {

enum class NodeId : std::uint32_t {};

// Tag -> number of a node's members carrying it; only tags with count >= 1
// are present. Small maps are sorted vectors. A map that grows past
// kDenseThreshold tags switches to a table indexed by TagId plus the sorted
// list of present tags, making lookups and increments O(1) on the large
// nodes near the root that every insertion and most selections touch.
class TagCounts {
 public:
  static constexpr std::size_t kDenseThreshold = 48;

  TagCounts() = default;
  /// `entries` sorted by tag, counts >= 1.
  explicit TagCounts(std::vector<CloudEntry> entries);

  std::uint32_t count(TagId tag) const noexcept;
  std::size_t size() const noexcept { return dense_.empty() ? sparse_.size() : present_.size(); }
  void add(TagId tag);
  /// No-op for absent tags.
  void remove(TagId tag);
  /// Subtracts `part` entry by entry; `part` must be dominated by *this.
  void subtract(const TagCounts& part);

  /// Calls f(tag, count) in ascending tag order.
  template <class F>
  void for_each(F&& f) const {
    if (dense_.empty()) {
      for (const auto& e : sparse_) f(e.tag, e.count);
    } else {
      for (TagId t : present_) f(t, dense_[static_cast<std::uint32_t>(t)]);
    }
  }
  std::vector<CloudEntry> entries() const;

  friend bool operator==(const TagCounts& a, const TagCounts& b) { return a.entries() == b.entries(); }

 private:
  void densify();

  std::vector<CloudEntry> sparse_;
  std::vector<std::uint32_t> dense_;  // nonempty iff dense
  std::vector<TagId> present_;        // dense mode: tags with count >= 1, sorted
};

using Summary = TagCounts;

struct SplitNode {
  ResourceSet members;
  Summary summary;
  /// Set once the node has been partitioned. child_in holds the members
  /// carrying the pivot, child_out the rest; both are nonempty.
  std::optional<TagId> pivot;
  NodeId child_in{};
  NodeId child_out{};
  std::optional<NodeId> parent;
  bool live = true;

  bool is_split() const noexcept { return pivot.has_value(); }
  std::uint32_t count(TagId tag) const noexcept { return summary.count(tag); }
};

/// Active states of a non-deterministic run. Member sets are pairwise
/// disjoint and their union is the answer of the current selection.
struct Frontier {
  std::vector<NodeId> nodes;

  friend bool operator==(const Frontier&, const Frontier&) = default;
};

// Non-deterministic navigation automaton stored as a laminar split tree.
//
// The root holds every resource. A node is partitioned the first time a
// selection needs to separate its members on some tag; that tag becomes the
// node's pivot and the split is kept for every later query. Selecting a tag
// walks the frontier: nodes whose members all carry the tag stay, nodes with
// none of it drop out, and mixed nodes are resolved through (or by creating)
// their split. Every node of the tree carries a tag-count summary, so the
// induced cloud of a frontier is a sum of summaries and never a scan of the
// resources.
//
// Binary splits over a laminar family bound the tree at 2n - 1 nodes.
//
// Thread-safety: const members may run concurrently. select() creates splits
// and therefore needs the same exclusive access as insert() and remove().
class NdAutomaton {
 public:
  NdAutomaton();
  explicit NdAutomaton(const Collection& collection);

  NodeId root() const noexcept { return root_; }
  const SplitNode& node(NodeId id) const;

  /// [root]. Throws EmptyCollection when there are no resources.
  Frontier initial_frontier() const;

  /// Frontier for the selection of `tag` from `from`. Throws InfeasibleTag
  /// unless 0 < (resources of `from` carrying tag) < (resources of `from`).
  Frontier select(const Frontier& from, TagId tag);

  /// Induced cloud of the frontier's union, aggregated from node summaries.
  TagCloud cloud(const Frontier& frontier) const;
  /// Union of frontier members, in insertion order.
  ResourceSet members(const Frontier& frontier) const;
  std::size_t member_count(const Frontier& frontier) const;

  /// Routes the resource down the existing splits to the first unsplit node.
  /// Throws DuplicateResource.
  void insert(ResourceKey key, std::span<const TagId> tags);
  /// Throws UnknownResource. A split left with an empty side collapses into
  /// its parent.
  void remove(ResourceKey key);

  std::size_t node_count() const noexcept { return live_nodes_; }
  std::size_t resource_count() const noexcept { return nodes_[static_cast<std::uint32_t>(root_)].members.size(); }
  /// Bumped by insert() and remove(). Splits made by select() leave it alone.
  std::uint64_t revision() const noexcept { return revision_; }

  /// Verifies partition law, summaries, parent links and the node bound.
  /// Throws EngineFailure describing the first violation.
  void check_invariants() const;

  /// Indented text, one node per line: member count, then pivot if split.
  void export_tree(std::ostream& out, const Vocabulary& vocabulary) const;

 private:
  SplitNode& at(NodeId id) { return nodes_[static_cast<std::uint32_t>(id)]; }
  const SplitNode& at(NodeId id) const { return nodes_[static_cast<std::uint32_t>(id)]; }
  bool carries(ResourceKey key, TagId tag) const;
  NodeId allocate(SplitNode node);
  void release(NodeId id);
  void split(NodeId id, TagId pivot);
  Summary count_tags(std::span<const ResourceKey> keys);

  std::vector<SplitNode> nodes_;
  std::vector<NodeId> free_;
  std::size_t live_nodes_ = 0;
  NodeId root_{};
  std::vector<std::vector<TagId>> forward_;  // indexed by ResourceKey
  std::vector<bool> present_;
  std::vector<std::uint32_t> scratch_;  // dense per-tag counter for count_tags
  std::uint64_t revision_ = 0;
};

}  // namespace tagnav
