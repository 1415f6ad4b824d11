#include "tagnav/nd_automaton.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "tagnav/error.hpp"

namespace tagnav {

namespace {

bool less_tag(const CloudEntry& e, TagId t) { return e.tag < t; }

void insert_sorted(ResourceSet& set, ResourceKey key) {
  if (set.empty() || set.back() < key) {
    set.push_back(key);
  } else {
    set.insert(std::lower_bound(set.begin(), set.end(), key), key);
  }
}

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::EngineFailure, what); }

}  // namespace

TagCounts::TagCounts(std::vector<CloudEntry> entries) : sparse_(std::move(entries)) {
  if (sparse_.size() > kDenseThreshold) densify();
}

void TagCounts::densify() {
  std::uint32_t top = sparse_.empty() ? 0 : index_of(sparse_.back().tag) + 1;
  dense_.assign(top, 0);
  present_.clear();
  present_.reserve(sparse_.size());
  for (const auto& e : sparse_) {
    dense_[index_of(e.tag)] = e.count;
    present_.push_back(e.tag);
  }
  sparse_.clear();
  sparse_.shrink_to_fit();
}

std::uint32_t TagCounts::count(TagId tag) const noexcept {
  if (!dense_.empty()) return index_of(tag) < dense_.size() ? dense_[index_of(tag)] : 0;
  if (sparse_.size() <= 8) {
    for (const auto& e : sparse_) {
      if (e.tag == tag) return e.count;
    }
    return 0;
  }
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), tag, less_tag);
  return (it != sparse_.end() && it->tag == tag) ? it->count : 0;
}

void TagCounts::add(TagId tag) {
  if (!dense_.empty()) {
    if (index_of(tag) >= dense_.size()) dense_.resize(index_of(tag) + 1, 0);
    if (dense_[index_of(tag)]++ == 0) present_.insert(std::lower_bound(present_.begin(), present_.end(), tag), tag);
    return;
  }
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), tag, less_tag);
  if (it != sparse_.end() && it->tag == tag) {
    ++it->count;
    return;
  }
  sparse_.insert(it, CloudEntry{tag, 1});
  if (sparse_.size() > kDenseThreshold) densify();
}

void TagCounts::remove(TagId tag) {
  if (!dense_.empty()) {
    if (index_of(tag) >= dense_.size() || dense_[index_of(tag)] == 0) return;
    if (--dense_[index_of(tag)] == 0) present_.erase(std::lower_bound(present_.begin(), present_.end(), tag));
    return;
  }
  auto it = std::lower_bound(sparse_.begin(), sparse_.end(), tag, less_tag);
  if (it == sparse_.end() || it->tag != tag) return;
  if (--it->count == 0) sparse_.erase(it);
}

void TagCounts::subtract(const TagCounts& part) {
  if (dense_.empty()) {
    // Both sorted: one merge pass.
    std::vector<CloudEntry> out;
    out.reserve(sparse_.size());
    auto theirs = part.entries();
    auto p = theirs.begin();
    for (const auto& e : sparse_) {
      while (p != theirs.end() && p->tag < e.tag) ++p;
      const std::uint32_t taken = (p != theirs.end() && p->tag == e.tag) ? p->count : 0;
      if (e.count > taken) out.push_back({e.tag, e.count - taken});
    }
    sparse_ = std::move(out);
    return;
  }
  bool emptied = false;
  part.for_each([&](TagId t, std::uint32_t c) {
    auto& slot = dense_[index_of(t)];
    slot -= c;
    emptied = emptied || slot == 0;
  });
  if (emptied) std::erase_if(present_, [&](TagId t) { return dense_[index_of(t)] == 0; });
  if (present_.size() <= kDenseThreshold / 2) {
    sparse_ = entries();
    dense_.clear();
    dense_.shrink_to_fit();
    present_.clear();
    present_.shrink_to_fit();
  }
}

std::vector<CloudEntry> TagCounts::entries() const {
  if (dense_.empty()) return sparse_;
  std::vector<CloudEntry> out;
  out.reserve(present_.size());
  for (TagId t : present_) out.push_back({t, dense_[index_of(t)]});
  return out;
}

NdAutomaton::NdAutomaton() { root_ = allocate(SplitNode{}); }

NdAutomaton::NdAutomaton(const Collection& collection) : NdAutomaton() {
  for (ResourceKey key : collection.keys()) insert(key, collection.tags(key));
  revision_ = 0;
}

const SplitNode& NdAutomaton::node(NodeId id) const {
  if (static_cast<std::uint32_t>(id) >= nodes_.size() || !at(id).live) {
    throw Error(ErrorCode::InvalidArgument, "unknown split node " + std::to_string(static_cast<std::uint32_t>(id)));
  }
  return at(id);
}

NodeId NdAutomaton::allocate(SplitNode node) {
  ++live_nodes_;
  node.live = true;
  if (!free_.empty()) {
    NodeId id = free_.back();
    free_.pop_back();
    at(id) = std::move(node);
    return id;
  }
  nodes_.push_back(std::move(node));
  return NodeId{static_cast<std::uint32_t>(nodes_.size() - 1)};
}

void NdAutomaton::release(NodeId id) {
  at(id) = SplitNode{};
  at(id).live = false;
  free_.push_back(id);
  --live_nodes_;
}

bool NdAutomaton::carries(ResourceKey key, TagId tag) const {
  const auto& tags = forward_[index_of(key)];
  return std::binary_search(tags.begin(), tags.end(), tag);
}

Frontier NdAutomaton::initial_frontier() const {
  if (at(root_).members.empty()) throw Error(ErrorCode::EmptyCollection, "no resources to browse");
  return Frontier{{root_}};
}

Summary NdAutomaton::count_tags(std::span<const ResourceKey> keys) {
  std::vector<TagId> touched;
  for (ResourceKey key : keys) {
    for (TagId t : forward_[index_of(key)]) {
      if (index_of(t) >= scratch_.size()) scratch_.resize(index_of(t) + 1, 0);
      if (scratch_[index_of(t)]++ == 0) touched.push_back(t);
    }
  }
  std::sort(touched.begin(), touched.end());
  std::vector<CloudEntry> out;
  out.reserve(touched.size());
  for (TagId t : touched) {
    out.push_back({t, scratch_[index_of(t)]});
    scratch_[index_of(t)] = 0;
  }
  return Summary(std::move(out));
}

void NdAutomaton::split(NodeId id, TagId pivot) {
  SplitNode in;
  SplitNode out;
  for (ResourceKey key : at(id).members) {
    (carries(key, pivot) ? in : out).members.push_back(key);
  }
  // Count the smaller side; the other side is the parent minus it.
  if (in.members.size() <= out.members.size()) {
    in.summary = count_tags(in.members);
    out.summary = at(id).summary;
    out.summary.subtract(in.summary);
  } else {
    out.summary = count_tags(out.members);
    in.summary = at(id).summary;
    in.summary.subtract(out.summary);
  }
  in.parent = id;
  out.parent = id;

  NodeId in_id = allocate(std::move(in));
  NodeId out_id = allocate(std::move(out));
  SplitNode& parent = at(id);
  parent.pivot = pivot;
  parent.child_in = in_id;
  parent.child_out = out_id;
}

Frontier NdAutomaton::select(const Frontier& from, TagId tag) {
  std::size_t total = 0;
  std::size_t size = 0;
  for (NodeId id : from.nodes) {
    total += at(id).count(tag);
    size += at(id).members.size();
  }
  if (total == 0 || total == size) {
    throw Error(ErrorCode::InfeasibleTag, "tag does not narrow the current selection");
  }

  Frontier next;
  std::vector<NodeId> stack;
  for (NodeId start : from.nodes) {
    stack.push_back(start);
    while (!stack.empty()) {
      NodeId id = stack.back();
      stack.pop_back();
      const SplitNode& n = at(id);
      const std::uint32_t hits = n.count(tag);
      if (hits == 0) continue;
      if (hits == n.members.size()) {
        next.nodes.push_back(id);
      } else if (!n.is_split()) {
        split(id, tag);
        next.nodes.push_back(at(id).child_in);
      } else {
        stack.push_back(n.child_out);
        stack.push_back(n.child_in);
      }
    }
  }
  return next;
}

TagCloud NdAutomaton::cloud(const Frontier& frontier) const {
  const std::uint32_t n = static_cast<std::uint32_t>(member_count(frontier));
  std::vector<CloudEntry> entries;

  if (frontier.nodes.size() == 1) {
    at(frontier.nodes.front()).summary.for_each([&](TagId t, std::uint32_t c) {
      if (c < n) entries.push_back({t, c});
    });
    return TagCloud(std::move(entries));
  }

  std::vector<std::uint32_t> totals;
  std::vector<TagId> touched;
  for (NodeId id : frontier.nodes) {
    at(id).summary.for_each([&](TagId t, std::uint32_t c) {
      if (index_of(t) >= totals.size()) totals.resize(index_of(t) + 1, 0);
      if (totals[index_of(t)] == 0) touched.push_back(t);
      totals[index_of(t)] += c;
    });
  }
  std::sort(touched.begin(), touched.end());
  entries.reserve(touched.size());
  for (TagId t : touched) {
    if (totals[index_of(t)] < n) entries.push_back({t, totals[index_of(t)]});
  }
  return TagCloud(std::move(entries));
}

ResourceSet NdAutomaton::members(const Frontier& frontier) const {
  std::vector<std::span<const ResourceKey>> parts;
  parts.reserve(frontier.nodes.size());
  for (NodeId id : frontier.nodes) parts.emplace_back(at(id).members);
  return merge_disjoint(parts);
}

std::size_t NdAutomaton::member_count(const Frontier& frontier) const {
  std::size_t total = 0;
  for (NodeId id : frontier.nodes) total += at(id).members.size();
  return total;
}

void NdAutomaton::insert(ResourceKey key, std::span<const TagId> tags) {
  const std::uint32_t slot = index_of(key);
  if (slot < present_.size() && present_[slot]) {
    throw Error(ErrorCode::DuplicateResource, "resource key " + std::to_string(slot) + " already present");
  }
  if (slot >= present_.size()) {
    present_.resize(slot + 1, false);
    forward_.resize(slot + 1);
  }
  std::vector<TagId> sorted(tags.begin(), tags.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  NodeId id = root_;
  for (;;) {
    SplitNode& n = at(id);
    insert_sorted(n.members, key);
    for (TagId t : sorted) n.summary.add(t);
    if (!n.is_split()) break;
    id = std::binary_search(sorted.begin(), sorted.end(), *n.pivot) ? n.child_in : n.child_out;
  }

  forward_[slot] = std::move(sorted);
  present_[slot] = true;
  ++revision_;
}

void NdAutomaton::remove(ResourceKey key) {
  const std::uint32_t slot = index_of(key);
  if (slot >= present_.size() || !present_[slot]) {
    throw Error(ErrorCode::UnknownResource, "resource key " + std::to_string(slot) + " not present");
  }
  const auto& tags = forward_[slot];

  std::vector<NodeId> path;
  for (NodeId id = root_;;) {
    path.push_back(id);
    SplitNode& n = at(id);
    n.members.erase(std::lower_bound(n.members.begin(), n.members.end(), key));
    for (TagId t : tags) n.summary.remove(t);
    if (!n.is_split()) break;
    id = std::binary_search(tags.begin(), tags.end(), *n.pivot) ? n.child_in : n.child_out;
  }

  // Only the leaf can have emptied (a split node holds at least two members),
  // so at most one split, the leaf's parent, loses a side.
  if (path.size() >= 2 && at(path.back()).members.empty()) {
    NodeId emptied = path.back();
    NodeId parent = path[path.size() - 2];
    NodeId survivor = at(parent).child_in == emptied ? at(parent).child_out : at(parent).child_in;

    SplitNode& p = at(parent);
    SplitNode& s = at(survivor);
    p.pivot = s.pivot;
    p.child_in = s.child_in;
    p.child_out = s.child_out;
    if (p.is_split()) {
      at(p.child_in).parent = parent;
      at(p.child_out).parent = parent;
    }
    release(emptied);
    release(survivor);
  }

  forward_[slot].clear();
  present_[slot] = false;
  ++revision_;
}

void NdAutomaton::check_invariants() const {
  const std::size_t n = resource_count();
  const std::size_t bound = n == 0 ? 1 : 2 * n - 1;
  if (live_nodes_ > bound) {
    fail("node count " + std::to_string(live_nodes_) + " exceeds 2n-1 = " + std::to_string(bound));
  }

  std::size_t reached = 0;
  std::vector<NodeId> stack{root_};
  while (!stack.empty()) {
    NodeId id = stack.back();
    stack.pop_back();
    ++reached;
    const SplitNode& node = at(id);
    const std::string where = "node " + std::to_string(static_cast<std::uint32_t>(id));
    if (!node.live) fail(where + " is reachable but released");
    if (!is_canonical(node.members)) fail(where + " members are not sorted");

    std::vector<CloudEntry> expected;
    {
      std::vector<TagId> all;
      for (ResourceKey key : node.members) {
        if (index_of(key) >= present_.size() || !present_[index_of(key)]) fail(where + " holds an absent resource");
        all.insert(all.end(), forward_[index_of(key)].begin(), forward_[index_of(key)].end());
      }
      std::sort(all.begin(), all.end());
      for (std::size_t i = 0; i < all.size();) {
        std::size_t j = i;
        while (j < all.size() && all[j] == all[i]) ++j;
        expected.push_back({all[i], static_cast<std::uint32_t>(j - i)});
        i = j;
      }
    }
    if (Summary(std::move(expected)) != node.summary) fail(where + " summary disagrees with its members");

    if (!node.is_split()) continue;
    const SplitNode& in = at(node.child_in);
    const SplitNode& out = at(node.child_out);
    if (in.parent != id || out.parent != id) fail(where + " has children with wrong parent links");
    if (in.members.empty() || out.members.empty()) fail(where + " has an empty side");
    const std::uint32_t hits = node.count(*node.pivot);
    if (hits == 0 || hits >= node.members.size()) fail(where + " pivot does not separate its members");
    for (ResourceKey key : in.members) {
      if (!carries(key, *node.pivot)) fail(where + " child_in holds a resource without the pivot");
    }
    for (ResourceKey key : out.members) {
      if (carries(key, *node.pivot)) fail(where + " child_out holds a resource with the pivot");
    }
    ResourceSet joined;
    std::merge(in.members.begin(), in.members.end(), out.members.begin(), out.members.end(),
               std::back_inserter(joined));
    if (joined != node.members) fail(where + " children do not partition it");
    stack.push_back(node.child_in);
    stack.push_back(node.child_out);
  }
  if (reached != live_nodes_) fail("live node count disagrees with the tree");
}

void NdAutomaton::export_tree(std::ostream& out, const Vocabulary& vocabulary) const {
  std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    const SplitNode& node = at(id);
    out << std::string(depth * 2, ' ') << node.members.size();
    if (node.is_split()) {
      out << '\t' << vocabulary.label(*node.pivot);
      stack.emplace_back(node.child_out, depth + 1);
      stack.emplace_back(node.child_in, depth + 1);
    }
    out << '\n';
  }
}

}  // namespace tagnav
