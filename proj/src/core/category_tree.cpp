#include "tagnav/core/category_tree.hpp"

#include <algorithm>

#include "tagnav/error.hpp"

namespace tagnav {

CategoryTree::CategoryTree(std::string root_name) {
  nodes_.push_back(CategoryNode{std::move(root_name), std::nullopt, {}, {}});
}

void CategoryTree::check(CategoryId id) const {
  if (!contains(id)) {
    throw Error(ErrorCode::UnknownNode,
                "unknown category node " + std::to_string(static_cast<std::uint32_t>(id)));
  }
}

const CategoryNode& CategoryTree::node(CategoryId id) const {
  check(id);
  return nodes_[static_cast<std::uint32_t>(id)];
}

CategoryId CategoryTree::add(CategoryId parent, std::string name) {
  check(parent);
  CategoryId id{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back(CategoryNode{std::move(name), parent, {}, {}});
  nodes_[static_cast<std::uint32_t>(parent)].children.push_back(id);
  return id;
}

void CategoryTree::rename(CategoryId node, std::string name) {
  check(node);
  nodes_[static_cast<std::uint32_t>(node)].name = std::move(name);
}

void CategoryTree::assign(CategoryId node, TagId tag) {
  check(node);
  auto [it, inserted] = owner_.try_emplace(tag, node);
  if (!inserted) {
    if (it->second == node) return;
    throw Error(ErrorCode::CategoryConflict, "tag is already assigned to category '" +
                                                 nodes_[static_cast<std::uint32_t>(it->second)].name + "'");
  }
  auto& tags = nodes_[static_cast<std::uint32_t>(node)].tags;
  tags.insert(std::lower_bound(tags.begin(), tags.end(), tag), tag);
}

void CategoryTree::unassign(TagId tag) {
  auto it = owner_.find(tag);
  if (it == owner_.end()) return;
  auto& tags = nodes_[static_cast<std::uint32_t>(it->second)].tags;
  tags.erase(std::lower_bound(tags.begin(), tags.end(), tag));
  owner_.erase(it);
}

std::optional<CategoryId> CategoryTree::category_of(TagId tag) const {
  auto it = owner_.find(tag);
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

bool CategoryTree::within(CategoryId node, CategoryId ancestor) const {
  check(node);
  check(ancestor);
  std::optional<CategoryId> cur = node;
  while (cur) {
    if (*cur == ancestor) return true;
    cur = nodes_[static_cast<std::uint32_t>(*cur)].parent;
  }
  return false;
}

void CategoryTree::move(CategoryId node, CategoryId new_parent) {
  check(node);
  check(new_parent);
  if (within(new_parent, node)) {
    throw Error(ErrorCode::CycleError, "cannot move category '" + nodes_[static_cast<std::uint32_t>(node)].name +
                                           "' beneath itself");
  }
  auto& moved = nodes_[static_cast<std::uint32_t>(node)];
  auto& siblings = nodes_[static_cast<std::uint32_t>(*moved.parent)].children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), node));
  moved.parent = new_parent;
  nodes_[static_cast<std::uint32_t>(new_parent)].children.push_back(node);
}

std::string CategoryTree::path(CategoryId id) const {
  check(id);
  std::vector<const std::string*> names;
  for (std::optional<CategoryId> cur = id; cur; cur = nodes_[static_cast<std::uint32_t>(*cur)].parent) {
    names.push_back(&nodes_[static_cast<std::uint32_t>(*cur)].name);
  }
  std::string out;
  for (auto it = names.rbegin(); it != names.rend(); ++it) {
    if (!out.empty()) out += '/';
    out += **it;
  }
  return out;
}

std::vector<CategoryId> CategoryTree::preorder() const {
  std::vector<CategoryId> out;
  out.reserve(nodes_.size());
  std::vector<CategoryId> stack{root()};
  while (!stack.empty()) {
    CategoryId id = stack.back();
    stack.pop_back();
    out.push_back(id);
    const auto& children = nodes_[static_cast<std::uint32_t>(id)].children;
    for (auto it = children.rbegin(); it != children.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

bool operator==(const CategoryTree& a, const CategoryTree& b) {
  // Ids are construction artifacts; compare shape, names and assignments.
  auto ao = a.preorder();
  auto bo = b.preorder();
  if (ao.size() != bo.size()) return false;
  for (std::size_t i = 0; i < ao.size(); ++i) {
    const auto& x = a.node(ao[i]);
    const auto& y = b.node(bo[i]);
    if (x.name != y.name || x.tags != y.tags || x.children.size() != y.children.size()) return false;
  }
  return true;
}

std::vector<CloudGroup> group_cloud(const CategoryTree& tree, const TagCloud& cloud) {
  std::unordered_map<std::uint32_t, std::vector<CloudEntry>> by_node;
  std::vector<CloudEntry> loose;
  for (const auto& entry : cloud.entries()) {
    if (auto owner = tree.category_of(entry.tag)) {
      by_node[static_cast<std::uint32_t>(*owner)].push_back(entry);
    } else {
      loose.push_back(entry);
    }
  }
  std::vector<CloudGroup> groups;
  for (CategoryId id : tree.preorder()) {
    auto it = by_node.find(static_cast<std::uint32_t>(id));
    if (it != by_node.end()) groups.push_back({id, TagCloud(std::move(it->second))});
  }
  if (!loose.empty()) groups.push_back({std::nullopt, TagCloud(std::move(loose))});
  return groups;
}

}  // namespace tagnav
