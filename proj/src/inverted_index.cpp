#include "tagnav/inverted_index.hpp"

#include <algorithm>

#include "tagnav/error.hpp"

namespace tagnav {

InvertedIndex InvertedIndex::build(const Collection& collection) {
  InvertedIndex index;
  for (ResourceKey key : collection.keys()) index.insert(key, collection.tags(key));
  return index;
}

void InvertedIndex::insert(ResourceKey key, std::span<const TagId> tags) {
  auto pos = std::lower_bound(all_.begin(), all_.end(), key);
  if (pos != all_.end() && *pos == key) {
    throw Error(ErrorCode::DuplicateResource, "resource key " + std::to_string(index_of(key)) + " already indexed");
  }
  all_.insert(pos, key);
  for (TagId t : tags) {
    if (index_of(t) >= postings_.size()) postings_.resize(index_of(t) + 1);
    auto& list = postings_[index_of(t)];
    // Keys grow with insertion order, so this is almost always an append.
    if (list.empty() || list.back() < key) {
      list.push_back(key);
    } else {
      auto at = std::lower_bound(list.begin(), list.end(), key);
      if (at == list.end() || *at != key) list.insert(at, key);
    }
  }
}

void InvertedIndex::remove(ResourceKey key, std::span<const TagId> tags) {
  auto pos = std::lower_bound(all_.begin(), all_.end(), key);
  if (pos == all_.end() || *pos != key) {
    throw Error(ErrorCode::UnknownResource, "resource key " + std::to_string(index_of(key)) + " not indexed");
  }
  all_.erase(pos);
  for (TagId t : tags) {
    if (index_of(t) >= postings_.size()) continue;
    auto& list = postings_[index_of(t)];
    auto at = std::lower_bound(list.begin(), list.end(), key);
    if (at != list.end() && *at == key) list.erase(at);
  }
  while (!postings_.empty() && postings_.back().empty()) postings_.pop_back();
}

std::span<const ResourceKey> InvertedIndex::extent(TagId tag) const noexcept {
  if (index_of(tag) >= postings_.size()) return {};
  return postings_[index_of(tag)];
}

std::size_t InvertedIndex::posting_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(postings_.begin(), postings_.end(), [](const ResourceSet& p) { return !p.empty(); }));
}

ResourceSet InvertedIndex::conjunctive(std::span<const TagId> tags) const {
  if (tags.empty()) return all_;

  std::vector<std::span<const ResourceKey>> lists;
  lists.reserve(tags.size());
  for (TagId t : tags) {
    auto list = extent(t);
    if (list.empty()) return {};
    lists.push_back(list);
  }
  std::sort(lists.begin(), lists.end(), [](auto a, auto b) { return a.size() < b.size(); });

  ResourceSet acc(lists.front().begin(), lists.front().end());
  for (std::size_t i = 1; i < lists.size() && !acc.empty(); ++i) intersect_into(acc, lists[i]);
  return acc;
}

BrowseStep browse_step(const InvertedIndex& index, std::span<const TagId> selected, const Collection& collection) {
  BrowseStep step;
  step.resources = index.conjunctive(selected);
  step.cloud = collection.induced_cloud(step.resources);
  return step;
}

}  // namespace tagnav
