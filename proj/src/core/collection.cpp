#include "tagnav/core/collection.hpp"

#include <algorithm>
#include <cctype>

#include "tagnav/error.hpp"

namespace tagnav {

namespace {

bool is_blank(std::string_view id) {
  return std::all_of(id.begin(), id.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

ResourceKey Collection::add_resource(std::string_view id, std::span<const std::string> tags, ResourceMeta meta) {
  if (is_blank(id)) throw Error(ErrorCode::EmptyId, "resource id is empty");
  if (by_id_.contains(std::string(id))) {
    throw Error(ErrorCode::DuplicateResource, "duplicate resource id '" + std::string(id) + "'");
  }

  // Validate every label before touching any state.
  std::vector<Tag> normalized;
  normalized.reserve(tags.size());
  for (const auto& label : tags) normalized.push_back(Tag::make(label));

  std::vector<TagId> ids;
  ids.reserve(normalized.size());
  for (const auto& tag : normalized) ids.push_back(vocabulary_.intern(tag));
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  if (presence_.size() < vocabulary_.size()) presence_.resize(vocabulary_.size(), 0);
  for (TagId t : ids) {
    if (presence_[index_of(t)]++ == 0) ++live_tags_;
  }

  ResourceKey key{static_cast<std::uint32_t>(slots_.size())};
  slots_.push_back(Resource{key, std::string(id), std::move(meta.title), std::move(meta.uri), std::move(ids)});
  by_id_.emplace(std::string(id), key);
  ++revision_;
  return key;
}

ResourceKey Collection::add_resource(std::string_view id, std::initializer_list<std::string_view> tags,
                                     ResourceMeta meta) {
  std::vector<std::string> labels(tags.begin(), tags.end());
  return add_resource(id, std::span<const std::string>(labels), std::move(meta));
}

void Collection::remove_resource(std::string_view id) {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) throw Error(ErrorCode::UnknownResource, "unknown resource '" + std::string(id) + "'");
  auto& slot = slots_[index_of(it->second)];
  for (TagId t : slot->tags) {
    if (--presence_[index_of(t)] == 0) --live_tags_;
  }
  slot.reset();
  by_id_.erase(it);
  ++revision_;
}

TagCloud Collection::induced_cloud(std::span<const ResourceKey> scope) const {
  if (scope.empty()) throw Error(ErrorCode::EmptyScope, "induced cloud of an empty scope");
  if (!is_canonical(scope)) throw Error(ErrorCode::InvalidArgument, "scope must be sorted and duplicate-free");

  std::vector<std::uint32_t> counts(vocabulary_.size(), 0);
  std::vector<TagId> touched;
  for (ResourceKey key : scope) {
    for (TagId t : tags(key)) {
      if (counts[index_of(t)]++ == 0) touched.push_back(t);
    }
  }
  std::sort(touched.begin(), touched.end());

  const auto n = static_cast<std::uint32_t>(scope.size());
  std::vector<CloudEntry> entries;
  entries.reserve(touched.size());
  for (TagId t : touched) {
    if (counts[index_of(t)] < n) entries.push_back({t, counts[index_of(t)]});
  }
  return TagCloud(std::move(entries));
}

TagCloud Collection::root_cloud() const {
  // Presence counts are maintained incrementally, so the display cloud needs
  // no counting pass.
  std::vector<CloudEntry> entries;
  const auto n = static_cast<std::uint32_t>(size());
  for (std::uint32_t i = 0; i < presence_.size(); ++i) {
    if (presence_[i] > 0 && presence_[i] < n) entries.push_back({TagId{i}, presence_[i]});
  }
  return TagCloud(std::move(entries));
}

TagCloud Collection::cloud() const {
  std::vector<CloudEntry> entries;
  for (std::uint32_t i = 0; i < presence_.size(); ++i) {
    if (presence_[i] > 0) entries.push_back({TagId{i}, presence_[i]});
  }
  return TagCloud(std::move(entries));
}

std::uint32_t Collection::presence(TagId tag) const noexcept {
  return index_of(tag) < presence_.size() ? presence_[index_of(tag)] : 0;
}

CategoryId Collection::add_category(CategoryId parent, std::string name) {
  CategoryId id = categories_.add(parent, std::move(name));
  ++revision_;
  return id;
}

void Collection::rename_category(CategoryId node, std::string name) {
  categories_.rename(node, std::move(name));
  ++revision_;
}

void Collection::assign_category(CategoryId node, std::string_view tag_label) {
  auto tag = find_tag(tag_label);
  if (!tag) {
    throw Error(ErrorCode::UnknownCategoryTag,
                "category tag '" + std::string(tag_label) + "' annotates no resource");
  }
  categories_.assign(node, *tag);
  ++revision_;
}

void Collection::move_category(CategoryId node, CategoryId new_parent) {
  categories_.move(node, new_parent);
  ++revision_;
}

std::optional<TagId> Collection::find_tag(std::string_view label) const {
  auto id = vocabulary_.find(label);
  if (!id || presence(*id) == 0) return std::nullopt;
  return id;
}

std::optional<ResourceKey> Collection::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

bool Collection::contains(ResourceKey key) const noexcept {
  return index_of(key) < slots_.size() && slots_[index_of(key)].has_value();
}

const Resource& Collection::resource(ResourceKey key) const {
  if (!contains(key)) {
    throw Error(ErrorCode::UnknownResource, "unknown resource key " + std::to_string(index_of(key)));
  }
  return *slots_[index_of(key)];
}

ResourceSet Collection::keys() const {
  ResourceSet out;
  out.reserve(size());
  for (const auto& slot : slots_) {
    if (slot) out.push_back(slot->key);
  }
  return out;
}

ResourceSet Collection::extent(TagId tag) const {
  ResourceSet out;
  for (const auto& slot : slots_) {
    if (slot && std::binary_search(slot->tags.begin(), slot->tags.end(), tag)) out.push_back(slot->key);
  }
  return out;
}

}  // namespace tagnav
