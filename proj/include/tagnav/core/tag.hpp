#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tagnav {

/// Dense handle for an interned tag label. Ids are never reused within a
/// vocabulary.
enum class TagId : std::uint32_t {};

/// Dense handle for a resource, assigned in insertion order. A resource that
/// is removed and re-added gets a fresh key, so keys order resources by their
/// latest insertion.
enum class ResourceKey : std::uint32_t {};

constexpr std::uint32_t index_of(TagId id) noexcept { return static_cast<std::uint32_t>(id); }
constexpr std::uint32_t index_of(ResourceKey key) noexcept { return static_cast<std::uint32_t>(key); }

/// A tag label in NFC form. Construction normalizes and validates.
class Tag {
 public:
  /// Throws Error(InvalidTag) for empty labels or ill-formed UTF-8.
  static Tag make(std::string_view label);

  const std::string& label() const noexcept { return label_; }

  friend bool operator==(const Tag&, const Tag&) = default;
  friend auto operator<=>(const Tag&, const Tag&) = default;

 private:
  explicit Tag(std::string label) : label_(std::move(label)) {}
  std::string label_;
};

/// NFC-normalizes a UTF-8 string. Throws Error(InvalidTag) on ill-formed input.
std::string normalize_nfc(std::string_view text);

/// Append-only label <-> TagId table.
class Vocabulary {
 public:
  TagId intern(const Tag& tag);
  std::optional<TagId> find(const Tag& tag) const;
  /// Normalizes `label` before lookup; returns nullopt for unknown or invalid labels.
  std::optional<TagId> find(std::string_view label) const;

  const std::string& label(TagId id) const { return labels_.at(index_of(id)); }
  std::size_t size() const noexcept { return labels_.size(); }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, TagId> ids_;
};

}  // namespace tagnav
