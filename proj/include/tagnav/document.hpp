#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tagnav/core/collection.hpp"

namespace tagnav {

inline constexpr int kFormatVersion = 1;

// Collection documents are JSON:
//
//   {
//     "format_version": 1,
//     "resources": [
//       {"id": "r1", "title": "...", "uri": "...", "tags": ["a", "b"]}
//     ],
//     "categories": {"name": "root", "tags": [], "children": [...]}
//   }
//
// title, uri and categories are optional. Unknown members are ignored, so a
// document may carry extra envelopes (the bench reads "workload").
//
// Loading is all-or-nothing: any defect throws a typed Error (ParseError,
// EmptyId, DuplicateResource, InvalidTag, UnknownCategoryTag,
// CategoryConflict) and no partial collection escapes.

Collection collection_from_json(const nlohmann::json& document);
Collection parse_collection(std::string_view text);
Collection load_collection(const std::filesystem::path& path);

/// Canonical form: resources in insertion order, tags sorted, two-space indent.
nlohmann::ordered_json collection_to_json(const Collection& collection);
std::string serialize_collection(const Collection& collection);
void save_collection(const Collection& collection, const std::filesystem::path& path);

/// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& path);
/// Throws IoError.
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Parses JSON text, throwing ParseError with line and column on failure.
nlohmann::json parse_json(std::string_view text);

}  // namespace tagnav
