#include "tagnav/document.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tagnav/error.hpp"

namespace tagnav {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, (where.empty() ? std::string("/") : where) + ": " + what);
}

const json& require(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end()) schema_error(where, std::string("missing required member '") + key + "'");
  return *it;
}

std::optional<std::string> optional_string(const json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) schema_error(where + "/" + key, "expected a string");
  return it->get<std::string>();
}

std::vector<std::string> string_list(const json& value, const std::string& where) {
  if (!value.is_array()) schema_error(where, "expected an array of strings");
  std::vector<std::string> out;
  out.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (!value[i].is_string()) schema_error(where + "/" + std::to_string(i), "expected a string");
    out.push_back(value[i].get<std::string>());
  }
  return out;
}

void load_category(Collection& collection, CategoryId node, const json& value, const std::string& where) {
  if (auto it = value.find("tags"); it != value.end()) {
    for (const auto& label : string_list(*it, where + "/tags")) collection.assign_category(node, label);
  }
  auto children = value.find("children");
  if (children == value.end()) return;
  if (!children->is_array()) schema_error(where + "/children", "expected an array");
  for (std::size_t i = 0; i < children->size(); ++i) {
    const json& child = (*children)[i];
    const std::string child_where = where + "/children/" + std::to_string(i);
    if (!child.is_object()) schema_error(child_where, "expected an object");
    const json& name = require(child, "name", child_where);
    if (!name.is_string() || name.get<std::string>().empty()) {
      schema_error(child_where + "/name", "expected a nonempty string");
    }
    CategoryId id = collection.add_category(node, name.get<std::string>());
    load_category(collection, id, child, child_where);
  }
}

void dump_category(const Collection& collection, CategoryId id, nlohmann::ordered_json& out) {
  const auto& node = collection.categories().node(id);
  out["name"] = node.name;
  std::vector<std::string> labels;
  for (TagId t : node.tags) {
    if (collection.presence(t) > 0) labels.push_back(collection.vocabulary().label(t));
  }
  std::sort(labels.begin(), labels.end());
  out["tags"] = labels;
  out["children"] = nlohmann::ordered_json::array();
  for (CategoryId child : node.children) {
    nlohmann::ordered_json sub;
    dump_category(collection, child, sub);
    out["children"].push_back(std::move(sub));
  }
}

}  // namespace

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line:column for humans.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError, "malformed JSON at line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + " (byte " + std::to_string(e.byte) + ")");
  }
}

Collection collection_from_json(const json& document) {
  if (!document.is_object()) schema_error("", "expected a JSON object");
  const json& version = require(document, "format_version", "");
  if (!version.is_number_integer()) schema_error("/format_version", "expected an integer");
  if (version.get<long long>() != kFormatVersion) {
    schema_error("/format_version", "unsupported version " + version.dump());
  }

  const json& resources = require(document, "resources", "");
  if (!resources.is_array()) schema_error("/resources", "expected an array");

  Collection collection;
  for (std::size_t i = 0; i < resources.size(); ++i) {
    const std::string where = "/resources/" + std::to_string(i);
    const json& entry = resources[i];
    if (!entry.is_object()) schema_error(where, "expected an object");
    const json& id = require(entry, "id", where);
    if (!id.is_string()) schema_error(where + "/id", "expected a string");
    ResourceMeta meta{optional_string(entry, "title", where), optional_string(entry, "uri", where)};
    std::vector<std::string> tags = string_list(require(entry, "tags", where), where + "/tags");
    collection.add_resource(id.get<std::string>(), tags, std::move(meta));
  }

  if (auto it = document.find("categories"); it != document.end() && !it->is_null()) {
    if (!it->is_object()) schema_error("/categories", "expected an object");
    const json& name = require(*it, "name", "/categories");
    if (!name.is_string() || name.get<std::string>().empty()) {
      schema_error("/categories/name", "expected a nonempty string");
    }
    collection.rename_category(collection.categories().root(), name.get<std::string>());
    load_category(collection, collection.categories().root(), *it, "/categories");
  }
  return collection;
}

Collection parse_collection(std::string_view text) { return collection_from_json(parse_json(text)); }

Collection load_collection(const std::filesystem::path& path) { return parse_collection(read_file(path)); }

nlohmann::ordered_json collection_to_json(const Collection& collection) {
  nlohmann::ordered_json doc;
  doc["format_version"] = kFormatVersion;
  doc["resources"] = nlohmann::ordered_json::array();
  for (ResourceKey key : collection.keys()) {
    const Resource& r = collection.resource(key);
    nlohmann::ordered_json entry;
    entry["id"] = r.id;
    if (r.title) entry["title"] = *r.title;
    if (r.uri) entry["uri"] = *r.uri;
    std::vector<std::string> labels;
    for (TagId t : r.tags) labels.push_back(collection.vocabulary().label(t));
    std::sort(labels.begin(), labels.end());
    entry["tags"] = labels;
    doc["resources"].push_back(std::move(entry));
  }
  const auto& tree = collection.categories();
  if (tree.size() > 1 || !tree.node(tree.root()).tags.empty() || tree.node(tree.root()).name != "root") {
    nlohmann::ordered_json root;
    dump_category(collection, tree.root(), root);
    doc["categories"] = std::move(root);
  }
  return doc;
}

std::string serialize_collection(const Collection& collection) { return collection_to_json(collection).dump(2) + "\n"; }

void save_collection(const Collection& collection, const std::filesystem::path& path) {
  write_file(path, serialize_collection(collection));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "failed reading '" + path.string() + "'");
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

}  // namespace tagnav
