#include "tagnav/server.hpp"

#include <algorithm>
#include <random>
#include <vector>

#include <httplib.h>

#include "tagnav/document.hpp"
#include "tagnav/error.hpp"

namespace tagnav {

using nlohmann::json;

struct Service::Hosted {
  Collection collection;
  std::unique_ptr<BrowseEngine> engine;
  std::shared_mutex mutex;
};

struct Service::SessionEntry {
  std::string collection_id;
  std::shared_ptr<Hosted> hosted;
  // Empty when the collection had no resources at open: such a session sits
  // terminal at the root.
  std::optional<Session> session;
  std::uint64_t pinned_revision = 0;
  std::chrono::steady_clock::time_point last_activity;
};

namespace {

Response error(int status, std::string_view code, const std::string& message) {
  return Response{status, json{{"error_code", code}, {"message", message}}};
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleTag:
    case ErrorCode::AtRoot:
    case ErrorCode::DuplicateResource:
    case ErrorCode::EmptyCollection:
      return 409;
    case ErrorCode::StaleSession:
      return 410;
    case ErrorCode::UnknownResource:
    case ErrorCode::UnknownNode:
    case ErrorCode::UnknownTag:
      return 404;
    case ErrorCode::ParseError:
    case ErrorCode::EmptyId:
    case ErrorCode::InvalidTag:
    case ErrorCode::UnknownCategoryTag:
    case ErrorCode::CategoryConflict:
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidSpec:
    case ErrorCode::EmptyScope:
      return 400;
    default:
      return 500;
  }
}

Response from_error(const Error& e) { return error(status_for(e.code()), to_string(e.code()), e.what()); }

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    auto slash = path.find('/');
    auto part = path.substr(0, slash);
    if (!part.empty()) parts.push_back(part);
    if (slash == std::string_view::npos) break;
    path.remove_prefix(slash + 1);
  }
  return parts;
}

bool wants_all(const Query& query) {
  auto it = query.find("all");
  return it != query.end() && (it->second == "true" || it->second == "1");
}

json resource_json(const Collection& collection, const Resource& r) {
  std::vector<std::string> labels;
  for (TagId t : r.tags) labels.push_back(collection.vocabulary().label(t));
  std::sort(labels.begin(), labels.end());
  return json{{"id", r.id},
              {"title", r.title ? json(*r.title) : json(nullptr)},
              {"uri", r.uri ? json(*r.uri) : json(nullptr)},
              {"tags", labels}};
}

}  // namespace

std::string random_token() {
  static thread_local std::random_device device;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string token;
  token.reserve(32);
  for (int word = 0; word < 4; ++word) {
    std::uint32_t bits = device();
    for (int nibble = 0; nibble < 8; ++nibble) {
      token.push_back(kHex[bits & 0xfu]);
      bits >>= 4;
    }
  }
  return token;
}

Service::Service(ServiceOptions options) : options_(std::move(options)) {}

Service::~Service() = default;

std::size_t Service::session_count() const {
  std::lock_guard lock(registry_mutex_);
  return sessions_.size();
}

std::string Service::add_collection(Collection collection) {
  auto hosted = std::make_shared<Hosted>();
  hosted->collection = std::move(collection);
  hosted->engine = make_engine(options_.engine, hosted->collection);
  std::lock_guard lock(registry_mutex_);
  std::string id = "c" + std::to_string(next_collection_++);
  collections_.emplace(id, std::move(hosted));
  return id;
}

std::shared_ptr<Service::Hosted> Service::find_collection(const std::string& id) const {
  std::lock_guard lock(registry_mutex_);
  auto it = collections_.find(id);
  return it == collections_.end() ? nullptr : it->second;
}

void Service::sweep_expired() {
  const auto now = options_.clock();
  std::lock_guard lock(registry_mutex_);
  std::erase_if(sessions_, [&](const auto& item) {
    return now - item.second->last_activity > options_.session_ttl;
  });
}

Response Service::handle(std::string_view method, std::string_view path, const Query& query,
                         std::string_view body) {
  const auto parts = split_path(path);
  try {
    if (parts.size() == 1 && parts[0] == "collections") {
      if (method == "POST") return create_collection(body);
    } else if (parts.size() == 3 && parts[0] == "collections" && parts[2] == "sessions") {
      if (method == "POST") return open_session(std::string(parts[1]), query);
    } else if (parts.size() == 3 && parts[0] == "collections" && parts[2] == "resources") {
      if (method == "POST") return add_resource(std::string(parts[1]), body);
    } else if (parts.size() == 4 && parts[0] == "collections" && parts[2] == "resources") {
      if (method == "GET") return get_resource(std::string(parts[1]), std::string(parts[3]));
      if (method == "DELETE") return remove_resource(std::string(parts[1]), std::string(parts[3]));
    } else if (parts.size() == 2 && parts[0] == "sessions") {
      if (method == "GET") return session_action(std::string(parts[1]), "", query, body);
    } else if (parts.size() == 3 && parts[0] == "sessions" &&
               (parts[2] == "select" || parts[2] == "back" || parts[2] == "reset")) {
      if (method == "POST") return session_action(std::string(parts[1]), parts[2], query, body);
    } else {
      return error(404, "NotFound", "no route for " + std::string(path));
    }
    return error(405, "MethodNotAllowed", std::string(method) + " not allowed on " + std::string(path));
  } catch (const Error& e) {
    return from_error(e);
  } catch (const std::exception& e) {
    return error(500, "InternalError", e.what());
  }
}

Response Service::create_collection(std::string_view body) {
  try {
    std::string id = add_collection(parse_collection(body));
    return Response{201, json{{"collection_id", id}}};
  } catch (const Error& e) {
    return error(400, to_string(e.code()), e.what());
  }
}

json Service::payload(const std::string& session_id, const SessionEntry& entry, const Hosted& hosted,
                      const Query& query) const {
  json cloud = json::array();
  json resources = json::array();
  json breadcrumb = json::array();
  bool truncated = false;
  if (entry.session) {
    const Session& s = *entry.session;
    auto entries = s.display_cloud();
    if (!wants_all(query) && entries.size() > options_.cloud_cap) {
      entries.resize(options_.cloud_cap);
      truncated = true;
    }
    for (const auto& e : entries) cloud.push_back(json{{"tag", e.tag}, {"count", e.count}});
    for (ResourceKey key : s.visit_all()) resources.push_back(hosted.collection.resource(key).id);
    breadcrumb = s.breadcrumb_labels();
  }
  return json{{"session_id", session_id}, {"breadcrumb", breadcrumb}, {"resources", resources},
              {"cloud", cloud},           {"terminal", cloud.empty()}, {"truncated", truncated}};
}

Response Service::open_session(const std::string& collection_id, const Query& query) {
  auto hosted = find_collection(collection_id);
  if (!hosted) return error(404, "UnknownCollection", "unknown collection '" + collection_id + "'");
  sweep_expired();

  auto entry = std::make_shared<SessionEntry>();
  entry->collection_id = collection_id;
  entry->hosted = hosted;
  entry->last_activity = options_.clock();

  std::unique_lock lock(hosted->mutex);
  entry->pinned_revision = hosted->engine->revision();
  if (!hosted->collection.empty()) entry->session.emplace(Session::open(hosted->collection, *hosted->engine));

  std::string sid = random_token();
  {
    std::lock_guard registry(registry_mutex_);
    sessions_.emplace(sid, entry);
  }
  return Response{201, payload(sid, *entry, *hosted, query)};
}

Response Service::session_action(const std::string& session_id, std::string_view action, const Query& query,
                                 std::string_view body) {
  std::shared_ptr<SessionEntry> entry;
  {
    std::lock_guard registry(registry_mutex_);
    auto it = sessions_.find(session_id);
    if (it == sessions_.end()) return error(404, "UnknownSession", "unknown session");
    entry = it->second;
    if (options_.clock() - entry->last_activity > options_.session_ttl) {
      sessions_.erase(it);
      return error(410, "SessionExpired", "session expired after inactivity");
    }
  }
  Hosted& hosted = *entry->hosted;
  std::unique_lock lock(hosted.mutex);
  entry->last_activity = options_.clock();

  if (hosted.engine->revision() != entry->pinned_revision) {
    return error(410, to_string(ErrorCode::StaleSession), "collection changed since the session was opened");
  }

  if (action == "select") {
    json request = parse_json(body.empty() ? std::string_view("{}") : body);
    auto tag = request.is_object() ? request.find("tag") : request.end();
    if (!request.is_object() || tag == request.end() || !tag->is_string()) {
      return error(400, "ParseError", "body must be {\"tag\": string}");
    }
    if (!entry->session) throw Error(ErrorCode::InfeasibleTag, "collection has no resources to narrow");
    entry->session->select_tag(tag->get<std::string>());
  } else if (action == "back") {
    if (!entry->session) throw Error(ErrorCode::AtRoot, "nothing selected");
    entry->session->back();
  } else if (action == "reset") {
    if (entry->session) entry->session->reset();
  }
  return Response{200, payload(session_id, *entry, hosted, query)};
}

Response Service::get_resource(const std::string& collection_id, const std::string& resource_id) {
  auto hosted = find_collection(collection_id);
  if (!hosted) return error(404, "UnknownCollection", "unknown collection '" + collection_id + "'");
  std::shared_lock lock(hosted->mutex);
  auto key = hosted->collection.find(resource_id);
  if (!key) return error(404, "UnknownResource", "unknown resource '" + resource_id + "'");
  return Response{200, resource_json(hosted->collection, hosted->collection.resource(*key))};
}

Response Service::add_resource(const std::string& collection_id, std::string_view body) {
  if (!options_.enable_mutations) return error(403, "MutationsDisabled", "collection mutation is disabled");
  auto hosted = find_collection(collection_id);
  if (!hosted) return error(404, "UnknownCollection", "unknown collection '" + collection_id + "'");

  // Reuse the document schema checks by wrapping the entry in a one-resource document.
  json entry = parse_json(body);
  Collection probe = collection_from_json(json{{"format_version", kFormatVersion}, {"resources", json::array({entry})}});
  const Resource& incoming = probe.resource(probe.keys().front());
  std::vector<std::string> labels;
  for (TagId t : incoming.tags) labels.push_back(probe.vocabulary().label(t));

  std::unique_lock lock(hosted->mutex);
  ResourceKey key = hosted->collection.add_resource(incoming.id, labels, ResourceMeta{incoming.title, incoming.uri});
  hosted->engine->insert(key, hosted->collection.tags(key));
  return Response{201, resource_json(hosted->collection, hosted->collection.resource(key))};
}

Response Service::remove_resource(const std::string& collection_id, const std::string& resource_id) {
  if (!options_.enable_mutations) return error(403, "MutationsDisabled", "collection mutation is disabled");
  auto hosted = find_collection(collection_id);
  if (!hosted) return error(404, "UnknownCollection", "unknown collection '" + collection_id + "'");

  std::unique_lock lock(hosted->mutex);
  auto key = hosted->collection.find(resource_id);
  if (!key) return error(404, "UnknownResource", "unknown resource '" + resource_id + "'");
  std::vector<TagId> tags(hosted->collection.tags(*key).begin(), hosted->collection.tags(*key).end());
  hosted->engine->remove(*key, tags);
  hosted->collection.remove_resource(resource_id);
  return Response{200, json{{"removed", resource_id}}};
}

void mount(Service& service, httplib::Server& server, const std::optional<std::filesystem::path>& ui_dir) {
  if (ui_dir) server.set_mount_point("/ui", ui_dir->string());

  auto route = [&service](const httplib::Request& req, httplib::Response& res) {
    Query query;
    for (const auto& [key, value] : req.params) query.emplace(key, value);
    Response out = service.handle(req.method, req.path, query, req.body);
    res.status = out.status;
    res.set_content(out.body.dump(), "application/json; charset=utf-8");
  };
  server.Get(R"(/(collections|sessions)(/.*)?)", route);
  server.Post(R"(/(collections|sessions)(/.*)?)", route);
  server.Delete(R"(/(collections|sessions)(/.*)?)", route);
}

}  // namespace tagnav
