#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include <json.hpp>

#include "tagnav/core/collection.hpp"
#include "tagnav/engine.hpp"
#include "tagnav/session.hpp"

namespace httplib {
class Server;
}

namespace tagnav {

struct ServiceOptions {
  EngineKind engine = EngineKind::Automaton;
  bool enable_mutations = false;
  std::chrono::steady_clock::duration session_ttl = std::chrono::minutes(30);
  std::size_t cloud_cap = 500;
  std::function<std::chrono::steady_clock::time_point()> clock = [] { return std::chrono::steady_clock::now(); };
};

struct Response {
  int status = 200;
  nlohmann::json body;
};

using Query = std::map<std::string, std::string, std::less<>>;

// JSON-over-HTTP front for collections and browsing sessions.
//
//   POST   /collections                         CollectionDocument -> 201 {collection_id}
//   POST   /collections/{id}/sessions           -> 201 session payload
//   GET    /collections/{id}/resources/{rid}    -> {id, title, uri, tags}
//   POST   /collections/{id}/resources          (mutations enabled) -> 201
//   DELETE /collections/{id}/resources/{rid}    (mutations enabled) -> 200
//   GET    /sessions/{sid}                      -> session payload
//   POST   /sessions/{sid}/select  {tag}        -> session payload
//   POST   /sessions/{sid}/back | /reset        -> session payload
//
// Session payload: {session_id, breadcrumb, resources, cloud: [{tag, count}],
// terminal, truncated}. Clouds are capped at cloud_cap entries unless the
// query has all=true. Errors are {error_code, message}.
//
// Requests on one collection are serialized by that collection's lock;
// different collections proceed in parallel.
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();

  Response handle(std::string_view method, std::string_view path, const Query& query, std::string_view body);

  /// Registers a collection directly (the CLI's --collection). Returns its id.
  std::string add_collection(Collection collection);

  std::size_t session_count() const;

 private:
  struct Hosted;
  struct SessionEntry;

  Response create_collection(std::string_view body);
  Response open_session(const std::string& collection_id, const Query& query);
  Response get_resource(const std::string& collection_id, const std::string& resource_id);
  Response add_resource(const std::string& collection_id, std::string_view body);
  Response remove_resource(const std::string& collection_id, const std::string& resource_id);
  Response session_action(const std::string& session_id, std::string_view action, const Query& query,
                          std::string_view body);

  std::shared_ptr<Hosted> find_collection(const std::string& id) const;
  nlohmann::json payload(const std::string& session_id, const SessionEntry& entry, const Hosted& hosted,
                         const Query& query) const;
  void sweep_expired();

  ServiceOptions options_;
  mutable std::mutex registry_mutex_;
  std::unordered_map<std::string, std::shared_ptr<Hosted>> collections_;
  std::unordered_map<std::string, std::shared_ptr<SessionEntry>> sessions_;
  std::uint64_t next_collection_ = 1;
};

/// Routes every request of `server` through `service`; static files under
/// /ui come from `ui_dir` when given.
void mount(Service& service, httplib::Server& server, const std::optional<std::filesystem::path>& ui_dir = {});

/// 128 random bits as 32 lowercase hex digits.
std::string random_token();

}  // namespace tagnav
