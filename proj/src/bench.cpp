#include "tagnav/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>

#include "tagnav/document.hpp"
#include "tagnav/error.hpp"
#include "tagnav/session.hpp"

namespace tagnav {

std::string_view to_string(OpKind kind) noexcept {
  switch (kind) {
    case OpKind::Insert: return "insert";
    case OpKind::Browse: return "browse";
    case OpKind::Reconfig: return "reconfig";
  }
  return "unknown";
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::InvalidSpec, what); }

std::size_t scaled(double factor, std::size_t n) {
  // The epsilon keeps e.g. 0.1 * 300 from landing just below 30.
  return static_cast<std::size_t>(std::floor(factor * static_cast<double>(n) + 1e-9));
}

std::string numbered(const char* prefix, std::size_t value, std::size_t width) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%0*zu", static_cast<int>(width), value);
  return std::string(prefix) + buffer;
}

std::size_t digits(std::size_t n) {
  std::size_t d = 1;
  while (n >= 10) {
    n /= 10;
    ++d;
  }
  return d;
}

void fnv_mix(std::uint64_t& h, std::uint32_t value) {
  for (int i = 0; i < 4; ++i) {
    h ^= (value >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ULL;
  }
}

using Clock = std::chrono::steady_clock;

// The collection being grown by a run, plus the bookkeeping needed to replay
// the source's category tree onto it.
class LiveCollection {
 public:
  explicit LiveCollection(const Collection& source) : source_(&source), order_(source.keys()) {
    const auto& tree = source.categories();
    node_map_.resize(tree.size());
    live_.rename_category(live_.categories().root(), tree.node(tree.root()).name);
    node_map_[0] = live_.categories().root();
    for (CategoryId id : tree.preorder()) {
      if (id == tree.root()) continue;
      const auto& node = tree.node(id);
      node_map_[static_cast<std::uint32_t>(id)] =
          live_.add_category(node_map_[static_cast<std::uint32_t>(*node.parent)], node.name);
    }
  }

  Collection& collection() noexcept { return live_; }

  ResourceKey insert(std::uint32_t position) {
    const Resource& r = source_->resource(order_.at(position));
    std::vector<std::string> labels;
    labels.reserve(r.tags.size());
    for (TagId t : r.tags) labels.push_back(source_->vocabulary().label(t));
    ResourceKey key = live_.add_resource(r.id, labels, ResourceMeta{r.title, r.uri});
    for (std::size_t i = 0; i < r.tags.size(); ++i) {
      auto owner = source_->categories().category_of(r.tags[i]);
      if (!owner) continue;
      auto live_tag = live_.find_tag(labels[i]);
      if (live_tag && !live_.categories().category_of(*live_tag)) {
        live_.assign_category(node_map_[static_cast<std::uint32_t>(*owner)], labels[i]);
      }
    }
    return key;
  }

  // Moves a random non-root category under a random node outside its subtree.
  void reconfigure(std::uint64_t draw, std::uint64_t draw2) {
    const auto& tree = live_.categories();
    if (tree.size() < 2) return;
    CategoryId moved{static_cast<std::uint32_t>(1 + draw % (tree.size() - 1))};
    std::vector<CategoryId> targets;
    for (CategoryId id : tree.preorder()) {
      if (!tree.within(id, moved)) targets.push_back(id);
    }
    live_.move_category(moved, targets[draw2 % targets.size()]);
  }

 private:
  const Collection* source_;
  ResourceSet order_;
  Collection live_;
  std::vector<CategoryId> node_map_;
};

// One engine plus the session walking it.
struct Lane {
  EngineKind kind;
  std::unique_ptr<BrowseEngine> engine;
  std::optional<Session> session;
  double cumulative = 0.0;
  std::array<double, 3> by_kind{};
  std::size_t resets = 0;
  std::uint64_t digest = 0xcbf29ce484222325ULL;
  ResourceSet last_visit;

  void browse(const Collection& collection, std::uint64_t draw) {
    if (!session || session->stale()) session.emplace(Session::open(collection, *engine));
    if (session->terminal()) {
      session->reset();
      ++resets;
    } else {
      const auto& entries = session->cloud().entries();
      session->select_tag(entries[draw % entries.size()].tag);
    }
    last_visit = session->visit_all();
  }
};

std::size_t automaton_nodes(const Lane& lane) {
  if (auto* a = dynamic_cast<const AutomatonEngine*>(lane.engine.get())) return a->automaton().node_count();
  return 0;
}

void charge(Lane& lane, OpKind kind, Clock::time_point start) {
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  lane.cumulative += seconds;
  lane.by_kind[static_cast<std::size_t>(kind)] += seconds;
}

// Runs `operations` over every lane. Each lane's engine mirrors a shared live
// collection; lanes take turns per operation and are timed individually.
RunResult drive(const Workload& workload, std::vector<Lane>& lanes, bool validate) {
  LiveCollection live(workload.source);
  Collection& collection = live.collection();
  for (auto& lane : lanes) lane.engine = make_engine(lane.kind, collection);

  RunResult result;
  result.records.reserve(workload.operations.size() * lanes.size());
  const auto& ops = workload.operations;

  for (std::size_t i = 0; i < ops.size(); ++i) {
    const Operation& op = ops[i];
    if (op.kind == OpKind::Insert) {
      // The shared collection update is charged to every lane, since each
      // engine would pay it on its own.
      auto start = Clock::now();
      ResourceKey key = live.insert(op.resource);
      const double shared = std::chrono::duration<double>(Clock::now() - start).count();
      for (auto& lane : lanes) {
        auto lane_start = Clock::now();
        lane.engine->insert(key, collection.tags(key));
        charge(lane, op.kind, lane_start);
        lane.cumulative += shared;
        lane.by_kind[0] += shared;
      }
      if (validate && (i + 1 == ops.size() || ops[i + 1].kind != OpKind::Insert)) {
        for (auto& lane : lanes) {
          if (auto* a = dynamic_cast<const AutomatonEngine*>(lane.engine.get())) a->automaton().check_invariants();
        }
      }
    } else if (op.kind == OpKind::Browse) {
      for (auto& lane : lanes) {
        auto start = Clock::now();
        lane.browse(collection, op.draw);
        charge(lane, op.kind, start);
        for (ResourceKey key : lane.last_visit) fnv_mix(lane.digest, index_of(key));
      }
      if (validate) {
        const Lane& first = lanes.front();
        const TagCloud expected = collection.induced_cloud(first.last_visit);
        for (const auto& lane : lanes) {
          if (lane.last_visit != first.last_visit) {
            throw Error(ErrorCode::EngineFailure, "engines disagree on resources at operation " + std::to_string(i));
          }
          if (lane.session->cloud() != expected) {
            throw Error(ErrorCode::EngineFailure, "engine cloud disagrees with counting pass at operation " +
                                                      std::to_string(i));
          }
          if (lane.session->resource_count() != first.last_visit.size()) {
            throw Error(ErrorCode::EngineFailure, "reported size disagrees with visit at operation " +
                                                      std::to_string(i));
          }
        }
      }
    } else {
      std::vector<std::optional<TagCloud>> before(lanes.size());
      if (validate) {
        for (std::size_t l = 0; l < lanes.size(); ++l) {
          if (lanes[l].session && !lanes[l].session->stale()) before[l] = lanes[l].session->cloud();
        }
      }
      auto start = Clock::now();
      live.reconfigure(op.draw, op.draw2);
      const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
      for (auto& lane : lanes) {
        lane.cumulative += seconds;
        lane.by_kind[static_cast<std::size_t>(OpKind::Reconfig)] += seconds;
      }
      if (validate) {
        for (std::size_t l = 0; l < lanes.size(); ++l) {
          if (!before[l]) continue;
          if (lanes[l].session->cloud() != *before[l] || collection.induced_cloud(lanes[l].last_visit) != *before[l]) {
            throw Error(ErrorCode::EngineFailure, "reconfiguration changed a browse result at operation " +
                                                      std::to_string(i));
          }
        }
      }
    }
    for (const auto& lane : lanes) {
      result.records.push_back(BenchRecord{i, lane.kind, op.kind, lane.cumulative, collection.size()});
    }
  }

  const Lane& first = lanes.front();
  result.visit_digest = first.digest;
  result.resets = first.resets;
  result.seconds_by_kind = first.by_kind;
  for (const auto& lane : lanes) result.automaton_nodes = std::max(result.automaton_nodes, automaton_nodes(lane));
  if (validate) {
    for (const auto& lane : lanes) {
      if (lane.digest != first.digest) throw Error(ErrorCode::EngineFailure, "engines visited different resources");
    }
  }
  return result;
}

}  // namespace

void validate(const WorkloadSpec& spec) {
  if (spec.insertion_round_size == 0) invalid("insertion_round_size must be at least 1");
  if (!std::isfinite(spec.browse_factor) || spec.browse_factor < 0) invalid("browse_factor must be >= 0");
  if (!std::isfinite(spec.reconfig_factor) || spec.reconfig_factor < 0) invalid("reconfig_factor must be >= 0");
  if (!spec.source) {
    const auto& s = spec.synthetic;
    if (s.vocabulary_size == 0 && s.max_tags > 0) invalid("synthetic vocabulary_size must be positive");
    if (s.min_tags > s.max_tags) invalid("synthetic min_tags exceeds max_tags");
    if (s.max_tags > s.vocabulary_size) invalid("synthetic max_tags exceeds vocabulary_size");
    if (!std::isfinite(s.zipf_exponent) || s.zipf_exponent < 0) invalid("synthetic zipf_exponent must be >= 0");
  }
}

Collection synthesize(const SyntheticSpec& spec, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5851f42d4c957f2dULL);
  Collection c;

  std::vector<double> weights(spec.vocabulary_size);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    weights[k] = 1.0 / std::pow(static_cast<double>(k + 1), spec.zipf_exponent);
  }
  std::discrete_distribution<std::size_t> popularity(weights.begin(), weights.end());
  std::uniform_int_distribution<std::size_t> tag_count(spec.min_tags, spec.max_tags);

  const std::size_t tag_width = digits(spec.vocabulary_size);
  const std::size_t id_width = digits(spec.resource_count);
  std::vector<std::string> labels;
  for (std::size_t r = 0; r < spec.resource_count; ++r) {
    const std::size_t want = tag_count(rng);
    std::vector<std::size_t> picked;
    // Rejection sampling of distinct tags; bounded so skewed exponents cannot stall.
    for (std::size_t attempts = 0; picked.size() < want && attempts < want * 64; ++attempts) {
      std::size_t t = popularity(rng);
      if (std::find(picked.begin(), picked.end(), t) == picked.end()) picked.push_back(t);
    }
    labels.clear();
    for (std::size_t t : picked) labels.push_back(numbered("tag-", t + 1, tag_width));
    c.add_resource(numbered("res-", r + 1, id_width), labels);
  }

  std::vector<CategoryId> nodes{c.categories().root()};
  for (std::size_t i = 0; i < spec.category_count; ++i) {
    std::uniform_int_distribution<std::size_t> parent(0, nodes.size() - 1);
    nodes.push_back(c.add_category(nodes[parent(rng)], numbered("cat-", i + 1, digits(spec.category_count))));
  }
  // Roughly one tag in (category_count + 1) stays uncategorized.
  std::uniform_int_distribution<std::size_t> bucket(0, spec.category_count);
  const TagCloud cloud = c.cloud();
  for (const auto& entry : cloud.entries()) {
    std::size_t b = bucket(rng);
    if (b > 0) c.assign_category(nodes[b], c.vocabulary().label(entry.tag));
  }
  return c;
}

std::vector<Operation> generate_workload(const WorkloadSpec& spec, std::size_t resource_count) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::vector<Operation> ops;

  std::size_t inserted = 0;
  while (inserted < resource_count) {
    const std::size_t round = std::min(spec.insertion_round_size, resource_count - inserted);
    for (std::size_t i = 0; i < round; ++i) {
      ops.push_back(Operation{OpKind::Insert, static_cast<std::uint32_t>(inserted + i), 0, 0});
    }
    inserted += round;

    std::vector<Operation> mixed;
    const std::size_t browses = scaled(spec.browse_factor, inserted);
    const std::size_t reconfigs = scaled(spec.reconfig_factor, inserted);
    mixed.reserve(browses + reconfigs);
    for (std::size_t i = 0; i < browses; ++i) mixed.push_back(Operation{OpKind::Browse, 0, rng(), 0});
    for (std::size_t i = 0; i < reconfigs; ++i) mixed.push_back(Operation{OpKind::Reconfig, 0, rng(), rng()});
    std::shuffle(mixed.begin(), mixed.end(), rng);
    ops.insert(ops.end(), mixed.begin(), mixed.end());
  }
  return ops;
}

Workload prepare_workload(const WorkloadSpec& spec) {
  validate(spec);
  Workload w{spec.source ? *spec.source : synthesize(spec.synthetic, spec.seed), {}};
  w.operations = generate_workload(spec, w.source.size());
  return w;
}

RunResult run(const Workload& workload, EngineKind engine) {
  std::vector<Lane> lanes(1);
  lanes[0].kind = engine;
  return drive(workload, lanes, false);
}

RunResult run(const WorkloadSpec& spec, EngineKind engine) { return run(prepare_workload(spec), engine); }

RunResult run_lockstep(const Workload& workload) {
  std::vector<Lane> lanes(2);
  lanes[0].kind = EngineKind::Automaton;
  lanes[1].kind = EngineKind::Inverted;
  return drive(workload, lanes, true);
}

std::string format_csv(const std::vector<BenchRecord>& records) {
  std::string out = "op_index,engine,op_kind,cumulative_seconds,n_resources\n";
  char seconds[64];
  for (const auto& r : records) {
    std::snprintf(seconds, sizeof seconds, "%.6f", r.cumulative_seconds);
    out += std::to_string(r.op_index);
    out += ',';
    out += to_string(r.engine);
    out += ',';
    out += to_string(r.op_kind);
    out += ',';
    out += seconds;
    out += ',';
    out += std::to_string(r.n_resources);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path) {
  write_file(path, format_csv(records));
}

WorkloadSpec workload_from_json(const nlohmann::json& document) {
  if (!document.is_object()) invalid("workload envelope must be a JSON object");
  WorkloadSpec spec;
  if (document.contains("resources")) spec.source = collection_from_json(document);

  auto it = document.find("workload");
  if (it == document.end()) return spec;
  const auto& w = *it;
  if (!w.is_object()) invalid("\"workload\" must be an object");

  auto count = [&](const nlohmann::json& obj, const char* key, std::size_t& field) {
    if (auto f = obj.find(key); f != obj.end()) {
      if (!f->is_number_unsigned()) invalid(std::string("workload field '") + key + "' must be a nonnegative integer");
      field = f->get<std::size_t>();
    }
  };
  auto ratio = [&](const nlohmann::json& obj, const char* key, double& field) {
    if (auto f = obj.find(key); f != obj.end()) {
      if (!f->is_number()) invalid(std::string("workload field '") + key + "' must be a number");
      field = f->get<double>();
    }
  };

  count(w, "insertion_round_size", spec.insertion_round_size);
  ratio(w, "browse_factor", spec.browse_factor);
  ratio(w, "reconfig_factor", spec.reconfig_factor);
  if (auto f = w.find("seed"); f != w.end()) {
    if (!f->is_number_unsigned()) invalid("workload field 'seed' must be a nonnegative integer");
    spec.seed = f->get<std::uint64_t>();
  }
  if (auto s = w.find("synthetic"); s != w.end()) {
    if (!s->is_object()) invalid("\"workload.synthetic\" must be an object");
    count(*s, "resource_count", spec.synthetic.resource_count);
    count(*s, "vocabulary_size", spec.synthetic.vocabulary_size);
    count(*s, "min_tags", spec.synthetic.min_tags);
    count(*s, "max_tags", spec.synthetic.max_tags);
    count(*s, "category_count", spec.synthetic.category_count);
    ratio(*s, "zipf_exponent", spec.synthetic.zipf_exponent);
  }
  validate(spec);
  return spec;
}

}  // namespace tagnav
