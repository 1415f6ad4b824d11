#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tagnav/core/collection.hpp"
#include "tagnav/engine.hpp"

namespace tagnav {

/// Parameters of the synthetic folksonomy used when no collection file is given.
struct SyntheticSpec {
  std::size_t resource_count = 5000;
  std::size_t vocabulary_size = 800;
  std::size_t min_tags = 3;
  std::size_t max_tags = 8;
  double zipf_exponent = 1.0;  // tag popularity ~ 1 / rank^exponent
  std::size_t category_count = 24;
};

struct WorkloadSpec {
  /// Resources to insert, in order. When absent a synthetic collection is
  /// generated from `synthetic` and `seed`.
  std::optional<Collection> source;
  SyntheticSpec synthetic;
  std::size_t insertion_round_size = 100;
  double browse_factor = 0.1;
  double reconfig_factor = 0.01;
  std::uint64_t seed = 42;
};

enum class OpKind : std::uint8_t { Insert, Browse, Reconfig };
std::string_view to_string(OpKind kind) noexcept;

struct Operation {
  OpKind kind;
  /// Insert: position of the resource in the source's insertion order.
  std::uint32_t resource = 0;
  /// Browse: picks the tag. Reconfig: picks the moved node and its target.
  std::uint64_t draw = 0;
  std::uint64_t draw2 = 0;

  friend bool operator==(const Operation&, const Operation&) = default;
};

/// Throws InvalidSpec for negative or non-finite factors, a zero round size,
/// or inconsistent synthetic parameters.
void validate(const WorkloadSpec& spec);

/// Seeded synthetic collection: Zipf tag popularity, a random category tree.
Collection synthesize(const SyntheticSpec& spec, std::uint64_t seed);

/// Insertion rounds of `insertion_round_size` resources (the last takes the
/// remainder), each followed by floor(browse_factor * n) browse and
/// floor(reconfig_factor * n) reconfiguration operations shuffled together,
/// n being the number inserted so far. Pure function of (spec, resource_count).
std::vector<Operation> generate_workload(const WorkloadSpec& spec, std::size_t resource_count);

struct Workload {
  Collection source;
  std::vector<Operation> operations;
};

Workload prepare_workload(const WorkloadSpec& spec);

struct BenchRecord {
  std::size_t op_index;
  EngineKind engine;
  OpKind op_kind;
  double cumulative_seconds;
  std::size_t n_resources;
};

struct RunResult {
  std::vector<BenchRecord> records;
  /// FNV-1a over every visited resource key, in visiting order.
  std::uint64_t visit_digest = 0xcbf29ce484222325ULL;
  std::size_t resets = 0;
  std::array<double, 3> seconds_by_kind{};  // indexed by OpKind
  std::size_t automaton_nodes = 0;
};

/// Timing mode: one fresh engine, no cross-checks. Throws EngineFailure.
RunResult run(const Workload& workload, EngineKind engine);
RunResult run(const WorkloadSpec& spec, EngineKind engine);

/// Validation mode: both engines in lockstep. Every browse step compares
/// resources and clouds (and the clouds against a fresh counting pass),
/// reconfigurations are checked to leave browsing untouched, and the
/// automaton's structural invariants are verified after each insertion round.
/// Returns records for both engines; throws EngineFailure on any mismatch.
RunResult run_lockstep(const Workload& workload);

/// Header `op_index,engine,op_kind,cumulative_seconds,n_resources`, seconds
/// with six fractional digits.
std::string format_csv(const std::vector<BenchRecord>& records);
/// Throws IoError.
void emit_csv(const std::vector<BenchRecord>& records, const std::filesystem::path& path);

/// Reads the optional "workload" object of a collection envelope. When the
/// document lists resources they become the source. Throws InvalidSpec or
/// any collection loading error.
WorkloadSpec workload_from_json(const nlohmann::json& document);

}  // namespace tagnav
