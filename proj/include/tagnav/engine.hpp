#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "tagnav/core/collection.hpp"
#include "tagnav/inverted_index.hpp"
#include "tagnav/nd_automaton.hpp"

namespace tagnav {

/// One interaction state as an engine represents it: a materialized resource
/// set for the inverted baseline, a frontier for the automaton.
struct BrowseState {
  std::vector<TagId> selected;
  std::variant<ResourceSet, Frontier> active;
  std::size_t size = 0;
  TagCloud cloud;
};

enum class EngineKind { Automaton, Inverted };

std::string_view to_string(EngineKind kind) noexcept;
/// Accepts "automaton" and "inverted"; throws InvalidArgument otherwise.
EngineKind parse_engine_kind(std::string_view name);

// Common surface of the two browsing engines. The owner keeps the engine in
// step with its Collection: every add/remove on one is mirrored on the other.
class BrowseEngine {
 public:
  virtual ~BrowseEngine() = default;

  virtual EngineKind kind() const noexcept = 0;
  /// Changes whenever the indexed resources change.
  virtual std::uint64_t revision() const noexcept = 0;
  virtual std::size_t resource_count() const noexcept = 0;

  virtual void insert(ResourceKey key, std::span<const TagId> tags) = 0;
  virtual void remove(ResourceKey key, std::span<const TagId> tags) = 0;

  /// Throws EmptyCollection.
  virtual BrowseState initial() = 0;
  /// Throws InfeasibleTag.
  virtual BrowseState select(const BrowseState& from, TagId tag) = 0;
  virtual ResourceSet resources(const BrowseState& state) const = 0;
};

// Baseline: every step re-evaluates the conjunctive query for the whole
// breadcrumb and recounts the induced cloud. Holds a reference to the
// collection for the counting pass; the collection must outlive it.
class InvertedEngine final : public BrowseEngine {
 public:
  explicit InvertedEngine(const Collection& collection);

  EngineKind kind() const noexcept override { return EngineKind::Inverted; }
  std::uint64_t revision() const noexcept override { return revision_; }
  std::size_t resource_count() const noexcept override { return index_.doc_count(); }
  void insert(ResourceKey key, std::span<const TagId> tags) override;
  void remove(ResourceKey key, std::span<const TagId> tags) override;
  BrowseState initial() override;
  BrowseState select(const BrowseState& from, TagId tag) override;
  ResourceSet resources(const BrowseState& state) const override;

  const InvertedIndex& index() const noexcept { return index_; }

 private:
  const Collection* collection_;
  InvertedIndex index_;
  std::uint64_t revision_ = 0;
};

class AutomatonEngine final : public BrowseEngine {
 public:
  explicit AutomatonEngine(const Collection& collection);

  EngineKind kind() const noexcept override { return EngineKind::Automaton; }
  std::uint64_t revision() const noexcept override { return automaton_.revision(); }
  std::size_t resource_count() const noexcept override { return automaton_.resource_count(); }
  void insert(ResourceKey key, std::span<const TagId> tags) override;
  void remove(ResourceKey key, std::span<const TagId> tags) override;
  BrowseState initial() override;
  BrowseState select(const BrowseState& from, TagId tag) override;
  ResourceSet resources(const BrowseState& state) const override;

  const NdAutomaton& automaton() const noexcept { return automaton_; }

 private:
  NdAutomaton automaton_;
};

std::unique_ptr<BrowseEngine> make_engine(EngineKind kind, const Collection& collection);

}  // namespace tagnav
