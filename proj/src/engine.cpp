#include "tagnav/engine.hpp"

#include <algorithm>
#include <string>

#include "tagnav/error.hpp"

namespace tagnav {

std::string_view to_string(EngineKind kind) noexcept {
  return kind == EngineKind::Automaton ? "automaton" : "inverted";
}

EngineKind parse_engine_kind(std::string_view name) {
  if (name == "automaton") return EngineKind::Automaton;
  if (name == "inverted") return EngineKind::Inverted;
  throw Error(ErrorCode::InvalidArgument, "unknown engine '" + std::string(name) + "'");
}

InvertedEngine::InvertedEngine(const Collection& collection)
    : collection_(&collection), index_(InvertedIndex::build(collection)) {}

void InvertedEngine::insert(ResourceKey key, std::span<const TagId> tags) {
  index_.insert(key, tags);
  ++revision_;
}

void InvertedEngine::remove(ResourceKey key, std::span<const TagId> tags) {
  index_.remove(key, tags);
  ++revision_;
}

BrowseState InvertedEngine::initial() {
  if (index_.doc_count() == 0) throw Error(ErrorCode::EmptyCollection, "no resources to browse");
  BrowseStep step = browse_step(index_, {}, *collection_);
  BrowseState state;
  state.size = step.resources.size();
  state.cloud = std::move(step.cloud);
  state.active = std::move(step.resources);
  return state;
}

BrowseState InvertedEngine::select(const BrowseState& from, TagId tag) {
  if (!from.cloud.contains(tag)) throw Error(ErrorCode::InfeasibleTag, "tag does not narrow the current selection");
  BrowseState next;
  next.selected = from.selected;
  next.selected.push_back(tag);
  BrowseStep step = browse_step(index_, next.selected, *collection_);
  next.size = step.resources.size();
  next.cloud = std::move(step.cloud);
  next.active = std::move(step.resources);
  return next;
}

ResourceSet InvertedEngine::resources(const BrowseState& state) const {
  return std::get<ResourceSet>(state.active);
}

AutomatonEngine::AutomatonEngine(const Collection& collection) : automaton_(collection) {}

void AutomatonEngine::insert(ResourceKey key, std::span<const TagId> tags) { automaton_.insert(key, tags); }

void AutomatonEngine::remove(ResourceKey key, std::span<const TagId>) { automaton_.remove(key); }

BrowseState AutomatonEngine::initial() {
  BrowseState state;
  Frontier frontier = automaton_.initial_frontier();
  state.size = automaton_.member_count(frontier);
  state.cloud = automaton_.cloud(frontier);
  state.active = std::move(frontier);
  return state;
}

BrowseState AutomatonEngine::select(const BrowseState& from, TagId tag) {
  BrowseState next;
  Frontier frontier = automaton_.select(std::get<Frontier>(from.active), tag);
  next.selected = from.selected;
  next.selected.push_back(tag);
  next.size = automaton_.member_count(frontier);
  next.cloud = automaton_.cloud(frontier);
  next.active = std::move(frontier);
  return next;
}

ResourceSet AutomatonEngine::resources(const BrowseState& state) const {
  return automaton_.members(std::get<Frontier>(state.active));
}

std::unique_ptr<BrowseEngine> make_engine(EngineKind kind, const Collection& collection) {
  if (kind == EngineKind::Automaton) return std::make_unique<AutomatonEngine>(collection);
  return std::make_unique<InvertedEngine>(collection);
}

}  // namespace tagnav
