#pragma once

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tagnav/core/collection.hpp"
#include "tagnav/core/resource_set.hpp"

namespace tagnav {

enum class StateId : std::uint32_t {};

struct NavState {
  ResourceSet resources;
  /// Outgoing transitions sorted by tag. Keys are exactly the induced cloud of
  /// `resources`.
  std::vector<std::pair<TagId, StateId>> out;
};

inline constexpr std::size_t kDefaultStateLimit = 100'000;

// Explicit deterministic navigation automaton: one state per reachable
// resource set, hash-consed so equal labels share a state. Exponential in the
// worst case; it exists to validate the production engine on small inputs.
class Dfa {
 public:
  /// Breadth-first closure from the full resource set. Throws EmptyCollection,
  /// InvalidArgument (state_limit == 0) and StateLimitExceeded.
  static Dfa build(const Collection& collection, std::size_t state_limit = kDefaultStateLimit);

  StateId initial() const noexcept { return StateId{0}; }
  const NavState& state(StateId id) const { return states_.at(static_cast<std::uint32_t>(id)); }
  std::size_t count_states() const noexcept { return states_.size(); }
  std::size_t count_transitions() const noexcept;

  /// Throws InfeasibleTag when `tag` is not in the state's induced cloud.
  StateId select(StateId from, TagId tag) const;

  /// One line per transition: `state-id TAB tag TAB state-id`.
  void export_transitions(std::ostream& out, const Vocabulary& vocabulary) const;

 private:
  struct SetHash {
    std::size_t operator()(const ResourceSet& set) const noexcept;
  };

  std::vector<NavState> states_;
  std::unordered_map<ResourceSet, StateId, SetHash> index_;
};

/// Worst-case family: n resources r1..rn and n tags t1..tn where t_i annotates
/// every resource except r_i. Every nonempty subset is a reachable state.
/// Throws InvalidArgument for n < 2.
Collection adversarial(std::size_t n);

}  // namespace tagnav
