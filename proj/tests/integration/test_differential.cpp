#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "tagnav/dfa.hpp"
#include "tagnav/engine.hpp"
#include "tagnav/inverted_index.hpp"
#include "tagnav/nd_automaton.hpp"

using namespace tagnav;

namespace {

// Walks every feasible tag sequence up to `depth` from the DFA state and the
// automaton frontier at once, checking both against the conjunctive query.
void explore(const Collection& c, const Dfa& dfa, NdAutomaton& nd, const InvertedIndex& index, StateId state,
             const Frontier& frontier, std::vector<TagId>& selected, std::size_t depth) {
  const auto expected = index.conjunctive(selected);
  REQUIRE(dfa.state(state).resources == expected);
  REQUIRE(nd.members(frontier) == expected);
  const auto cloud = nd.cloud(frontier);
  REQUIRE(cloud == c.induced_cloud(expected));
  REQUIRE(dfa.state(state).out.size() == cloud.size());
  if (depth == 0) return;
  for (const auto& [tag, next] : dfa.state(state).out) {
    selected.push_back(tag);
    explore(c, dfa, nd, index, next, nd.select(frontier, tag), selected, depth - 1);
    selected.pop_back();
  }
}

}  // namespace

TEST_CASE("automaton, DFA and conjunctive query agree on random collections") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 60; ++round) {
    Collection c = oracle::random_toy(rng, 24, 9).build();
    auto dfa = Dfa::build(c);
    NdAutomaton nd(c);
    auto index = InvertedIndex::build(c);
    std::vector<TagId> selected;
    explore(c, dfa, nd, index, dfa.initial(), nd.initial_frontier(), selected, 4);
    nd.check_invariants();
  }
}

TEST_CASE("engines agree through interleaved mutation") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 20; ++round) {
    Collection c;
    auto automaton = make_engine(EngineKind::Automaton, c);
    auto inverted = make_engine(EngineKind::Inverted, c);
    int next = 0;
    for (int step = 0; step < 120; ++step) {
      if (c.size() > 2 && rng() % 4 == 0) {
        auto keys = c.keys();
        auto key = keys[rng() % keys.size()];
        std::vector<TagId> tags(c.tags(key).begin(), c.tags(key).end());
        automaton->remove(key, tags);
        inverted->remove(key, tags);
        c.remove_resource(c.resource(key).id);
      } else {
        std::vector<std::string> labels;
        for (int k = 0; k < 7; ++k) {
          if (rng() % 3 == 0) labels.push_back("t" + std::to_string(k));
        }
        auto key = c.add_resource("r" + std::to_string(next++), labels);
        automaton->insert(key, c.tags(key));
        inverted->insert(key, c.tags(key));
      }

      // One random walk per step, in lockstep.
      BrowseState a = automaton->initial();
      BrowseState b = inverted->initial();
      for (;;) {
        REQUIRE(a.cloud == b.cloud);
        REQUIRE(automaton->resources(a) == inverted->resources(b));
        REQUIRE(a.size == b.size);
        if (a.cloud.empty()) break;
        TagId t = a.cloud.entries()[rng() % a.cloud.size()].tag;
        a = automaton->select(a, t);
        b = inverted->select(b, t);
      }
    }
  }
}
