#include <doctest.h>

#include <random>
#include <sstream>

#include "oracle.hpp"
#include "tagnav/dfa.hpp"
#include "tagnav/error.hpp"
#include "tagnav/nd_automaton.hpp"

using namespace tagnav;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::EngineFailure;
}

// Random feasible walk of up to `depth` selections; returns the tags chosen.
std::vector<TagId> walk(NdAutomaton& nd, std::mt19937_64& rng, std::size_t depth) {
  std::vector<TagId> chosen;
  Frontier f = nd.initial_frontier();
  for (std::size_t d = 0; d < depth; ++d) {
    auto cloud = nd.cloud(f);
    if (cloud.empty()) break;
    TagId t = cloud.entries()[rng() % cloud.size()].tag;
    chosen.push_back(t);
    f = nd.select(f, t);
  }
  return chosen;
}

}  // namespace

TEST_CASE("fig1 walkthrough") {
  Collection c = oracle::fig1().build();
  NdAutomaton nd(c);
  CHECK(nd.node_count() == 1);
  CHECK(nd.revision() == 0);
  nd.check_invariants();

  Frontier f = nd.initial_frontier();
  CHECK(nd.members(f) == c.keys());
  CHECK(nd.cloud(f) == c.root_cloud());

  f = nd.select(f, oracle::tag(c, "Prehistoric"));
  CHECK(nd.node_count() == 3);
  CHECK(nd.node(nd.root()).pivot == oracle::tag(c, "Prehistoric"));
  CHECK(oracle::ids_of(c, nd.members(f)) == oracle::Ids{"R1", "R2", "R3"});
  CHECK(oracle::labels_of(c, nd.cloud(f)) ==
        std::map<std::string, std::uint32_t>{
            {"Cave-Painting", 2}, {"Cantabrian", 2}, {"Levant", 1}, {"Megalithic", 1}});

  Frontier g = nd.select(f, oracle::tag(c, "Cantabrian"));
  CHECK(oracle::ids_of(c, nd.members(g)) == oracle::Ids{"R1", "R3"});
  CHECK(code_of([&] { nd.select(g, oracle::tag(c, "Prehistoric")); }) == ErrorCode::InfeasibleTag);
  CHECK(code_of([&] { nd.select(g, oracle::tag(c, "Punic")); }) == ErrorCode::InfeasibleTag);
  nd.check_invariants();

  SUBCASE("insertion routes down existing splits") {
    auto r7 = c.add_resource("R7", {"Prehistoric", "Plateau"});
    nd.insert(r7, c.tags(r7));
    CHECK(nd.revision() == 1);
    const auto& in = nd.node(nd.node(nd.root()).child_in);
    CHECK(in.members.size() == 4);
    CHECK(in.count(oracle::tag(c, "Plateau")) == 1);
    nd.check_invariants();
    CHECK(code_of([&] { nd.insert(r7, c.tags(r7)); }) == ErrorCode::DuplicateResource);
  }

  SUBCASE("removing R3 keeps Cantabrian selectable down to R1") {
    nd.remove(*c.find("R3"));
    c.remove_resource("R3");
    nd.check_invariants();
    Frontier h = nd.select(nd.select(nd.initial_frontier(), oracle::tag(c, "Prehistoric")),
                           oracle::tag(c, "Cantabrian"));
    CHECK(oracle::ids_of(c, nd.members(h)) == oracle::Ids{"R1"});
    CHECK(code_of([&] { nd.remove(ResourceKey{2}); }) == ErrorCode::UnknownResource);
  }

  SUBCASE("a split left with an empty side collapses") {
    // The Cantabrian split under Prehistoric has {R2} on its out side.
    const auto before = nd.node_count();
    nd.remove(*c.find("R2"));
    CHECK(nd.node_count() == before - 2);
    nd.check_invariants();
  }
}

TEST_CASE("empty automaton") {
  NdAutomaton nd;
  CHECK(code_of([&] { nd.initial_frontier(); }) == ErrorCode::EmptyCollection);
  CHECK(nd.node_count() == 1);
  nd.check_invariants();
}

TEST_CASE("property: selections agree with the conjunctive query") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 100; ++round) {
    auto toy = oracle::random_toy(rng, 30, 8);
    Collection c = toy.build();
    NdAutomaton nd(c);
    for (int w = 0; w < 20; ++w) {
      Frontier f = nd.initial_frontier();
      std::vector<std::string> labels;
      for (;;) {
        auto ids = oracle::ids_of(c, nd.members(f));
        REQUIRE(ids == oracle::conjunctive(toy, labels));
        REQUIRE(oracle::labels_of(c, nd.cloud(f)) == oracle::induced_cloud(toy, ids));
        auto cloud = nd.cloud(f);
        if (cloud.empty()) break;
        TagId t = cloud.entries()[rng() % cloud.size()].tag;
        labels.push_back(c.vocabulary().label(t));
        f = nd.select(f, t);
      }
    }
    nd.check_invariants();
    CHECK(nd.node_count() <= 2 * c.size() - 1);
  }
}

TEST_CASE("adversarial family stays within the laminar bound") {
  Collection c = adversarial(10);
  NdAutomaton nd(c);
  std::mt19937_64 rng(99);
  std::vector<std::vector<TagId>> walks;
  for (int i = 0; i < 1000; ++i) walks.push_back(walk(nd, rng, 10));
  CHECK(nd.node_count() <= 19);
  nd.check_invariants();

  // Splits are memoized: replaying every walk creates nothing.
  const auto nodes = nd.node_count();
  for (const auto& tags : walks) {
    Frontier f = nd.initial_frontier();
    for (TagId t : tags) f = nd.select(f, t);
  }
  CHECK(nd.node_count() == nodes);
}

TEST_CASE("property: invariants survive interleaved insert, remove and select") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 30; ++round) {
    Collection c;
    NdAutomaton nd;
    int next_id = 0;
    for (int step = 0; step < 150; ++step) {
      const auto action = rng() % 4;
      if (action == 0 && c.size() > 1) {
        auto keys = c.keys();
        auto victim = keys[rng() % keys.size()];
        nd.remove(victim);
        c.remove_resource(c.resource(victim).id);
      } else if (action == 1 && !c.empty()) {
        walk(nd, rng, 4);
      } else {
        std::vector<std::string> tags;
        for (int k = 0; k < 6; ++k) {
          if (rng() % 3 == 0) tags.push_back("t" + std::to_string(k));
        }
        auto key = c.add_resource("r" + std::to_string(next_id++), tags);
        nd.insert(key, c.tags(key));
      }
      nd.check_invariants();
      REQUIRE(nd.resource_count() == c.size());
      if (!c.empty()) {
        REQUIRE(nd.cloud(nd.initial_frontier()) == c.root_cloud());
      }
    }
  }
}

TEST_CASE("tree export") {
  Collection c = oracle::fig1().build();
  NdAutomaton nd(c);
  nd.select(nd.initial_frontier(), oracle::tag(c, "Prehistoric"));
  std::ostringstream out;
  nd.export_tree(out, c.vocabulary());
  CHECK(out.str() == "6\tPrehistoric\n  3\n  3\n");
}
