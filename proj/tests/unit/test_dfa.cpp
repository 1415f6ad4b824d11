#include <doctest.h>

#include <random>
#include <sstream>

#include "oracle.hpp"
#include "tagnav/dfa.hpp"
#include "tagnav/error.hpp"

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

}  // namespace

TEST_CASE("fig1 automaton") {
  const auto toy = oracle::fig1();
  Collection c = toy.build();
  auto dfa = Dfa::build(c);

  CHECK(dfa.state(dfa.initial()).out.size() == 11);
  CHECK(dfa.state(dfa.initial()).resources == c.keys());

  auto s = dfa.select(dfa.initial(), oracle::tag(c, "Prehistoric"));
  CHECK(oracle::ids_of(c, dfa.state(s).resources) == oracle::Ids{"R1", "R2", "R3"});
  s = dfa.select(s, oracle::tag(c, "Cantabrian"));
  CHECK(oracle::ids_of(c, dfa.state(s).resources) == oracle::Ids{"R1", "R3"});
  // Reached directly from the root as well: both paths land on one state.
  CHECK(dfa.select(dfa.initial(), oracle::tag(c, "Cantabrian")) == s);
  CHECK(code_of([&] { dfa.select(s, oracle::tag(c, "Prehistoric")); }) == ErrorCode::InfeasibleTag);

  // Frozen values, confirmed by the closure in oracle.hpp.
  CHECK(dfa.count_states() == 12);
  CHECK(dfa.count_transitions() == 29);
  CHECK(oracle::reachable(toy).size() == 12);
  CHECK(oracle::reachable_transitions(toy) == 29);
}

TEST_CASE("every state's transitions are its induced cloud") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 60; ++round) {
    auto toy = oracle::random_toy(rng, 12, 6);
    Collection c = toy.build();
    auto dfa = Dfa::build(c);
    REQUIRE(dfa.count_states() == oracle::reachable(toy).size());
    CHECK(dfa.count_transitions() == oracle::reachable_transitions(toy));

    std::set<oracle::Ids> seen;
    for (std::uint32_t i = 0; i < dfa.count_states(); ++i) {
      const auto& state = dfa.state(StateId{i});
      auto ids = oracle::ids_of(c, state.resources);
      CHECK(seen.insert(ids).second);  // hash-consed: no duplicate labels
      auto expected = oracle::induced_cloud(toy, ids);
      REQUIRE(state.out.size() == expected.size());
      for (const auto& [tag, target] : state.out) {
        const std::string& label = c.vocabulary().label(tag);
        CHECK(expected.count(label) == 1);
        oracle::Ids narrowed;
        for (const auto& id : ids) {
          if (toy.tags_of(id).count(label)) narrowed.insert(id);
        }
        CHECK(oracle::ids_of(c, dfa.state(target).resources) == narrowed);
      }
    }
  }
}

TEST_CASE("adversarial family hits 2^n - 1 states") {
  CHECK(Dfa::build(adversarial(2)).count_states() == 3);
  CHECK(Dfa::build(adversarial(4)).count_states() == 15);
  for (std::size_t n = 2; n <= 8; ++n) {
    CHECK(Dfa::build(adversarial(n)).count_states() == (std::size_t{1} << n) - 1);
  }
  CHECK(code_of([] { Dfa::build(adversarial(10), 500); }) == ErrorCode::StateLimitExceeded);
  CHECK(code_of([] { adversarial(1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("degenerate inputs") {
  Collection single;
  single.add_resource("only", {"a", "b"});
  auto dfa = Dfa::build(single);
  CHECK(dfa.count_states() == 1);
  CHECK(dfa.count_transitions() == 0);

  CHECK(code_of([] { Dfa::build(Collection{}); }) == ErrorCode::EmptyCollection);
  CHECK(code_of([&] { Dfa::build(single, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("transition export") {
  Collection c;
  c.add_resource("a", {"x"});
  c.add_resource("b", {"y"});
  auto dfa = Dfa::build(c);
  std::ostringstream out;
  dfa.export_transitions(out, c.vocabulary());
  CHECK(out.str() == "0\tx\t1\n0\ty\t2\n");
}
