#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "tagnav/core/collection.hpp"
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

ResourceSet keys_for(const Collection& c, std::initializer_list<const char*> ids) {
  ResourceSet out;
  for (const char* id : ids) out.push_back(*c.find(id));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("tag labels are NFC-normalized and compared exactly") {
  // "é" precomposed vs. "e" + combining acute.
  CHECK(Tag::make("caf\xC3\xA9") == Tag::make("cafe\xCC\x81"));
  CHECK(Tag::make("cafe\xCC\x81").label() == "caf\xC3\xA9");
  CHECK_FALSE(Tag::make("Levant") == Tag::make("levant"));
  CHECK(code_of([] { Tag::make(""); }) == ErrorCode::InvalidTag);
  CHECK(code_of([] { Tag::make("\xC3"); }) == ErrorCode::InvalidTag);

  Collection c;
  c.add_resource("a", {"cafe\xCC\x81"});
  c.add_resource("b", {"caf\xC3\xA9", "x"});
  CHECK(c.tag_count() == 2);
  CHECK(c.presence(*c.find_tag("caf\xC3\xA9")) == 2);
}

TEST_CASE("add_resource") {
  Collection c;
  SUBCASE("first fig1 resource") {
    c.add_resource("Resource 1", {"Cave-Painting", "Cantabrian", "Prehistoric"});
    CHECK(c.size() == 1);
    CHECK(c.cloud().size() == 3);
  }
  SUBCASE("empty tag set leaves the cloud alone") {
    c.add_resource("a", {"x"});
    auto before = c.cloud();
    c.add_resource("b", std::initializer_list<std::string_view>{});
    CHECK(c.size() == 2);
    CHECK(c.cloud() == before);
  }
  SUBCASE("all six fig1 resources give 11 distinct tags") {
    c = oracle::fig1().build();
    CHECK(c.size() == 6);
    CHECK(c.tag_count() == 11);
    CHECK(c.cloud().size() == 11);
  }
  SUBCASE("duplicate tags on one resource collapse") {
    c.add_resource("a", {"x", "x", "y"});
    CHECK(c.tags(*c.find("a")).size() == 2);
    CHECK(c.presence(*c.find_tag("x")) == 1);
  }
  SUBCASE("errors") {
    c.add_resource("a", {"x"});
    CHECK(code_of([&] { c.add_resource("a", {"y"}); }) == ErrorCode::DuplicateResource);
    CHECK(code_of([&] { c.add_resource("", {"y"}); }) == ErrorCode::EmptyId);
    CHECK(code_of([&] { c.add_resource("  \t", {"y"}); }) == ErrorCode::EmptyId);
    const auto rev = c.revision();
    CHECK(code_of([&] { c.add_resource("b", {"ok", ""}); }) == ErrorCode::InvalidTag);
    CHECK(c.revision() == rev);
    CHECK(!c.find("b"));
    CHECK(!c.find_tag("ok"));
  }
}

TEST_CASE("remove_resource") {
  Collection c = oracle::fig1().build();
  SUBCASE("Megalithic leaves with R3") {
    REQUIRE(c.find_tag("Megalithic"));
    c.remove_resource("R3");
    CHECK(!c.find_tag("Megalithic"));
    CHECK(c.tag_count() == 10);
    CHECK(c.presence(oracle::tag(c, "Cantabrian")) == 1);
  }
  SUBCASE("remove then re-add restores the cloud") {
    auto labels = oracle::labels_of(c, c.cloud());
    c.remove_resource("R3");
    c.add_resource("R3", {"Megalithic", "Cantabrian", "Prehistoric"});
    CHECK(oracle::labels_of(c, c.cloud()) == labels);
    // The re-added resource now sorts last in insertion order.
    CHECK(c.resource(c.keys().back()).id == "R3");
  }
  SUBCASE("unknown resource") {
    Collection empty;
    CHECK(code_of([&] { empty.remove_resource("R1"); }) == ErrorCode::UnknownResource);
  }
}

TEST_CASE("induced_cloud on fig1") {
  const auto toy = oracle::fig1();
  Collection c = toy.build();

  SUBCASE("full scope keeps all 11 tags") {
    auto cloud = c.induced_cloud(c.keys());
    CHECK(cloud.size() == 11);
    CHECK(oracle::labels_of(c, cloud) == oracle::induced_cloud(toy, toy.all()));
    CHECK(cloud == c.root_cloud());
  }
  SUBCASE("{R1,R2,R3} drops Prehistoric") {
    auto cloud = oracle::labels_of(c, c.induced_cloud(keys_for(c, {"R1", "R2", "R3"})));
    std::map<std::string, std::uint32_t> expected{
        {"Cave-Painting", 2}, {"Cantabrian", 2}, {"Levant", 1}, {"Megalithic", 1}};
    CHECK(cloud == expected);
  }
  SUBCASE("singleton scope is empty") { CHECK(c.induced_cloud(keys_for(c, {"R1"})).empty()); }
  SUBCASE("errors") {
    CHECK(code_of([&] { c.induced_cloud({}); }) == ErrorCode::EmptyScope);
    ResourceSet bogus{ResourceKey{999}};
    CHECK(code_of([&] { c.induced_cloud(bogus); }) == ErrorCode::UnknownResource);
  }
}

TEST_CASE("a tag on every resource stays out of the root cloud") {
  Collection c;
  c.add_resource("a", {"common", "x"});
  c.add_resource("b", {"common"});
  CHECK(c.cloud().size() == 2);
  auto root = oracle::labels_of(c, c.root_cloud());
  CHECK(root == std::map<std::string, std::uint32_t>{{"x", 1}});
}

TEST_CASE("property: induced cloud matches its definition on random collections") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    auto toy = oracle::random_toy(rng, 20, 8);
    Collection c = toy.build();
    auto keys = c.keys();
    std::uniform_int_distribution<std::uint64_t> mask_dist(1, (1ULL << keys.size()) - 1);
    const auto mask = mask_dist(rng);
    ResourceSet scope;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (mask >> i & 1) scope.push_back(keys[i]);
    }
    auto cloud = c.induced_cloud(scope);
    REQUIRE(oracle::labels_of(c, cloud) == oracle::induced_cloud(toy, oracle::ids_of(c, scope)));
    // Selecting any cloud tag narrows to a nonempty strict subset.
    for (const auto& e : cloud.entries()) {
      std::size_t hits = 0;
      for (auto key : scope) hits += std::binary_search(c.tags(key).begin(), c.tags(key).end(), e.tag);
      CHECK(hits > 0);
      CHECK(hits < scope.size());
    }
  }
}

TEST_CASE("cloud emergence under random mutation") {
  std::mt19937_64 rng(11);
  Collection c;
  oracle::Toy mirror;
  std::uint64_t last_revision = c.revision();
  for (int step = 0; step < 400; ++step) {
    if (!mirror.resources.empty() && rng() % 3 == 0) {
      auto victim = rng() % mirror.resources.size();
      c.remove_resource(mirror.resources[victim].first);
      mirror.resources.erase(mirror.resources.begin() + static_cast<std::ptrdiff_t>(victim));
    } else {
      oracle::Labels tags;
      for (int k = 0; k < 4; ++k) {
        if (rng() % 2) tags.insert("t" + std::to_string(rng() % 10));
      }
      std::string id = "r" + std::to_string(step);
      c.add_resource(id, std::vector<std::string>(tags.begin(), tags.end()));
      mirror.resources.emplace_back(id, tags);
    }
    CHECK(c.revision() > last_revision);
    last_revision = c.revision();

    std::map<std::string, std::uint32_t> expected;
    for (const auto& tag : mirror.vocabulary()) {
      expected[tag] = static_cast<std::uint32_t>(oracle::extent(mirror, tag).size());
    }
    REQUIRE(oracle::labels_of(c, c.cloud()) == expected);
    CHECK(c.tag_count() == expected.size());
  }
}

TEST_CASE("category tree") {
  Collection c = oracle::fig1().build();
  auto period = c.add_category(c.categories().root(), "Period");
  auto style = c.add_category(c.categories().root(), "Style");
  auto sub = c.add_category(period, "Ancient");
  c.assign_category(period, "Prehistoric");
  c.assign_category(style, "Cave-Painting");

  SUBCASE("move Period under Style leaves browsing untouched") {
    const auto rev = c.revision();
    const auto scope = keys_for(c, {"R1", "R2", "R3"});
    const auto before = c.induced_cloud(scope);
    c.move_category(period, style);
    CHECK(c.revision() > rev);
    CHECK(c.categories().node(period).parent == style);
    CHECK(c.categories().path(sub) == "root/Style/Period/Ancient");
    CHECK(c.induced_cloud(scope) == before);
    CHECK(c.root_cloud().size() == 11);
  }
  SUBCASE("moving beneath oneself is a cycle") {
    CHECK(code_of([&] { c.move_category(period, sub); }) == ErrorCode::CycleError);
    CHECK(code_of([&] { c.move_category(period, period); }) == ErrorCode::CycleError);
    CHECK(code_of([&] { c.move_category(c.categories().root(), style); }) == ErrorCode::CycleError);
  }
  SUBCASE("unknown nodes") {
    CHECK(code_of([&] { c.move_category(CategoryId{77}, style); }) == ErrorCode::UnknownNode);
    CHECK(code_of([&] { c.move_category(style, CategoryId{77}); }) == ErrorCode::UnknownNode);
  }
  SUBCASE("a tag sits in at most one category") {
    CHECK(code_of([&] { c.assign_category(style, "Prehistoric"); }) == ErrorCode::CategoryConflict);
    CHECK(code_of([&] { c.assign_category(style, "Nope"); }) == ErrorCode::UnknownCategoryTag);
  }
  SUBCASE("moving the category holding Prehistoric regroups without changing membership") {
    auto cloud = c.root_cloud();
    auto before = group_cloud(c.categories(), cloud);
    c.move_category(period, style);
    auto after = group_cloud(c.categories(), cloud);

    auto members = [](const std::vector<CloudGroup>& groups) {
      std::vector<CloudEntry> all;
      for (const auto& g : groups) all.insert(all.end(), g.cloud.entries().begin(), g.cloud.entries().end());
      std::sort(all.begin(), all.end(), [](const CloudEntry& a, const CloudEntry& b) { return a.tag < b.tag; });
      return all;
    };
    CHECK(members(before) == members(after));
    CHECK(members(after) == cloud.entries());
    // Preorder changed: Style now precedes Period.
    REQUIRE(before.size() == 3);
    REQUIRE(after.size() == 3);
    CHECK(before[0].category == period);
    CHECK(after[0].category == style);
    CHECK(after[1].category == period);
    CHECK(!after[2].category);  // uncategorized bucket last
  }
}
