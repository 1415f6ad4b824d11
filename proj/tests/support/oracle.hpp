#pragma once

// Brute-force reference model used by the tests. It works on plain strings
// and std::set, shares no code with the library's set machinery, and answers
// every question by definition.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tagnav/core/collection.hpp"

namespace oracle {

using Labels = std::set<std::string>;
using Ids = std::set<std::string>;

struct Toy {
  std::vector<std::pair<std::string, Labels>> resources;  // insertion order

  const Labels& tags_of(const std::string& id) const {
    for (const auto& [rid, tags] : resources) {
      if (rid == id) return tags;
    }
    static const Labels none;
    return none;
  }

  Ids all() const {
    Ids out;
    for (const auto& r : resources) out.insert(r.first);
    return out;
  }

  Labels vocabulary() const {
    Labels out;
    for (const auto& r : resources) out.insert(r.second.begin(), r.second.end());
    return out;
  }

  tagnav::Collection build() const {
    tagnav::Collection c;
    for (const auto& [id, tags] : resources) {
      std::vector<std::string> labels(tags.begin(), tags.end());
      c.add_resource(id, labels);
    }
    return c;
  }
};

inline Toy fig1() {
  return Toy{{
      {"R1", {"Cave-Painting", "Cantabrian", "Prehistoric"}},
      {"R2", {"Cave-Painting", "Levant", "Prehistoric"}},
      {"R3", {"Megalithic", "Cantabrian", "Prehistoric"}},
      {"R4", {"Tartesian", "Plateau", "Protohistoric"}},
      {"R5", {"Phoenician", "Penibaetic", "Protohistoric"}},
      {"R6", {"Punic", "Levant", "Protohistoric"}},
  }};
}

inline Ids extent(const Toy& toy, const std::string& tag) {
  Ids out;
  for (const auto& [id, tags] : toy.resources) {
    if (tags.count(tag)) out.insert(id);
  }
  return out;
}

inline Ids conjunctive(const Toy& toy, const std::vector<std::string>& tags) {
  Ids out;
  for (const auto& [id, rtags] : toy.resources) {
    bool all = true;
    for (const auto& t : tags) all = all && rtags.count(t) > 0;
    if (all) out.insert(id);
  }
  return out;
}

/// Induced cloud by definition: t with 0 < |scope ∩ extent(t)| < |scope|.
inline std::map<std::string, std::uint32_t> induced_cloud(const Toy& toy, const Ids& scope) {
  std::map<std::string, std::uint32_t> out;
  for (const auto& tag : toy.vocabulary()) {
    std::uint32_t hits = 0;
    for (const auto& id : scope) hits += toy.tags_of(id).count(tag) ? 1u : 0u;
    if (hits > 0 && hits < scope.size()) out[tag] = hits;
  }
  return out;
}

/// Every resource set reachable from the full set by feasible selections,
/// explored by recursion over tag choices.
inline std::set<Ids> reachable(const Toy& toy) {
  std::set<Ids> seen;
  std::vector<Ids> work{toy.all()};
  while (!work.empty()) {
    Ids current = work.back();
    work.pop_back();
    if (!seen.insert(current).second) continue;
    for (const auto& [tag, count] : induced_cloud(toy, current)) {
      Ids next;
      for (const auto& id : current) {
        if (toy.tags_of(id).count(tag)) next.insert(id);
      }
      work.push_back(next);
    }
  }
  return seen;
}

inline std::size_t reachable_transitions(const Toy& toy) {
  std::size_t total = 0;
  for (const auto& state : reachable(toy)) total += induced_cloud(toy, state).size();
  return total;
}

/// Random collection with up to `max_resources` resources over up to
/// `max_tags` tags; each resource carries each tag with a per-collection
/// density.
inline Toy random_toy(std::mt19937_64& rng, std::size_t max_resources, std::size_t max_tags) {
  std::uniform_int_distribution<std::size_t> n_dist(1, max_resources);
  std::uniform_int_distribution<std::size_t> t_dist(1, max_tags);
  std::uniform_real_distribution<double> density_dist(0.1, 0.6);
  const std::size_t n = n_dist(rng);
  const std::size_t t = t_dist(rng);
  const double density = density_dist(rng);
  std::bernoulli_distribution has(density);
  Toy toy;
  for (std::size_t r = 0; r < n; ++r) {
    Labels tags;
    for (std::size_t k = 0; k < t; ++k) {
      if (has(rng)) tags.insert("t" + std::to_string(k));
    }
    toy.resources.emplace_back("r" + std::to_string(r), std::move(tags));
  }
  return toy;
}

// Helpers translating library values into oracle terms.

inline Ids ids_of(const tagnav::Collection& c, const tagnav::ResourceSet& set) {
  Ids out;
  for (auto key : set) out.insert(c.resource(key).id);
  return out;
}

inline std::map<std::string, std::uint32_t> labels_of(const tagnav::Collection& c, const tagnav::TagCloud& cloud) {
  std::map<std::string, std::uint32_t> out;
  for (const auto& e : cloud.entries()) out[c.vocabulary().label(e.tag)] = e.count;
  return out;
}

inline tagnav::TagId tag(const tagnav::Collection& c, const std::string& label) { return *c.find_tag(label); }

}  // namespace oracle
