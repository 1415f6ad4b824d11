#include "tagnav/dfa.hpp"

#include <algorithm>
#include <deque>
#include <ostream>

#include "tagnav/error.hpp"

namespace tagnav {

std::size_t Dfa::SetHash::operator()(const ResourceSet& set) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (ResourceKey key : set) {
    h ^= index_of(key);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

Dfa Dfa::build(const Collection& collection, std::size_t state_limit) {
  if (collection.empty()) throw Error(ErrorCode::EmptyCollection, "cannot build an automaton over no resources");
  if (state_limit == 0) throw Error(ErrorCode::InvalidArgument, "state limit must be positive");

  Dfa dfa;
  dfa.states_.push_back(NavState{collection.keys(), {}});
  dfa.index_.emplace(dfa.states_.front().resources, StateId{0});

  std::vector<ResourceSet> buckets(collection.vocabulary().size());
  std::vector<TagId> touched;
  std::deque<std::uint32_t> queue{0};

  while (!queue.empty()) {
    const std::uint32_t current = queue.front();
    queue.pop_front();

    // Bucket the state's members by tag: bucket[t] = label ∩ extent(t).
    touched.clear();
    for (ResourceKey key : dfa.states_[current].resources) {
      for (TagId t : collection.tags(key)) {
        auto& bucket = buckets[index_of(t)];
        if (bucket.empty()) touched.push_back(t);
        bucket.push_back(key);
      }
    }
    std::sort(touched.begin(), touched.end());

    const std::size_t label_size = dfa.states_[current].resources.size();
    std::vector<std::pair<TagId, StateId>> out;
    for (TagId t : touched) {
      auto& bucket = buckets[index_of(t)];
      if (bucket.size() < label_size) {
        auto it = dfa.index_.find(bucket);
        StateId target;
        if (it != dfa.index_.end()) {
          target = it->second;
        } else {
          if (dfa.states_.size() >= state_limit) {
            throw Error(ErrorCode::StateLimitExceeded,
                        "navigation automaton exceeds " + std::to_string(state_limit) + " states");
          }
          target = StateId{static_cast<std::uint32_t>(dfa.states_.size())};
          dfa.index_.emplace(bucket, target);
          dfa.states_.push_back(NavState{bucket, {}});
          queue.push_back(static_cast<std::uint32_t>(target));
        }
        out.emplace_back(t, target);
      }
      bucket.clear();
    }
    dfa.states_[current].out = std::move(out);
  }
  return dfa;
}

std::size_t Dfa::count_transitions() const noexcept {
  std::size_t total = 0;
  for (const auto& s : states_) total += s.out.size();
  return total;
}

StateId Dfa::select(StateId from, TagId tag) const {
  const auto& out = state(from).out;
  auto it = std::lower_bound(out.begin(), out.end(), tag,
                             [](const std::pair<TagId, StateId>& e, TagId t) { return e.first < t; });
  if (it == out.end() || it->first != tag) {
    throw Error(ErrorCode::InfeasibleTag, "tag does not narrow the current state");
  }
  return it->second;
}

void Dfa::export_transitions(std::ostream& out, const Vocabulary& vocabulary) const {
  for (std::uint32_t id = 0; id < states_.size(); ++id) {
    for (const auto& [tag, target] : states_[id].out) {
      out << id << '\t' << vocabulary.label(tag) << '\t' << static_cast<std::uint32_t>(target) << '\n';
    }
  }
}

Collection adversarial(std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "adversarial family needs n >= 2");
  Collection c;
  for (std::size_t r = 1; r <= n; ++r) {
    std::vector<std::string> tags;
    tags.reserve(n - 1);
    for (std::size_t t = 1; t <= n; ++t) {
      if (t != r) tags.push_back("t" + std::to_string(t));
    }
    c.add_resource("r" + std::to_string(r), tags);
  }
  return c;
}

}  // namespace tagnav
