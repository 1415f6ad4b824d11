#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tagnav/core/collection.hpp"
#include "tagnav/engine.hpp"

namespace tagnav {

// One person's multilevel walk: a breadcrumb of selected tags and, per
// breadcrumb prefix, the state the engine produced for it. back() pops the
// stack instead of recomputing.
//
// A session pins the engine revision it was opened at. Once resources are
// added or removed every operation throws StaleSession. Category edits do
// not touch the engine and leave sessions valid.
class Session {
 public:
  /// Throws EmptyCollection.
  static Session open(const Collection& collection, BrowseEngine& engine);

  /// Throws InfeasibleTag when the tag is not in the current cloud (unknown
  /// labels included).
  void select_tag(std::string_view label);
  void select_tag(TagId tag);
  /// Throws AtRoot on an empty breadcrumb.
  void back();
  void reset();

  /// Current resources in insertion order.
  ResourceSet visit_all() const;
  std::vector<std::string> visit_ids() const;

  const std::vector<TagId>& breadcrumb() const;
  std::vector<std::string> breadcrumb_labels() const;
  const TagCloud& cloud() const;
  /// Cloud sorted by count descending, then label.
  std::vector<DisplayEntry> display_cloud() const;
  std::size_t resource_count() const;
  bool terminal() const { return cloud().empty(); }
  std::size_t depth() const noexcept { return stack_.size() - 1; }

  BrowseEngine& engine() const noexcept { return *engine_; }
  bool stale() const noexcept;

 private:
  Session(const Collection& collection, BrowseEngine& engine);
  void ensure_fresh() const;

  const Collection* collection_;
  BrowseEngine* engine_;
  std::uint64_t pinned_revision_;
  std::vector<BrowseState> stack_;
};

}  // namespace tagnav
