#include "tagnav/session.hpp"

#include "tagnav/error.hpp"

namespace tagnav {

Session::Session(const Collection& collection, BrowseEngine& engine)
    : collection_(&collection), engine_(&engine), pinned_revision_(engine.revision()) {
  stack_.push_back(engine.initial());
}

Session Session::open(const Collection& collection, BrowseEngine& engine) { return Session(collection, engine); }

bool Session::stale() const noexcept { return engine_->revision() != pinned_revision_; }

void Session::ensure_fresh() const {
  if (stale()) throw Error(ErrorCode::StaleSession, "collection changed since the session was opened");
}

void Session::select_tag(std::string_view label) {
  ensure_fresh();
  auto tag = collection_->find_tag(label);
  if (!tag || !cloud().contains(*tag)) {
    throw Error(ErrorCode::InfeasibleTag, "tag '" + std::string(label) + "' does not narrow the current selection");
  }
  stack_.push_back(engine_->select(stack_.back(), *tag));
}

void Session::select_tag(TagId tag) {
  ensure_fresh();
  stack_.push_back(engine_->select(stack_.back(), tag));
}

void Session::back() {
  ensure_fresh();
  if (stack_.size() == 1) throw Error(ErrorCode::AtRoot, "nothing selected");
  stack_.pop_back();
}

void Session::reset() {
  ensure_fresh();
  stack_.resize(1);
}

ResourceSet Session::visit_all() const {
  ensure_fresh();
  return engine_->resources(stack_.back());
}

std::vector<std::string> Session::visit_ids() const {
  std::vector<std::string> ids;
  for (ResourceKey key : visit_all()) ids.push_back(collection_->resource(key).id);
  return ids;
}

const std::vector<TagId>& Session::breadcrumb() const { return stack_.back().selected; }

std::vector<std::string> Session::breadcrumb_labels() const {
  std::vector<std::string> labels;
  for (TagId t : breadcrumb()) labels.push_back(collection_->vocabulary().label(t));
  return labels;
}

const TagCloud& Session::cloud() const { return stack_.back().cloud; }

std::vector<DisplayEntry> Session::display_cloud() const { return display_order(cloud(), collection_->vocabulary()); }

std::size_t Session::resource_count() const { return stack_.back().size; }

}  // namespace tagnav
