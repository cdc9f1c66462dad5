// Copyright 2026 The Clipnest Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CLIPNEST_MODEL_STORE_H_
#define CLIPNEST_MODEL_STORE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "clipnest/asset_store.h"
#include "clipnest/journal.h"
#include "clipnest/model.h"

namespace clipnest {

// The mutation operations on one project. Each call turns its arguments into
// a fully resolved JournalEvent (fresh ids, timestamps from the clock),
// applies it, and appends it to `journal`. Not thread-safe; ModelStore
// serialises access per project.
class ProjectEditor {
 public:
  ProjectEditor(ProjectState& state, std::vector<JournalEvent>& journal,
                Clock& clock, IdSource& ids)
      : state_(state), journal_(journal), clock_(clock), ids_(ids) {}

  const ProjectState& state() const { return state_; }

  // Only MANUAL and FOLDER cards can be created empty; the other kinds come
  // from captures. `position` defaults to the end of the sibling list.
  const Card& CreateCard(CardKind kind, std::string_view title,
                         const std::optional<CardId>& parent,
                         std::optional<std::int64_t> position = std::nullopt);

  // Inserts a fully built card (capture paths). Assigns the id and the
  // created/updated timestamps; `op` names the journal event.
  const Card& InsertCard(std::string_view op, Card card,
                         std::optional<std::int64_t> position = std::nullopt);

  void MoveCard(const CardId& id, const std::optional<CardId>& new_parent,
                std::int64_t position);
  void ReorderCard(const CardId& id, std::int64_t position);
  const Card& SetAnnotation(const CardId& id, std::string_view annotation);
  const Card& SetColor(const CardId& id, std::optional<Color> color);
  const Card& SetCollapsed(const CardId& id, bool collapsed);
  void SetPinned(bool pinned);
  // Returns the number of cards removed.
  std::size_t DeleteCard(const CardId& id);
  const Card& AttachRecognizedText(const CardId& id, std::string_view text);

 private:
  void Commit(std::string_view op, Json payload, Timestamp at);
  void Commit(std::string_view op, Json payload) {
    Commit(op, std::move(payload), clock_.Now());
  }

  ProjectState& state_;
  std::vector<JournalEvent>& journal_;
  Clock& clock_;
  IdSource& ids_;
};

// Receives every committed change, under the project's lock, before it
// becomes visible to readers. Persistence hooks in here.
class JournalSink {
 public:
  virtual ~JournalSink() = default;
  virtual void OnProjectCreated(const JournalHeader& header) = 0;
  virtual void OnCommitted(const ProjectId& project,
                           std::span<const JournalEvent> events,
                           const ProjectState& after) = 0;
};

struct ProjectListing {
  ProjectInfo info;
  std::int64_t revision = 0;
  std::size_t card_count = 0;
};

// Thread-safe registry of projects. Mutations of one project are serialised
// by a per-project lock; readers take immutable snapshots and never wait on
// a writer's work.
class ModelStore {
 public:
  ModelStore(Clock& clock, IdSource& ids, const AssetCatalog& assets)
      : clock_(clock), ids_(ids), assets_(assets) {}

  ModelStore(const ModelStore&) = delete;
  ModelStore& operator=(const ModelStore&) = delete;

  void set_sink(JournalSink* sink) { sink_ = sink; }

  // Throws kEmptyName for blank names.
  ProjectInfo CreateProject(std::string_view name);

  std::vector<ProjectListing> ListProjects() const;
  bool HasProject(const ProjectId& id) const;

  // Throws kUnknownProject.
  std::shared_ptr<const ProjectState> Snapshot(const ProjectId& id) const;
  JournalHeader Header(const ProjectId& id) const;
  std::vector<JournalEvent> Journal(const ProjectId& id) const;

  // Runs `fn(ProjectEditor&)` as one atomic commit. When `expected_revision`
  // is set and differs from the current revision, throws RevisionConflict
  // without calling `fn`. If `fn` throws, nothing is committed. Returns the
  // new revision together with fn's result.
  template <typename Fn>
  auto Edit(const ProjectId& id, std::optional<std::int64_t> expected_revision,
            Fn&& fn);

  std::string Export(const ProjectId& id) const;

  // Validates `document` (see ParseSnapshot) and registers it as a new
  // project with a fresh id and revision 0. The journal records the
  // document's hash as its base; storing the document bytes is the caller's
  // business.
  ProjectInfo Import(std::string_view document);

  // Re-registers a project recovered from disk.
  void Restore(JournalHeader header, ProjectState state,
               std::vector<JournalEvent> journal);

  Clock& clock() { return clock_; }
  IdSource& ids() { return ids_; }
  const AssetCatalog& assets() const { return assets_; }

 private:
  struct Record {
    std::mutex write_mu;
    JournalHeader header;
    std::vector<JournalEvent> journal;  // guarded by write_mu
    mutable std::mutex publish_mu;
    std::shared_ptr<const ProjectState> state;  // guarded by publish_mu

    std::shared_ptr<const ProjectState> Load() const {
      std::lock_guard lock(publish_mu);
      return state;
    }
  };

  std::shared_ptr<Record> Find(const ProjectId& id) const;
  void Register(std::shared_ptr<Record> record);

  Clock& clock_;
  IdSource& ids_;
  const AssetCatalog& assets_;
  JournalSink* sink_ = nullptr;
  mutable std::shared_mutex mu_;
  std::map<ProjectId, std::shared_ptr<Record>> projects_;
};

template <typename Fn>
auto ModelStore::Edit(const ProjectId& id,
                      std::optional<std::int64_t> expected_revision, Fn&& fn) {
  std::shared_ptr<Record> record = Find(id);
  std::lock_guard write_lock(record->write_mu);
  std::shared_ptr<const ProjectState> current = record->Load();
  if (expected_revision && *expected_revision != current->revision()) {
    throw Error::RevisionConflict(current->revision());
  }

  auto next = std::make_shared<ProjectState>(*current);
  std::vector<JournalEvent> events;
  ProjectEditor editor(*next, events, clock_, ids_);
  using Result = std::remove_cvref_t<std::invoke_result_t<Fn&, ProjectEditor&>>;

  auto commit = [&] {
    if (events.empty()) return;
    if (sink_) sink_->OnCommitted(id, events, *next);
    record->journal.insert(record->journal.end(), events.begin(), events.end());
    std::lock_guard publish_lock(record->publish_mu);
    record->state = std::move(next);
  };
  if constexpr (std::is_void_v<Result>) {
    fn(editor);
    const std::int64_t revision = next->revision();
    commit();
    return revision;
  } else {
    Result result = fn(editor);
    const std::int64_t revision = next->revision();
    commit();
    return std::pair<std::int64_t, Result>(revision, std::move(result));
  }
}

}  // namespace clipnest

#endif  // CLIPNEST_MODEL_STORE_H_
