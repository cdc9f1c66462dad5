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

#include "clipnest/model_store.h"

#include "clipnest/snapshot.h"

namespace clipnest {

namespace {

Json OptionalId(const std::optional<CardId>& id) {
  return id ? Json(id->value()) : Json(nullptr);
}

}  // namespace

void ProjectEditor::Commit(std::string_view op, Json payload, Timestamp at) {
  JournalEvent event{state_.revision() + 1, std::string(op),
                     std::move(payload), at};
  ApplyEvent(state_, event);
  journal_.push_back(std::move(event));
}

const Card& ProjectEditor::CreateCard(CardKind kind, std::string_view title,
                                      const std::optional<CardId>& parent,
                                      std::optional<std::int64_t> position) {
  if (kind != CardKind::kManual && kind != CardKind::kFolder) {
    throw Error(ErrorCode::kInvalidKind,
                std::string(CardKindName(kind)) +
                    " cards are created by capture, not create_card");
  }
  Card card;
  card.kind = kind;
  card.title = std::string(title);
  card.parent_id = parent;
  return InsertCard(ops::kCreateCard, std::move(card), position);
}

const Card& ProjectEditor::InsertCard(std::string_view op, Card card,
                                      std::optional<std::int64_t> position) {
  text::RequireUtf8(card.title, "title");
  text::RequireUtf8(card.annotation, "annotation");
  const Timestamp at = clock_.Now();
  card.id = CardId(ids_.Next("c_"));
  card.created_at = at;
  card.updated_at = at;
  card.order_index = position.value_or(
      static_cast<std::int64_t>(state_.Children(card.parent_id).size()));
  const CardId id = card.id;
  Commit(op, Json{{"card", CardToJson(card)}}, at);
  return state_.Get(id);
}

void ProjectEditor::MoveCard(const CardId& id,
                             const std::optional<CardId>& new_parent,
                             std::int64_t position) {
  Commit(ops::kMoveCard, Json{{"card_id", id.value()},
                              {"parent_id", OptionalId(new_parent)},
                              {"position", position}});
}

void ProjectEditor::ReorderCard(const CardId& id, std::int64_t position) {
  Commit(ops::kReorderCard,
         Json{{"card_id", id.value()}, {"position", position}});
}

const Card& ProjectEditor::SetAnnotation(const CardId& id,
                                         std::string_view annotation) {
  text::RequireUtf8(annotation, "annotation");
  Commit(ops::kSetAnnotation,
         Json{{"card_id", id.value()}, {"annotation", annotation}});
  return state_.Get(id);
}

const Card& ProjectEditor::SetColor(const CardId& id,
                                    std::optional<Color> color) {
  Commit(ops::kSetColor,
         Json{{"card_id", id.value()},
              {"color", color ? Json(ColorName(*color)) : Json(nullptr)}});
  return state_.Get(id);
}

const Card& ProjectEditor::SetCollapsed(const CardId& id, bool collapsed) {
  Commit(ops::kSetCollapsed,
         Json{{"card_id", id.value()}, {"collapsed", collapsed}});
  return state_.Get(id);
}

void ProjectEditor::SetPinned(bool pinned) {
  Commit(ops::kSetPinned, Json{{"pinned", pinned}});
}

std::size_t ProjectEditor::DeleteCard(const CardId& id) {
  const std::size_t before = state_.card_count();
  Commit(ops::kDeleteCard, Json{{"card_id", id.value()}});
  return before - state_.card_count();
}

const Card& ProjectEditor::AttachRecognizedText(const CardId& id,
                                                std::string_view text) {
  text::RequireUtf8(text, "recognized text");
  Commit(ops::kAttachText, Json{{"card_id", id.value()}, {"text", text}});
  return state_.Get(id);
}

ProjectInfo ModelStore::CreateProject(std::string_view name) {
  const std::string_view trimmed = text::Trim(name);
  if (trimmed.empty()) {
    throw Error(ErrorCode::kEmptyName, "project name is empty");
  }
  text::RequireUtf8(name, "project name");
  auto record = std::make_shared<Record>();
  record->header.project = ProjectInfo{ProjectId(ids_.Next("p_")),
                                       std::string(trimmed), false,
                                       clock_.Now()};
  record->state = std::make_shared<const ProjectState>(record->header.project);
  ProjectInfo info = record->header.project;
  if (sink_) sink_->OnProjectCreated(record->header);
  Register(std::move(record));
  return info;
}

void ModelStore::Register(std::shared_ptr<Record> record) {
  std::unique_lock lock(mu_);
  const ProjectId id = record->header.project.id;
  projects_[id] = std::move(record);
}

std::shared_ptr<ModelStore::Record> ModelStore::Find(
    const ProjectId& id) const {
  std::shared_lock lock(mu_);
  auto it = projects_.find(id);
  if (it == projects_.end()) {
    throw Error(ErrorCode::kUnknownProject, "unknown project " + id.value());
  }
  return it->second;
}

bool ModelStore::HasProject(const ProjectId& id) const {
  std::shared_lock lock(mu_);
  return projects_.contains(id);
}

std::vector<ProjectListing> ModelStore::ListProjects() const {
  std::vector<std::shared_ptr<Record>> records;
  {
    std::shared_lock lock(mu_);
    for (const auto& [id, record] : projects_) records.push_back(record);
  }
  std::vector<ProjectListing> out;
  for (const auto& record : records) {
    std::shared_ptr<const ProjectState> state = record->Load();
    out.push_back({state->info(), state->revision(), state->card_count()});
  }
  return out;
}

std::shared_ptr<const ProjectState> ModelStore::Snapshot(
    const ProjectId& id) const {
  return Find(id)->Load();
}

JournalHeader ModelStore::Header(const ProjectId& id) const {
  // The header is written once at registration.
  return Find(id)->header;
}

std::vector<JournalEvent> ModelStore::Journal(const ProjectId& id) const {
  std::shared_ptr<Record> record = Find(id);
  std::lock_guard lock(record->write_mu);
  return record->journal;
}

std::string ModelStore::Export(const ProjectId& id) const {
  return ExportSnapshot(*Snapshot(id), assets_);
}

ProjectInfo ModelStore::Import(std::string_view document) {
  ProjectState state = ParseSnapshot(document, assets_);
  state.mutable_info().id = ProjectId(ids_.Next("p_"));
  auto record = std::make_shared<Record>();
  record->header.project = state.info();
  record->header.base_snapshot = Sha256Hex(document);
  record->state = std::make_shared<const ProjectState>(std::move(state));
  ProjectInfo info = record->header.project;
  if (sink_) sink_->OnProjectCreated(record->header);
  Register(std::move(record));
  return info;
}

void ModelStore::Restore(JournalHeader header, ProjectState state,
                         std::vector<JournalEvent> journal) {
  auto record = std::make_shared<Record>();
  record->header = std::move(header);
  record->journal = std::move(journal);
  record->state = std::make_shared<const ProjectState>(std::move(state));
  Register(std::move(record));
}

}  // namespace clipnest
