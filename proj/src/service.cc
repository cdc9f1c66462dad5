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

#include "clipnest/service.h"

#include "clipnest/snapshot.h"
#include "clipnest/stats.h"
#include "clipnest/view.h"

namespace clipnest {

namespace {

std::optional<std::string> OptionalField(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::string>();
}

std::optional<std::string> OptionalBase64(const Json& j, const char* key) {
  std::optional<std::string> encoded = OptionalField(j, key);
  if (!encoded) return std::nullopt;
  return Base64Decode(*encoded);
}

std::optional<CardId> OptionalCardId(const Json& j, const char* key) {
  if (auto id = OptionalField(j, key)) return CardId(*id);
  return std::nullopt;
}

std::optional<std::int64_t> OptionalInt(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<std::int64_t>();
}

Rect RectFromJson(const Json& j) {
  return Rect{j.at("x").get<double>(), j.at("y").get<double>(),
              j.at("width").get<double>(), j.at("height").get<double>()};
}

Placement PlacementFromJson(const Json& j) {
  return Placement{OptionalCardId(j, "parent_id"), OptionalInt(j, "position"),
                   OptionalInt(j, "expected_revision")};
}

CardId RequiredCardId(const Json& args) {
  return CardId(args.at("card_id").get<std::string>());
}

}  // namespace

MutationEnvelope MutationEnvelope::FromJson(const Json& j) {
  return WithSchemaErrors("mutation envelope", [&] {
    MutationEnvelope e;
    e.expected_revision = j.at("expected_revision").get<std::int64_t>();
    if (e.expected_revision < 0) {
      throw Error(ErrorCode::kSchemaInvalid, "expected_revision must be >= 0");
    }
    e.op = j.at("op").get<std::string>();
    if (j.contains("args")) e.args = j.at("args");
    if (!e.args.is_object()) {
      throw Error(ErrorCode::kSchemaInvalid, "args must be an object");
    }
    return e;
  });
}

CaptureContext CaptureContextFromJson(const Json& j) {
  return WithSchemaErrors("capture context", [&] {
    CaptureContext ctx;
    ctx.source_url = OptionalField(j, "url").value_or("");
    ctx.page_title = OptionalField(j, "title").value_or("");
    ctx.favicon = OptionalBase64(j, "favicon_b64");
    ctx.viewport_screenshot = OptionalBase64(j, "viewport_b64");
    if (auto at = OptionalField(j, "captured_at")) {
      ctx.captured_at = ParseTimestamp(*at);
    }
    return ctx;
  });
}

std::vector<LayoutNode> LayoutNodesFromJson(const Json& j) {
  return WithSchemaErrors("layout nodes", [&] {
    std::vector<LayoutNode> nodes;
    for (const Json& n : j) {
      LayoutNode node;
      node.node_id = n.at("id").get<std::int64_t>();
      node.depth = n.at("depth").get<int>();
      node.rect = RectFromJson(n.at("rect"));
      node.markup = OptionalField(n, "markup").value_or("");
      node.text = OptionalField(n, "text").value_or("");
      if (node.depth < 0 || node.rect.width < 0 || node.rect.height < 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    "layout node " + std::to_string(node.node_id) +
                        " has negative depth or size");
      }
      nodes.push_back(std::move(node));
    }
    return nodes;
  });
}

BoundingBox BoundingBoxFromJson(const Json& j) {
  return WithSchemaErrors("bbox", [&] {
    const Rect r = RectFromJson(j);
    return BoundingBox::Make(r.x, r.y, r.width, r.height);
  });
}

Service::Service(ServiceOptions options) : recognizer_(options.recognizer) {
  if (!options.clock) owned_clock_ = std::make_unique<SystemClock>();
  if (!options.ids) owned_ids_ = std::make_unique<RandomIdSource>();
  Clock& clock = options.clock ? *options.clock : *owned_clock_;
  IdSource& ids = options.ids ? *options.ids : *owned_ids_;

  if (options.data_dir) {
    assets_ = std::make_unique<AssetStore>(
        DataDirectory::AssetDir(*options.data_dir));
    data_dir_ = std::make_unique<DataDirectory>(
        *options.data_dir, *assets_, options.checkpoint_interval);
  } else {
    assets_ = std::make_unique<AssetStore>();
  }
  store_ = std::make_unique<ModelStore>(clock, ids, *assets_);
  if (data_dir_) {
    data_dir_->LoadInto(*store_);
    store_->set_sink(data_dir_.get());
  }
  capturer_ = std::make_unique<Capturer>(*store_, *assets_);
}

Service::~Service() = default;

Json Service::DispatchOp(ProjectEditor& editor,
                         const MutationEnvelope& envelope) {
  const Json& a = envelope.args;
  const std::string& op = envelope.op;
  if (op == ops::kCreateCard) {
    const CardKind kind = ParseCardKind(a.at("kind").get<std::string>());
    return Json{{"card", CardToJson(editor.CreateCard(
                             kind, a.at("title").get<std::string>(),
                             OptionalCardId(a, "parent_id"),
                             OptionalInt(a, "position")))}};
  }
  if (op == ops::kMoveCard) {
    const CardId id = RequiredCardId(a);
    editor.MoveCard(id, OptionalCardId(a, "parent_id"),
                    a.at("position").get<std::int64_t>());
    return Json{{"card", CardToJson(editor.state().Get(id))}};
  }
  if (op == ops::kReorderCard) {
    const CardId id = RequiredCardId(a);
    editor.ReorderCard(id, a.at("position").get<std::int64_t>());
    return Json{{"card", CardToJson(editor.state().Get(id))}};
  }
  if (op == ops::kSetAnnotation) {
    return Json{{"card", CardToJson(editor.SetAnnotation(
                             RequiredCardId(a),
                             a.at("annotation").get<std::string>()))}};
  }
  if (op == ops::kSetColor) {
    std::optional<Color> color;
    if (auto name = OptionalField(a, "color")) color = ParseColor(*name);
    return Json{
        {"card", CardToJson(editor.SetColor(RequiredCardId(a), color))}};
  }
  if (op == ops::kSetCollapsed) {
    return Json{{"card", CardToJson(editor.SetCollapsed(
                             RequiredCardId(a), a.at("collapsed").get<bool>()))}};
  }
  if (op == ops::kSetPinned) {
    editor.SetPinned(a.at("pinned").get<bool>());
    return Json{{"project", ProjectInfoToJson(editor.state().info())}};
  }
  if (op == ops::kDeleteCard) {
    return Json{{"removed", editor.DeleteCard(RequiredCardId(a))}};
  }
  throw Error(ErrorCode::kUnknownOp, "unknown operation '" + op + "'");
}

MutationOutcome Service::ApplyMutation(const ProjectId& project,
                                       const MutationEnvelope& envelope) {
  const std::string& op = envelope.op;
  static constexpr std::pair<std::string_view, std::string_view> kCaptureOps[] =
      {{ops::kCaptureText, "text"},       {ops::kCaptureImage, "image"},
       {ops::kCaptureBookmark, "bookmark"}, {ops::kCaptureRegion, "region"},
       {"import_tabs", "tabs"}};
  for (const auto& [name, kind] : kCaptureOps) {
    if (op == name) {
      Json payload = envelope.args;
      payload["expected_revision"] = envelope.expected_revision;
      return Capture(project, kind, payload);
    }
  }
  if (op == ops::kAttachText) {
    if (!recognizer_) {
      throw Error(ErrorCode::kEngineFailure,
                  "no text recognition engine is configured");
    }
    const CardId card = WithSchemaErrors(
        "attach_recognized_text", [&] { return RequiredCardId(envelope.args); });
    CaptureResult r = capturer_->AttachRecognizedText(
        project, card, *recognizer_, envelope.expected_revision);
    return MutationOutcome{r.revision, Json{{"card", CardToJson(r.card)}}};
  }
  auto [revision, result] = store_->Edit(
      project, envelope.expected_revision, [&](ProjectEditor& editor) {
        return WithSchemaErrors("mutation args",
                                [&] { return DispatchOp(editor, envelope); });
      });
  return MutationOutcome{revision, std::move(result)};
}

MutationOutcome Service::Capture(const ProjectId& project,
                                 std::string_view kind, const Json& payload) {
  return WithSchemaErrors("capture payload", [&]() -> MutationOutcome {
    if (!payload.is_object()) {
      throw Error(ErrorCode::kSchemaInvalid, "capture payload must be an object");
    }
    if (auto declared = OptionalField(payload, "kind");
        declared && *declared != kind) {
      throw Error(ErrorCode::kSchemaInvalid,
                  "payload kind '" + *declared + "' does not match '" +
                      std::string(kind) + "'");
    }
    const Placement placement = PlacementFromJson(payload);
    if (kind == "tabs") {
      std::vector<CaptureContext> tabs;
      for (const Json& t : payload.at("tabs")) {
        tabs.push_back(CaptureContextFromJson(t));
      }
      TabImportResult r = capturer_->ImportTabs(project, tabs,
                                                placement.expected_revision);
      Json cards = Json::array();
      for (const Card& c : r.cards) cards.push_back(CardToJson(c));
      Json skipped = Json::array();
      for (const SkippedTab& s : r.skipped) {
        skipped.push_back(Json{{"index", s.index},
                               {"error", ErrorCodeName(s.reason)},
                               {"message", s.message}});
      }
      return {r.revision,
              Json{{"cards", std::move(cards)}, {"skipped", std::move(skipped)}}};
    }

    const CaptureContext ctx =
        CaptureContextFromJson(payload.value("ctx", Json::object()));
    CaptureResult r;
    if (kind == "text") {
      r = capturer_->CaptureText(project, payload.at("text").get<std::string>(),
                                 ctx, placement);
    } else if (kind == "image") {
      const std::string bytes = OptionalBase64(payload, "bytes_b64").value_or("");
      r = capturer_->CaptureImage(
          project, bytes,
          OptionalField(payload, "media_type").value_or(SniffMediaType(bytes)), ctx,
          placement);
    } else if (kind == "bookmark") {
      r = capturer_->CaptureBookmark(project, ctx,
                                     OptionalBase64(payload, "bytes_b64"),
                                     placement);
    } else if (kind == "region") {
      const std::vector<LayoutNode> nodes =
          LayoutNodesFromJson(payload.value("nodes", Json::array()));
      const std::string bytes = OptionalBase64(payload, "bytes_b64").value_or("");
      r = capturer_->CaptureRegion(
          project, nodes, BoundingBoxFromJson(payload.at("bbox")), bytes, ctx,
          placement,
          OptionalField(payload, "media_type").value_or(SniffMediaType(bytes)));
    } else {
      throw Error(ErrorCode::kInvalidArgument,
                  "unknown capture kind '" + std::string(kind) + "'");
    }
    return {r.revision, Json{{"card", CardToJson(r.card)}}};
  });
}

std::string Service::ExportProject(const ProjectId& project) const {
  return store_->Export(project);
}

ProjectInfo Service::ImportProject(std::string_view document) {
  // Validate before storing anything.
  ParseSnapshot(document, *assets_);
  assets_->Put(document, "application/json");
  return store_->Import(document);
}

Json Service::ProjectsJson() const {
  Json list = Json::array();
  for (const ProjectListing& p : store_->ListProjects()) {
    Json j = ProjectInfoToJson(p.info);
    j["revision"] = p.revision;
    j["card_count"] = p.card_count;
    list.push_back(std::move(j));
  }
  return Json{{"projects", std::move(list)}};
}

Json Service::OverviewJson(const ProjectId& project) const {
  auto state = store_->Snapshot(project);
  return OverviewToJson(*state, ProjectOverview(*state));
}

Json Service::ReaderJson(const ProjectId& project,
                         const std::optional<CardId>& root) const {
  auto state = store_->Snapshot(project);
  Json j = ReaderToJson(root, FlattenReaderView(*state, root));
  j["revision"] = state->revision();
  return j;
}

Json Service::PeekJson(const CardId& card,
                       const std::optional<ProjectId>& project) const {
  std::shared_ptr<const ProjectState> owner;
  if (project) {
    owner = store_->Snapshot(*project);
  } else {
    for (const ProjectListing& p : store_->ListProjects()) {
      auto state = store_->Snapshot(p.info.id);
      if (!state->Find(card)) continue;
      if (owner) {
        throw Error(ErrorCode::kAmbiguousCard,
                    "card " + card.value() +
                        " exists in several projects; pass ?project=");
      }
      owner = std::move(state);
    }
    if (!owner) {
      throw Error(ErrorCode::kUnknownCard, "unknown card " + card.value());
    }
  }
  Json j = PeekToJson(card, Peek(*owner, card));
  j["grid"] = PreviewGridToJson(PreviewGridFor(*owner, card));
  j["project_id"] = owner->info().id.value();
  return j;
}

Json Service::ProjectStatsJson(const ProjectId& project) const {
  Json j = ProjectStatsToJson(ComputeProjectStats(*store_->Snapshot(project)));
  j["project_id"] = project.value();
  return j;
}

Json Service::CorpusReportJson() const {
  std::vector<ProjectStats> stats;
  for (const ProjectListing& p : store_->ListProjects()) {
    stats.push_back(ComputeProjectStats(*store_->Snapshot(p.info.id)));
  }
  return CorpusReportToJson(ComputeCorpusReport(stats));
}

int HttpStatusFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownProject:
    case ErrorCode::kUnknownCard:
    case ErrorCode::kUnknownParent:
    case ErrorCode::kNotFound:
      return 404;
    case ErrorCode::kRevisionConflict:
      return 409;
    case ErrorCode::kEngineFailure:
      return 502;
    case ErrorCode::kIoError:
      return 500;
    default:
      return 400;
  }
}

Json ErrorToJson(const Error& error) {
  Json j{{"error", ErrorCodeName(error.code())}, {"message", error.what()}};
  if (error.current_revision()) j["current_revision"] = *error.current_revision();
  return j;
}

}  // namespace clipnest
