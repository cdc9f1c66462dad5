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

#ifndef CLIPNEST_SERVICE_H_
#define CLIPNEST_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "clipnest/asset_store.h"
#include "clipnest/capture.h"
#include "clipnest/model_store.h"
#include "clipnest/persistence.h"
#include "clipnest/serialization.h"

namespace clipnest {

struct ServiceOptions {
  // In-memory when unset.
  std::optional<std::filesystem::path> data_dir;
  std::int64_t checkpoint_interval = 64;
  // Defaults: SystemClock and RandomIdSource owned by the service.
  Clock* clock = nullptr;
  IdSource* ids = nullptr;
  // Used by attach_recognized_text; unset means the op reports
  // kEngineFailure.
  TextRecognizer* recognizer = nullptr;
};

// A client mutation carrying the revision the client last saw.
struct MutationEnvelope {
  std::int64_t expected_revision = 0;
  std::string op;
  Json args = Json::object();

  // Throws kSchemaInvalid; expected_revision must be >= 0.
  static MutationEnvelope FromJson(const Json& j);
};

struct MutationOutcome {
  std::int64_t revision = 0;
  Json result;
};

// Capture payload: {kind, ctx{url,title,favicon_b64?,viewport_b64?,
// captured_at?}, bbox?, nodes?, bytes_b64?, media_type?, text?, tabs?,
// parent_id?, position?, expected_revision?}. Throws kSchemaInvalid or
// kInvalidArgument.
CaptureContext CaptureContextFromJson(const Json& j);
std::vector<LayoutNode> LayoutNodesFromJson(const Json& j);
BoundingBox BoundingBoxFromJson(const Json& j);

// The always-running local service: model store, asset store, capture
// pipeline and persistence behind one facade. The HTTP layer and the Python
// module both sit on top of this.
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  ModelStore& store() { return *store_; }
  AssetStore& assets() { return *assets_; }
  Capturer& capturer() { return *capturer_; }

  // Applies the envelope if its expected revision is current; otherwise
  // throws RevisionConflict carrying the current revision.
  MutationOutcome ApplyMutation(const ProjectId& project,
                                const MutationEnvelope& envelope);

  // `kind` is text, image, bookmark, region or tabs. Revision is checked
  // only when the payload has expected_revision. Result is {"card"}
  // ({"cards", "skipped"} for tabs). Image types are sniffed unless
  // media_type is given.
  MutationOutcome Capture(const ProjectId& project, std::string_view kind,
                          const Json& payload);

  std::string ExportProject(const ProjectId& project) const;
  // Stores the document as an asset (the journal's import base) and
  // registers the project.
  ProjectInfo ImportProject(std::string_view document);

  Json ProjectsJson() const;
  Json OverviewJson(const ProjectId& project) const;
  Json ReaderJson(const ProjectId& project,
                  const std::optional<CardId>& root) const;
  // Finds the card in any project unless `project` narrows it. Throws
  // kUnknownCard, or kAmbiguousCard when several projects hold the id.
  Json PeekJson(const CardId& card,
                const std::optional<ProjectId>& project) const;
  Json ProjectStatsJson(const ProjectId& project) const;
  Json CorpusReportJson() const;

 private:
  Json DispatchOp(ProjectEditor& editor, const MutationEnvelope& envelope);

  std::unique_ptr<Clock> owned_clock_;
  std::unique_ptr<IdSource> owned_ids_;
  TextRecognizer* recognizer_;
  std::unique_ptr<AssetStore> assets_;
  std::unique_ptr<DataDirectory> data_dir_;
  std::unique_ptr<ModelStore> store_;
  std::unique_ptr<Capturer> capturer_;
};

// HTTP status for an error code: validation 400, missing 404, conflict 409.
int HttpStatusFor(ErrorCode code);
Json ErrorToJson(const Error& error);

}  // namespace clipnest

#endif  // CLIPNEST_SERVICE_H_
