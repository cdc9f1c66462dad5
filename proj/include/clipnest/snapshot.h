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

#ifndef CLIPNEST_SNAPSHOT_H_
#define CLIPNEST_SNAPSHOT_H_

#include <map>
#include <string>
#include <string_view>

#include "clipnest/asset_store.h"
#include "clipnest/model.h"

namespace clipnest {

inline constexpr std::string_view kSnapshotFormat = "clipnest-snapshot";
inline constexpr int kSnapshotVersion = 1;

// Deterministic snapshot document: project header, cards in depth-first
// order, and a manifest describing every referenced asset. Equal states
// export to equal bytes. Throws kMissingAsset when a referenced asset is not
// in `assets`.
std::string ExportSnapshot(const ProjectState& state,
                           const AssetCatalog& assets);

// Validates a snapshot document and rebuilds the project it describes, with
// revision 0 and the document's project header. Throws kSchemaInvalid for
// shape errors, kInvariantViolation (message starts with the invariant's
// name: "dense indices", "forest", "folder rule", "unique ids", "card
// content", "manifest") and kMissingAsset when `assets` lacks a manifest
// entry.
ProjectState ParseSnapshot(std::string_view document,
                           const AssetCatalog& assets);

// Describes assets from a snapshot's own manifest, so a lone export can be
// parsed without the blobs it references. Throws kSchemaInvalid.
class ManifestCatalog : public AssetCatalog {
 public:
  explicit ManifestCatalog(std::string_view document);
  std::optional<AssetInfo> Describe(std::string_view hash) const override;

 private:
  std::map<std::string, AssetInfo, std::less<>> infos_;
};

// The snapshot with project.id blanked: the region compared when checking
// that export -> import -> export is the identity.
std::string SnapshotComparisonBody(std::string_view document);

}  // namespace clipnest

#endif  // CLIPNEST_SNAPSHOT_H_
