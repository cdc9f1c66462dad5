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

// On-disk layout of a data directory:
//
//   <root>/assets/<hh>/<hash>{,.type}          content-addressed blobs
//   <root>/projects/<project-id>/journal.jsonl  header line + events
//   <root>/projects/<project-id>/checkpoint.json
//
// The checkpoint is a snapshot at some revision, rewritten every
// `checkpoint_interval` revisions. Recovery loads the checkpoint (or the
// import base, or an empty project) and replays the journal tail after it.

#ifndef CLIPNEST_PERSISTENCE_H_
#define CLIPNEST_PERSISTENCE_H_

#include <cstdint>
#include <filesystem>
#include <mutex>

#include "clipnest/asset_store.h"
#include "clipnest/model_store.h"

namespace clipnest {

class DataDirectory : public JournalSink {
 public:
  DataDirectory(std::filesystem::path root, const AssetStore& assets,
                std::int64_t checkpoint_interval = 64);

  const std::filesystem::path& root() const { return root_; }
  static std::filesystem::path AssetDir(const std::filesystem::path& root) {
    return root / "assets";
  }

  // Loads every project found on disk into `store`. A journal whose last
  // append was interrupted is truncated back to its last complete event.
  void LoadInto(ModelStore& store);

  void OnProjectCreated(const JournalHeader& header) override;
  void OnCommitted(const ProjectId& project,
                   std::span<const JournalEvent> events,
                   const ProjectState& after) override;

  // Writes a checkpoint of `state` now.
  void WriteCheckpoint(const ProjectState& state);

 private:
  std::filesystem::path ProjectDir(const ProjectId& id) const;

  std::filesystem::path root_;
  const AssetStore& assets_;
  std::int64_t checkpoint_interval_;
};

}  // namespace clipnest

#endif  // CLIPNEST_PERSISTENCE_H_
