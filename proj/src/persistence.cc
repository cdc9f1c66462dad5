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

#include "clipnest/persistence.h"

#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <iterator>

#include "clipnest/snapshot.h"

namespace clipnest {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kJournalFile = "journal.jsonl";
constexpr std::string_view kCheckpointFile = "checkpoint.json";
constexpr std::string_view kCheckpointFormat = "clipnest-checkpoint";

std::string ReadAll(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Writes `bytes` to `path` (appending or replacing) and syncs it.
void WriteDurably(const fs::path& path, std::string_view bytes, bool append) {
  std::FILE* f = std::fopen(path.c_str(), append ? "ab" : "wb");
  if (!f) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  const bool ok = std::fwrite(bytes.data(), 1, bytes.size(), f) == bytes.size() &&
                  std::fflush(f) == 0 && ::fsync(::fileno(f)) == 0;
  std::fclose(f);
  if (!ok) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

void ReplaceDurably(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  WriteDurably(tmp, bytes, /*append=*/false);
  fs::rename(tmp, path);
}

}  // namespace

DataDirectory::DataDirectory(fs::path root, const AssetStore& assets,
                             std::int64_t checkpoint_interval)
    : root_(std::move(root)),
      assets_(assets),
      checkpoint_interval_(checkpoint_interval > 0 ? checkpoint_interval : 64) {
  fs::create_directories(root_ / "projects");
}

fs::path DataDirectory::ProjectDir(const ProjectId& id) const {
  return root_ / "projects" / id.value();
}

void DataDirectory::OnProjectCreated(const JournalHeader& header) {
  const fs::path dir = ProjectDir(header.project.id);
  fs::create_directories(dir);
  ReplaceDurably(dir / kJournalFile, EncodeHeaderLine(header));
}

void DataDirectory::OnCommitted(const ProjectId& project,
                                std::span<const JournalEvent> events,
                                const ProjectState& after) {
  std::string lines;
  for (const JournalEvent& event : events) lines += EncodeEventLine(event);
  WriteDurably(ProjectDir(project) / kJournalFile, lines, /*append=*/true);

  const std::int64_t before =
      after.revision() - static_cast<std::int64_t>(events.size());
  if (before / checkpoint_interval_ != after.revision() / checkpoint_interval_) {
    WriteCheckpoint(after);
  }
}

void DataDirectory::WriteCheckpoint(const ProjectState& state) {
  const Json doc{{"format", kCheckpointFormat},
                 {"revision", state.revision()},
                 {"snapshot", ParseJson(ExportSnapshot(state, assets_))}};
  ReplaceDurably(ProjectDir(state.info().id) / kCheckpointFile,
                 CanonicalDump(doc) + "\n");
}

void DataDirectory::LoadInto(ModelStore& store) {
  const fs::path projects = root_ / "projects";
  for (const auto& entry : fs::directory_iterator(projects)) {
    if (!entry.is_directory()) continue;
    const fs::path journal_path = entry.path() / kJournalFile;
    if (!fs::exists(journal_path)) continue;

    JournalFile journal = ParseJournalFile(ReadAll(journal_path));
    if (journal.dropped_partial_tail) {
      std::string intact = EncodeHeaderLine(journal.header);
      for (const JournalEvent& e : journal.events) intact += EncodeEventLine(e);
      ReplaceDurably(journal_path, intact);
    }

    const ProjectInfo& header = journal.header.project;
    std::optional<ProjectState> state;
    const fs::path checkpoint_path = entry.path() / kCheckpointFile;
    if (fs::exists(checkpoint_path)) {
      const Json doc = ParseJson(ReadAll(checkpoint_path));
      WithSchemaErrors("checkpoint", [&] {
        if (doc.at("format").get<std::string>() != kCheckpointFormat) {
          throw Error(ErrorCode::kSchemaInvalid, "not a clipnest checkpoint");
        }
        state = ParseSnapshot(CanonicalDump(doc.at("snapshot")), assets_);
        state->set_revision(doc.at("revision").get<std::int64_t>());
      });
    } else if (journal.header.base_snapshot) {
      state = ParseSnapshot(assets_.Get(*journal.header.base_snapshot).bytes,
                            assets_);
    } else {
      state.emplace(header);
    }
    state->mutable_info().id = header.id;
    if (state->revision() > static_cast<std::int64_t>(journal.events.size())) {
      throw Error(ErrorCode::kIoError,
                  "checkpoint of " + header.id.value() +
                      " is ahead of its journal");
    }
    std::span<const JournalEvent> tail(journal.events);
    tail = tail.subspan(static_cast<std::size_t>(state->revision()));
    ProjectState recovered = ReplayJournal(std::move(*state), tail);
    store.Restore(std::move(journal.header), std::move(recovered),
                  std::move(journal.events));
  }
}

}  // namespace clipnest
