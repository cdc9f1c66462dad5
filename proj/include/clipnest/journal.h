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

// Append-only mutation journal. Every committed mutation is a JournalEvent
// whose payload records the fully resolved arguments (assigned ids, inserted
// card records), so applying the events in order reproduces the project
// exactly. Live mutations go through ApplyEvent too; there is one code path.
//
// On disk a journal is line-delimited canonical JSON (see docs/formats.md):
//
//   {"base":null,"format":"clipnest-journal","project":{...},"version":1}
//   {"at":"...","op":"create_card","payload":{...},"seq":1}
//   ...

#ifndef CLIPNEST_JOURNAL_H_
#define CLIPNEST_JOURNAL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clipnest/model.h"
#include "clipnest/serialization.h"

namespace clipnest {

namespace ops {
inline constexpr std::string_view kCreateCard = "create_card";
inline constexpr std::string_view kCaptureText = "capture_text";
inline constexpr std::string_view kCaptureImage = "capture_image";
inline constexpr std::string_view kCaptureBookmark = "capture_bookmark";
inline constexpr std::string_view kCaptureRegion = "capture_region";
inline constexpr std::string_view kImportTab = "import_tab";
inline constexpr std::string_view kMoveCard = "move_card";
inline constexpr std::string_view kReorderCard = "reorder_card";
inline constexpr std::string_view kSetAnnotation = "set_annotation";
inline constexpr std::string_view kSetColor = "set_color";
inline constexpr std::string_view kSetCollapsed = "set_collapsed";
inline constexpr std::string_view kSetPinned = "set_pinned";
inline constexpr std::string_view kDeleteCard = "delete_card";
inline constexpr std::string_view kAttachText = "attach_recognized_text";

// Ops whose payload is {"card": <card record>} and which insert that card.
bool IsInsertOp(std::string_view op);
bool IsKnownOp(std::string_view op);
}  // namespace ops

struct JournalEvent {
  std::int64_t seq = 0;
  std::string op;
  Json payload;
  Timestamp at;

  friend bool operator==(const JournalEvent&, const JournalEvent&) = default;
};

Json EventToJson(const JournalEvent& event);
// Throws kSchemaInvalid.
JournalEvent EventFromJson(const Json& j);

// Applies one event. Throws kGapInSequence unless event.seq is exactly
// state.revision() + 1, kUnknownOp for unrecognised ops, and the op's own
// errors; on any throw the state is unchanged.
void ApplyEvent(ProjectState& state, const JournalEvent& event);

// Applies `events` to `initial`. The events must be contiguous starting at
// initial.revision() + 1, otherwise kGapInSequence is thrown before anything
// is applied.
ProjectState ReplayJournal(ProjectState initial,
                           std::span<const JournalEvent> events);

// First line of a journal file. `base_snapshot` is the hash of the snapshot
// document an imported project started from; it stands in for the import
// record and does not count towards the revision.
struct JournalHeader {
  ProjectInfo project;
  std::optional<std::string> base_snapshot;

  friend bool operator==(const JournalHeader&, const JournalHeader&) = default;
};

std::string EncodeHeaderLine(const JournalHeader& header);
std::string EncodeEventLine(const JournalEvent& event);

struct JournalFile {
  JournalHeader header;
  std::vector<JournalEvent> events;
  // True when the last line was incomplete (interrupted append) and dropped.
  bool dropped_partial_tail = false;
};

// Throws kSchemaInvalid for anything but a torn final line.
JournalFile ParseJournalFile(std::string_view contents);

}  // namespace clipnest

#endif  // CLIPNEST_JOURNAL_H_
