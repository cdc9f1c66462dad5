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

#include "clipnest/journal.h"

#include <algorithm>

#include "clipnest/asset_store.h"

namespace clipnest {

namespace ops {

bool IsInsertOp(std::string_view op) {
  return op == kCreateCard || op == kCaptureText || op == kCaptureImage ||
         op == kCaptureBookmark || op == kCaptureRegion || op == kImportTab;
}

bool IsKnownOp(std::string_view op) {
  return IsInsertOp(op) || op == kMoveCard || op == kReorderCard ||
         op == kSetAnnotation || op == kSetColor || op == kSetCollapsed ||
         op == kSetPinned || op == kDeleteCard || op == kAttachText;
}

}  // namespace ops

Json EventToJson(const JournalEvent& event) {
  return Json{{"seq", event.seq},
              {"op", event.op},
              {"payload", event.payload},
              {"at", FormatTimestamp(event.at)}};
}

JournalEvent EventFromJson(const Json& j) {
  return WithSchemaErrors("journal event", [&] {
    JournalEvent event;
    event.seq = j.at("seq").get<std::int64_t>();
    event.op = j.at("op").get<std::string>();
    event.payload = j.at("payload");
    event.at = ParseTimestamp(j.at("at").get<std::string>());
    if (!event.payload.is_object()) {
      throw Error(ErrorCode::kSchemaInvalid, "event payload must be an object");
    }
    return event;
  });
}

namespace {

CardId PayloadCard(const Json& payload) {
  return CardId(payload.at("card_id").get<std::string>());
}

std::optional<CardId> PayloadParent(const Json& payload) {
  const Json& parent = payload.at("parent_id");
  if (parent.is_null()) return std::nullopt;
  return CardId(parent.get<std::string>());
}

void Dispatch(ProjectState& state, const JournalEvent& event) {
  const Json& p = event.payload;
  const std::string& op = event.op;
  if (ops::IsInsertOp(op)) {
    Card card = CardFromJson(p.at("card"));
    const std::int64_t position = card.order_index;
    state.Insert(std::move(card), position);
  } else if (op == ops::kMoveCard) {
    const CardId id = PayloadCard(p);
    state.Move(id, PayloadParent(p), p.at("position").get<std::int64_t>());
    state.Mutable(id).updated_at = event.at;
  } else if (op == ops::kReorderCard) {
    const CardId id = PayloadCard(p);
    state.Reorder(id, p.at("position").get<std::int64_t>());
    state.Mutable(id).updated_at = event.at;
  } else if (op == ops::kSetAnnotation) {
    std::string annotation = p.at("annotation").get<std::string>();
    Card& card = state.Mutable(PayloadCard(p));
    card.annotation = std::move(annotation);
    card.updated_at = event.at;
  } else if (op == ops::kSetColor) {
    const Json& c = p.at("color");
    std::optional<Color> color;
    if (!c.is_null()) color = ParseColor(c.get<std::string>());
    Card& card = state.Mutable(PayloadCard(p));
    card.color = color;
    card.updated_at = event.at;
  } else if (op == ops::kSetCollapsed) {
    const bool collapsed = p.at("collapsed").get<bool>();
    Card& card = state.Mutable(PayloadCard(p));
    card.collapsed = collapsed;
    card.updated_at = event.at;
  } else if (op == ops::kSetPinned) {
    state.mutable_info().pinned = p.at("pinned").get<bool>();
  } else if (op == ops::kDeleteCard) {
    state.RemoveSubtree(PayloadCard(p));
  } else if (op == ops::kAttachText) {
    std::string text = p.at("text").get<std::string>();
    const CardId id = PayloadCard(p);
    const Card& card = state.Get(id);
    if (!card.FindRepresentation(ReprKind::kRegionImage)) {
      throw Error(ErrorCode::kNoImage, "card " + id.value() + " has no image");
    }
    if (card.FindRepresentation(ReprKind::kExtractedText)) {
      throw Error(ErrorCode::kAlreadyHasText,
                  "card " + id.value() + " already has extracted text");
    }
    Card& mutable_card = state.Mutable(id);
    mutable_card.representations.emplace(ReprKind::kExtractedText,
                                         std::move(text));
    mutable_card.updated_at = event.at;
  } else {
    throw Error(ErrorCode::kUnknownOp, "unknown journal op '" + op + "'");
  }
}

}  // namespace

void ApplyEvent(ProjectState& state, const JournalEvent& event) {
  if (event.seq != state.revision() + 1) {
    throw Error(ErrorCode::kGapInSequence,
                "expected event seq " + std::to_string(state.revision() + 1) +
                    ", got " + std::to_string(event.seq));
  }
  // Payload fields are all read before the first write in Dispatch, so a
  // schema error here cannot leave a half-applied event behind.
  WithSchemaErrors("event " + std::to_string(event.seq),
                   [&] { Dispatch(state, event); });
  state.set_revision(event.seq);
}

ProjectState ReplayJournal(ProjectState initial,
                           std::span<const JournalEvent> events) {
  std::int64_t expected = initial.revision() + 1;
  for (const JournalEvent& event : events) {
    if (event.seq != expected) {
      throw Error(ErrorCode::kGapInSequence,
                  "journal gap: expected seq " + std::to_string(expected) +
                      ", found " + std::to_string(event.seq));
    }
    if (!ops::IsKnownOp(event.op)) {
      throw Error(ErrorCode::kUnknownOp,
                  "unknown journal op '" + event.op + "'");
    }
    ++expected;
  }
  for (const JournalEvent& event : events) ApplyEvent(initial, event);
  return initial;
}

namespace {
constexpr std::string_view kJournalFormat = "clipnest-journal";
constexpr int kJournalVersion = 1;
}  // namespace

std::string EncodeHeaderLine(const JournalHeader& header) {
  Json j{{"format", kJournalFormat},
         {"version", kJournalVersion},
         {"project", ProjectInfoToJson(header.project)},
         {"base", header.base_snapshot ? Json(*header.base_snapshot)
                                       : Json(nullptr)}};
  return CanonicalDump(j) + "\n";
}

std::string EncodeEventLine(const JournalEvent& event) {
  return CanonicalDump(EventToJson(event)) + "\n";
}

JournalFile ParseJournalFile(std::string_view contents) {
  JournalFile file;
  std::vector<std::string_view> lines;
  while (!contents.empty()) {
    const std::size_t nl = contents.find('\n');
    if (nl == std::string_view::npos) {
      // An append interrupted before its newline; the event never committed.
      file.dropped_partial_tail = true;
      break;
    }
    lines.push_back(contents.substr(0, nl));
    contents.remove_prefix(nl + 1);
  }
  if (lines.empty()) {
    throw Error(ErrorCode::kSchemaInvalid, "journal has no header line");
  }
  WithSchemaErrors("journal header", [&] {
    const Json header = ParseJson(lines.front());
    if (header.at("format") != kJournalFormat ||
        header.at("version") != kJournalVersion) {
      throw Error(ErrorCode::kSchemaInvalid, "not a clipnest journal v1");
    }
    file.header.project = ProjectInfoFromJson(header.at("project"));
    if (const Json& base = header.at("base"); !base.is_null()) {
      std::string hash = base.get<std::string>();
      if (!IsWellFormedHash(hash)) {
        throw Error(ErrorCode::kSchemaInvalid, "malformed base snapshot hash");
      }
      file.header.base_snapshot = std::move(hash);
    }
  });
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    file.events.push_back(EventFromJson(ParseJson(lines[i])));
  }
  return file;
}

}  // namespace clipnest
