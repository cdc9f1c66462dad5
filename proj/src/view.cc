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

#include "clipnest/view.h"

#include <algorithm>

#include "clipnest/capture.h"

namespace clipnest {

PreviewGrid MakePreviewGrid(std::size_t child_count) {
  const std::size_t shown = std::min(child_count, kPreviewGridCap);
  return PreviewGrid{shown, child_count - shown};
}

CardSummary Summarize(const ProjectState& state, const Card& card) {
  CardSummary s;
  s.card_id = card.id;
  s.kind = card.kind;
  s.title = card.title;
  s.header_image = card.HeaderImage();
  if (card.provenance) {
    s.source_host = UrlHost(card.provenance->source_url);
    if (s.source_host.empty()) s.source_host = card.provenance->source_url;
  }
  s.annotation_excerpt = text::TruncateCodePoints(card.annotation, kExcerptChars);
  s.child_count = state.Children(card.id).size();
  s.collapsed = card.collapsed;
  s.color = card.color;
  s.grid = MakePreviewGrid(s.child_count);
  return s;
}

namespace {

OverviewNode BuildNode(const ProjectState& state, const Card& card) {
  OverviewNode node{Summarize(state, card), {}};
  if (ModeUnder(card.kind) == ContainmentMode::kListing) {
    for (const CardId& child : state.Children(card.id)) {
      node.children.push_back(BuildNode(state, state.Get(child)));
    }
  }
  return node;
}

}  // namespace

std::vector<OverviewNode> ProjectOverview(const ProjectState& state) {
  std::vector<OverviewNode> roots;
  for (const CardId& id : state.roots()) {
    roots.push_back(BuildNode(state, state.Get(id)));
  }
  return roots;
}

PreviewGrid PreviewGridFor(const ProjectState& state, const CardId& card) {
  state.Get(card);
  return MakePreviewGrid(state.Children(card).size());
}

std::vector<PeekEntry> Peek(const ProjectState& state, const CardId& card) {
  state.Get(card);
  std::vector<PeekEntry> out;
  for (const CardId& child_id : state.Children(card)) {
    const Card& child = state.Get(child_id);
    PeekEntry entry{child.id, child.title, child.HeaderImage(), {}};
    if (!entry.thumbnail_asset) {
      const std::string* body = child.FindRepresentation(ReprKind::kExtractedText);
      const std::string& source =
          body ? *body : (child.annotation.empty() ? child.title : child.annotation);
      entry.thumbnail_excerpt = text::TruncateCodePoints(source, kExcerptChars);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

std::vector<ReaderEntry> FlattenReaderView(const ProjectState& state,
                                           const std::optional<CardId>& root) {
  std::vector<ReaderEntry> out;
  for (const DepthEntry& e : state.DepthFirst(root)) {
    out.push_back({*e.card, e.depth});
  }
  return out;
}

Json PreviewGridToJson(const PreviewGrid& grid) {
  return Json{{"squares_shown", grid.squares_shown},
              {"overflow", grid.overflow}};
}

Json SummaryToJson(const CardSummary& s) {
  return Json{
      {"card_id", s.card_id.value()},
      {"kind", CardKindName(s.kind)},
      {"title", s.title},
      {"header_image", s.header_image ? Json(*s.header_image) : Json(nullptr)},
      {"source_host", s.source_host},
      {"annotation_excerpt", s.annotation_excerpt},
      {"child_count", s.child_count},
      {"collapsed", s.collapsed},
      {"color", s.color ? Json(ColorName(*s.color)) : Json(nullptr)},
      {"preview_grid", PreviewGridToJson(s.grid)}};
}

namespace {

Json NodeToJson(const OverviewNode& node) {
  Json j = SummaryToJson(node.summary);
  Json children = Json::array();
  for (const OverviewNode& child : node.children) {
    children.push_back(NodeToJson(child));
  }
  j["children"] = std::move(children);
  return j;
}

}  // namespace

Json OverviewToJson(const ProjectState& state,
                    const std::vector<OverviewNode>& roots) {
  Json cards = Json::array();
  for (const OverviewNode& node : roots) cards.push_back(NodeToJson(node));
  return Json{{"project", ProjectInfoToJson(state.info())},
              {"revision", state.revision()},
              {"cards", std::move(cards)}};
}

Json PeekToJson(const CardId& card, const std::vector<PeekEntry>& entries) {
  Json items = Json::array();
  for (const PeekEntry& e : entries) {
    Json thumb = e.thumbnail_asset ? Json{{"asset", *e.thumbnail_asset}}
                                   : Json{{"excerpt", e.thumbnail_excerpt}};
    items.push_back(Json{{"child_id", e.child_id.value()},
                         {"title", e.title},
                         {"thumbnail", std::move(thumb)}});
  }
  return Json{{"card_id", card.value()}, {"children", std::move(items)}};
}

Json ReaderToJson(const std::optional<CardId>& root,
                  const std::vector<ReaderEntry>& entries) {
  Json items = Json::array();
  for (const ReaderEntry& e : entries) {
    items.push_back(Json{{"depth", e.depth}, {"card", CardToJson(e.card)}});
  }
  return Json{{"root", root ? Json(root->value()) : Json(nullptr)},
              {"entries", std::move(items)}};
}

}  // namespace clipnest
