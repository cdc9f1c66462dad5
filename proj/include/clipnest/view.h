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

// Read models for the sidebar, computed from one project snapshot.

#ifndef CLIPNEST_VIEW_H_
#define CLIPNEST_VIEW_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clipnest/model.h"
#include "clipnest/serialization.h"

namespace clipnest {

inline constexpr std::size_t kPreviewGridCap = 9;
inline constexpr std::size_t kExcerptChars = 140;

struct PreviewGrid {
  std::size_t squares_shown = 0;
  std::size_t overflow = 0;

  friend bool operator==(const PreviewGrid&, const PreviewGrid&) = default;
};

PreviewGrid MakePreviewGrid(std::size_t child_count);

struct CardSummary {
  CardId card_id;
  CardKind kind = CardKind::kManual;
  std::string title;
  std::optional<std::string> header_image;
  std::string source_host;  // empty iff no provenance
  std::string annotation_excerpt;
  std::size_t child_count = 0;
  bool collapsed = false;
  std::optional<Color> color;
  PreviewGrid grid;
};

CardSummary Summarize(const ProjectState& state, const Card& card);

// A visible card; `children` holds its listing children (folders only).
// Bundled children never appear here, only through child_count and grid.
struct OverviewNode {
  CardSummary summary;
  std::vector<OverviewNode> children;
};

std::vector<OverviewNode> ProjectOverview(const ProjectState& state);

// Throws kUnknownCard.
PreviewGrid PreviewGridFor(const ProjectState& state, const CardId& card);

struct PeekEntry {
  CardId child_id;
  std::string title;
  // Exactly one is meaningful: the header image of image-bearing children,
  // otherwise a text excerpt of at most kExcerptChars characters.
  std::optional<std::string> thumbnail_asset;
  std::string thumbnail_excerpt;
};

// Direct children only, in sibling order. Throws kUnknownCard.
std::vector<PeekEntry> Peek(const ProjectState& state, const CardId& card);

struct ReaderEntry {
  Card card;
  int depth = 0;
};

// Depth-first pre-order over a card's subtree (root at depth 0) or over the
// whole project, listing and bundled children alike. Throws kUnknownCard.
std::vector<ReaderEntry> FlattenReaderView(
    const ProjectState& state, const std::optional<CardId>& root);

Json PreviewGridToJson(const PreviewGrid& grid);
Json SummaryToJson(const CardSummary& summary);
Json OverviewToJson(const ProjectState& state,
                    const std::vector<OverviewNode>& roots);
Json PeekToJson(const CardId& card, const std::vector<PeekEntry>& entries);
Json ReaderToJson(const std::optional<CardId>& root,
                  const std::vector<ReaderEntry>& entries);

}  // namespace clipnest

#endif  // CLIPNEST_VIEW_H_
