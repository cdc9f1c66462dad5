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

// The card/project data model and the structural primitives that keep a
// project's card forest well formed.

#ifndef CLIPNEST_MODEL_H_
#define CLIPNEST_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clipnest/common.h"

namespace clipnest {

enum class CardKind {
  kTextSnippet,
  kImage,
  kRegionClip,
  kBookmark,
  kManual,
  kFolder,
};

inline constexpr CardKind kAllCardKinds[] = {
    CardKind::kTextSnippet, CardKind::kImage,  CardKind::kRegionClip,
    CardKind::kBookmark,    CardKind::kManual, CardKind::kFolder};

std::string_view CardKindName(CardKind kind);
// Throws kInvalidKind.
CardKind ParseCardKind(std::string_view name);

// Cards created by clipping page content directly never carry a viewport
// screenshot.
inline bool IsDirectClipping(CardKind kind) {
  return kind == CardKind::kTextSnippet || kind == CardKind::kImage ||
         kind == CardKind::kRegionClip;
}

enum class Color { kRed, kOrange, kYellow, kGreen, kBlue, kPurple, kPink, kGray };

inline constexpr Color kAllColors[] = {Color::kRed,   Color::kOrange,
                                       Color::kYellow, Color::kGreen,
                                       Color::kBlue,  Color::kPurple,
                                       Color::kPink,  Color::kGray};

std::string_view ColorName(Color color);
// Throws kUnknownColor.
Color ParseColor(std::string_view name);

enum class ReprKind { kRegionImage, kHtmlFragment, kExtractedText, kPageArchive };

std::string_view ReprKindName(ReprKind kind);
// Throws kSchemaInvalid.
ReprKind ParseReprKind(std::string_view name);

// Image and archive representations hold an asset hash; the others hold text.
inline bool IsAssetRepr(ReprKind kind) {
  return kind == ReprKind::kRegionImage || kind == ReprKind::kPageArchive;
}

// How children are displayed under a parent. Derived from the parent's kind.
enum class ContainmentMode { kListing, kBundle };

inline ContainmentMode ModeUnder(CardKind parent_kind) {
  return parent_kind == CardKind::kFolder ? ContainmentMode::kListing
                                          : ContainmentMode::kBundle;
}

struct Provenance {
  std::string source_url;
  std::string page_title;
  std::optional<std::string> favicon;              // asset hash
  std::optional<std::string> viewport_screenshot;  // asset hash
  Timestamp captured_at;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Card {
  CardId id;
  std::optional<CardId> parent_id;
  CardKind kind = CardKind::kManual;
  std::string title;
  std::string annotation;
  std::optional<Color> color;
  std::int64_t order_index = 0;
  bool collapsed = false;
  // At most one value per kind: an asset hash or inline text.
  std::map<ReprKind, std::string> representations;
  std::optional<Provenance> provenance;
  Timestamp created_at;
  Timestamp updated_at;

  const std::string* FindRepresentation(ReprKind kind) const {
    auto it = representations.find(kind);
    return it == representations.end() ? nullptr : &it->second;
  }

  // Image shown at the top of the card: the clipped region or image, or the
  // viewport screenshot of a bookmark.
  std::optional<std::string> HeaderImage() const;

  // Every asset hash the card refers to.
  std::vector<std::string> AssetRefs() const;

  friend bool operator==(const Card&, const Card&) = default;
};

// Describes why `card`'s content breaks a per-card invariant (folder with
// representations, region clip without its image, viewport screenshot on a
// direct clipping), if it does.
std::optional<std::string> CardContentViolation(const Card& card);

struct ProjectInfo {
  ProjectId id;
  std::string name;
  bool pinned = false;
  Timestamp created_at;

  friend bool operator==(const ProjectInfo&, const ProjectInfo&) = default;
};

struct DepthEntry {
  const Card* card;
  int depth;
};

// One project's card forest. Value type: copying it yields an independent
// snapshot. Every mutating primitive validates fully before touching state,
// so a throwing call leaves the project unchanged.
class ProjectState {
 public:
  explicit ProjectState(ProjectInfo info) : info_(std::move(info)) {}

  const ProjectInfo& info() const { return info_; }
  ProjectInfo& mutable_info() { return info_; }

  // Number of committed journal events.
  std::int64_t revision() const { return revision_; }
  void set_revision(std::int64_t revision) { revision_ = revision; }

  std::size_t card_count() const { return cards_.size(); }

  const Card* Find(const CardId& id) const;
  // Throws kUnknownCard.
  const Card& Get(const CardId& id) const;
  Card& Mutable(const CardId& id);

  // Ordered children of `parent`, or the root list when `parent` is empty.
  const std::vector<CardId>& Children(
      const std::optional<CardId>& parent) const;
  const std::vector<CardId>& roots() const { return roots_; }

  // True when `ancestor` is `node` or lies on its parent chain.
  bool IsAncestorOrSelf(const CardId& ancestor, const CardId& node) const;

  // Pre-order walk, children in sibling order. With `root` set, only that
  // subtree is visited and the root sits at depth 0; otherwise every root
  // card sits at depth 0.
  std::vector<DepthEntry> DepthFirst(
      const std::optional<CardId>& root = std::nullopt) const;

  // Inserts `card` under card.parent_id at `position` (0..siblings).
  // card.order_index is overwritten.
  void Insert(Card card, std::int64_t position);
  // Reparents `id` under `new_parent` at `position`, counted in the sibling
  // list without the moved card.
  void Move(const CardId& id, const std::optional<CardId>& new_parent,
            std::int64_t position);
  void Reorder(const CardId& id, std::int64_t position);
  // Removes `id` and all of its descendants; returns how many were removed.
  std::size_t RemoveSubtree(const CardId& id);

  // Describes the first broken structural invariant, if any.
  std::optional<std::string> CheckInvariants() const;

 private:
  std::vector<CardId>& MutableChildren(const std::optional<CardId>& parent);
  void Redensify(const std::optional<CardId>& parent);
  void RequireFolderRule(CardKind child_kind,
                         const std::optional<CardId>& parent) const;

  ProjectInfo info_;
  std::int64_t revision_ = 0;
  std::unordered_map<CardId, Card> cards_;
  std::unordered_map<CardId, std::vector<CardId>> children_;
  std::vector<CardId> roots_;
};

}  // namespace clipnest

#endif  // CLIPNEST_MODEL_H_
