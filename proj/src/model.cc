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

#include "clipnest/model.h"

#include <algorithm>
#include <unordered_set>

namespace clipnest {

std::string_view CardKindName(CardKind kind) {
  switch (kind) {
    case CardKind::kTextSnippet: return "TEXT_SNIPPET";
    case CardKind::kImage: return "IMAGE";
    case CardKind::kRegionClip: return "REGION_CLIP";
    case CardKind::kBookmark: return "BOOKMARK";
    case CardKind::kManual: return "MANUAL";
    case CardKind::kFolder: return "FOLDER";
  }
  return "";
}

CardKind ParseCardKind(std::string_view name) {
  for (CardKind kind : kAllCardKinds) {
    if (CardKindName(kind) == name) return kind;
  }
  throw Error(ErrorCode::kInvalidKind,
              "unknown card kind '" + std::string(name) + "'");
}

std::string_view ColorName(Color color) {
  switch (color) {
    case Color::kRed: return "RED";
    case Color::kOrange: return "ORANGE";
    case Color::kYellow: return "YELLOW";
    case Color::kGreen: return "GREEN";
    case Color::kBlue: return "BLUE";
    case Color::kPurple: return "PURPLE";
    case Color::kPink: return "PINK";
    case Color::kGray: return "GRAY";
  }
  return "";
}

Color ParseColor(std::string_view name) {
  for (Color color : kAllColors) {
    if (ColorName(color) == name) return color;
  }
  throw Error(ErrorCode::kUnknownColor,
              "unknown color '" + std::string(name) + "'");
}

std::string_view ReprKindName(ReprKind kind) {
  switch (kind) {
    case ReprKind::kRegionImage: return "REGION_IMAGE";
    case ReprKind::kHtmlFragment: return "HTML_FRAGMENT";
    case ReprKind::kExtractedText: return "EXTRACTED_TEXT";
    case ReprKind::kPageArchive: return "PAGE_ARCHIVE";
  }
  return "";
}

ReprKind ParseReprKind(std::string_view name) {
  for (ReprKind kind : {ReprKind::kRegionImage, ReprKind::kHtmlFragment,
                        ReprKind::kExtractedText, ReprKind::kPageArchive}) {
    if (ReprKindName(kind) == name) return kind;
  }
  throw Error(ErrorCode::kSchemaInvalid,
              "unknown representation kind '" + std::string(name) + "'");
}

std::optional<std::string> Card::HeaderImage() const {
  if (const std::string* image = FindRepresentation(ReprKind::kRegionImage)) {
    return *image;
  }
  if (kind == CardKind::kBookmark && provenance &&
      provenance->viewport_screenshot) {
    return provenance->viewport_screenshot;
  }
  return std::nullopt;
}

std::vector<std::string> Card::AssetRefs() const {
  std::vector<std::string> refs;
  for (const auto& [kind, value] : representations) {
    if (IsAssetRepr(kind)) refs.push_back(value);
  }
  if (provenance) {
    if (provenance->favicon) refs.push_back(*provenance->favicon);
    if (provenance->viewport_screenshot) {
      refs.push_back(*provenance->viewport_screenshot);
    }
  }
  return refs;
}

std::optional<std::string> CardContentViolation(const Card& card) {
  if (card.kind == CardKind::kFolder && !card.representations.empty()) {
    return "folder " + card.id.value() + " carries representations";
  }
  if (card.kind == CardKind::kRegionClip &&
      !card.FindRepresentation(ReprKind::kRegionImage)) {
    return "region clip " + card.id.value() + " has no REGION_IMAGE";
  }
  if (IsDirectClipping(card.kind) && card.provenance &&
      card.provenance->viewport_screenshot) {
    return "direct clipping " + card.id.value() +
           " carries a viewport screenshot";
  }
  return std::nullopt;
}

const Card* ProjectState::Find(const CardId& id) const {
  auto it = cards_.find(id);
  return it == cards_.end() ? nullptr : &it->second;
}

const Card& ProjectState::Get(const CardId& id) const {
  if (const Card* card = Find(id)) return *card;
  throw Error(ErrorCode::kUnknownCard, "unknown card " + id.value());
}

Card& ProjectState::Mutable(const CardId& id) {
  auto it = cards_.find(id);
  if (it == cards_.end()) {
    throw Error(ErrorCode::kUnknownCard, "unknown card " + id.value());
  }
  return it->second;
}

const std::vector<CardId>& ProjectState::Children(
    const std::optional<CardId>& parent) const {
  static const std::vector<CardId> kNone;
  if (!parent) return roots_;
  auto it = children_.find(*parent);
  return it == children_.end() ? kNone : it->second;
}

std::vector<CardId>& ProjectState::MutableChildren(
    const std::optional<CardId>& parent) {
  if (!parent) return roots_;
  return children_[*parent];
}

bool ProjectState::IsAncestorOrSelf(const CardId& ancestor,
                                    const CardId& node) const {
  const Card* cur = Find(node);
  // The step bound guards against walking a corrupted (cyclic) chain.
  for (std::size_t steps = 0; cur && steps <= cards_.size(); ++steps) {
    if (cur->id == ancestor) return true;
    if (!cur->parent_id) return false;
    cur = Find(*cur->parent_id);
  }
  return false;
}

std::vector<DepthEntry> ProjectState::DepthFirst(
    const std::optional<CardId>& root) const {
  std::vector<DepthEntry> out;
  std::vector<std::pair<const CardId*, int>> stack;
  auto push_children = [&](const std::vector<CardId>& kids, int depth) {
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      stack.emplace_back(&*it, depth);
    }
  };
  if (root) {
    stack.emplace_back(&Get(*root).id, 0);
  } else {
    push_children(roots_, 0);
  }
  out.reserve(root ? 8 : cards_.size());
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    const Card& card = Get(*id);
    out.push_back({&card, depth});
    push_children(Children(card.id), depth + 1);
  }
  return out;
}

void ProjectState::RequireFolderRule(
    CardKind child_kind, const std::optional<CardId>& parent) const {
  if (child_kind != CardKind::kFolder || !parent) return;
  const Card& p = Get(*parent);
  if (p.kind != CardKind::kFolder) {
    throw Error(ErrorCode::kFolderInsideBundle,
                "a folder cannot be placed inside " +
                    std::string(CardKindName(p.kind)) + " card " +
                    parent->value());
  }
}

void ProjectState::Redensify(const std::optional<CardId>& parent) {
  const std::vector<CardId>& list = Children(parent);
  for (std::size_t i = 0; i < list.size(); ++i) {
    cards_.at(list[i]).order_index = static_cast<std::int64_t>(i);
  }
}

namespace {

void RequirePosition(std::int64_t position, std::size_t limit) {
  if (position < 0 || static_cast<std::size_t>(position) > limit) {
    throw Error(ErrorCode::kPositionOutOfRange,
                "position " + std::to_string(position) + " outside [0, " +
                    std::to_string(limit) + "]");
  }
}

}  // namespace

void ProjectState::Insert(Card card, std::int64_t position) {
  if (card.id.empty() || cards_.contains(card.id)) {
    throw Error(ErrorCode::kInvariantViolation,
                "card id '" + card.id.value() + "' is empty or already used");
  }
  if (card.parent_id && !Find(*card.parent_id)) {
    throw Error(ErrorCode::kUnknownParent,
                "unknown parent " + card.parent_id->value());
  }
  if (auto violation = CardContentViolation(card)) {
    throw Error(ErrorCode::kInvariantViolation, *violation);
  }
  RequireFolderRule(card.kind, card.parent_id);
  RequirePosition(position, Children(card.parent_id).size());

  const std::optional<CardId> parent = card.parent_id;
  const CardId id = card.id;
  auto& siblings = MutableChildren(parent);
  siblings.insert(siblings.begin() + position, id);
  cards_.emplace(id, std::move(card));
  Redensify(parent);
}

void ProjectState::Move(const CardId& id,
                        const std::optional<CardId>& new_parent,
                        std::int64_t position) {
  const Card& card = Get(id);
  if (new_parent) {
    if (!Find(*new_parent)) {
      throw Error(ErrorCode::kUnknownParent,
                  "unknown parent " + new_parent->value());
    }
    if (IsAncestorOrSelf(id, *new_parent)) {
      throw Error(ErrorCode::kCycleRejected,
                  "cannot move " + id.value() + " under its own subtree");
    }
  }
  RequireFolderRule(card.kind, new_parent);
  const std::optional<CardId> old_parent = card.parent_id;
  const std::size_t limit =
      Children(new_parent).size() - (old_parent == new_parent ? 1 : 0);
  RequirePosition(position, limit);

  auto& old_list = MutableChildren(old_parent);
  old_list.erase(std::find(old_list.begin(), old_list.end(), id));
  auto& new_list = MutableChildren(new_parent);
  new_list.insert(new_list.begin() + position, id);
  cards_.at(id).parent_id = new_parent;
  Redensify(old_parent);
  if (old_parent != new_parent) Redensify(new_parent);
}

void ProjectState::Reorder(const CardId& id, std::int64_t position) {
  const Card& card = Get(id);
  const std::size_t count = Children(card.parent_id).size();
  if (position < 0 || static_cast<std::size_t>(position) >= count) {
    throw Error(ErrorCode::kPositionOutOfRange,
                "position " + std::to_string(position) + " outside [0, " +
                    std::to_string(count) + ")");
  }
  Move(id, card.parent_id, position);
}

std::size_t ProjectState::RemoveSubtree(const CardId& id) {
  const std::optional<CardId> parent = Get(id).parent_id;
  const std::vector<DepthEntry> doomed = DepthFirst(id);
  std::vector<CardId> ids;
  ids.reserve(doomed.size());
  for (const DepthEntry& e : doomed) ids.push_back(e.card->id);

  auto& siblings = MutableChildren(parent);
  siblings.erase(std::find(siblings.begin(), siblings.end(), id));
  for (const CardId& gone : ids) {
    children_.erase(gone);
    cards_.erase(gone);
  }
  Redensify(parent);
  return ids.size();
}

std::optional<std::string> ProjectState::CheckInvariants() const {
  // Every listed child must point back at its parent, with dense indices.
  std::size_t listed = 0;
  auto check_list = [&](const std::optional<CardId>& parent,
                        const std::vector<CardId>& list)
      -> std::optional<std::string> {
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Card* c = Find(list[i]);
      if (!c) return "listed child " + list[i].value() + " does not exist";
      if (c->parent_id != parent) {
        return "card " + c->id.value() + " listed under the wrong parent";
      }
      if (c->order_index != static_cast<std::int64_t>(i)) {
        return "dense indices: card " + c->id.value() + " has index " +
               std::to_string(c->order_index) + ", expected " +
               std::to_string(i);
      }
    }
    listed += list.size();
    return std::nullopt;
  };
  if (auto err = check_list(std::nullopt, roots_)) return err;
  for (const auto& [parent, list] : children_) {
    if (!Find(parent)) return "children listed under missing " + parent.value();
    if (auto err = check_list(parent, list)) return err;
  }
  if (listed != cards_.size()) return "forest: some cards are not listed";

  for (const auto& [id, card] : cards_) {
    if (card.parent_id) {
      const Card* p = Find(*card.parent_id);
      if (!p) return "forest: parent of " + id.value() + " is missing";
      if (card.kind == CardKind::kFolder && p->kind != CardKind::kFolder) {
        return "folder rule: folder " + id.value() + " inside a " +
               std::string(CardKindName(p->kind));
      }
    }
    if (auto violation = CardContentViolation(card)) return violation;
  }
  // Every card reachable from the roots means the parent relation is acyclic.
  if (DepthFirst().size() != cards_.size()) return "forest: cycle detected";
  return std::nullopt;
}

}  // namespace clipnest
