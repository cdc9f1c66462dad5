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

#include "clipnest/snapshot.h"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "clipnest/serialization.h"

namespace clipnest {

std::string ExportSnapshot(const ProjectState& state,
                           const AssetCatalog& assets) {
  Json cards = Json::array();
  Json manifest = Json::object();
  for (const DepthEntry& entry : state.DepthFirst()) {
    cards.push_back(CardToJson(*entry.card));
    for (const std::string& hash : entry.card->AssetRefs()) {
      if (manifest.contains(hash)) continue;
      std::optional<AssetInfo> info = assets.Describe(hash);
      if (!info) {
        throw Error(ErrorCode::kMissingAsset,
                    "card " + entry.card->id.value() +
                        " references missing asset " + hash);
      }
      manifest[hash] = Json{{"media_type", info->media_type},
                            {"byte_length", info->byte_length}};
    }
  }
  Json doc{{"format", kSnapshotFormat},
           {"version", kSnapshotVersion},
           {"project", ProjectInfoToJson(state.info())},
           {"cards", std::move(cards)},
           {"assets", std::move(manifest)}};
  return CanonicalDump(doc) + "\n";
}

namespace {

[[noreturn]] void Violation(std::string_view invariant,
                            const std::string& detail) {
  throw Error(ErrorCode::kInvariantViolation,
              std::string(invariant) + ": " + detail);
}

struct ParsedDocument {
  ProjectInfo project;
  std::vector<Card> cards;
  std::map<std::string, std::uint64_t> manifest;  // hash -> byte length
};

ParsedDocument ParseDocument(std::string_view document) {
  const Json doc = ParseJson(document);
  return WithSchemaErrors("snapshot", [&] {
    if (!doc.is_object() ||
        doc.at("format").get<std::string>() != kSnapshotFormat) {
      throw Error(ErrorCode::kSchemaInvalid, "not a clipnest snapshot");
    }
    if (doc.at("version").get<int>() != kSnapshotVersion) {
      throw Error(ErrorCode::kSchemaInvalid,
                  "unsupported snapshot version " +
                      doc.at("version").dump());
    }
    ParsedDocument parsed;
    parsed.project = ProjectInfoFromJson(doc.at("project"));
    const Json& cards = doc.at("cards");
    if (!cards.is_array()) {
      throw Error(ErrorCode::kSchemaInvalid, "cards must be an array");
    }
    for (const Json& c : cards) parsed.cards.push_back(CardFromJson(c));
    const Json& assets = doc.at("assets");
    if (!assets.is_object()) {
      throw Error(ErrorCode::kSchemaInvalid, "assets must be an object");
    }
    for (const auto& [hash, entry] : assets.items()) {
      if (!IsWellFormedHash(hash)) {
        throw Error(ErrorCode::kSchemaInvalid,
                    "malformed manifest hash '" + hash + "'");
      }
      entry.at("media_type").get<std::string>();
      parsed.manifest[hash] = entry.at("byte_length").get<std::uint64_t>();
    }
    return parsed;
  });
}

}  // namespace

ProjectState ParseSnapshot(std::string_view document,
                           const AssetCatalog& assets) {
  ParsedDocument doc = ParseDocument(document);

  std::unordered_map<CardId, const Card*> by_id;
  for (const Card& card : doc.cards) {
    if (!by_id.emplace(card.id, &card).second) {
      Violation("unique ids", "card id " + card.id.value() + " repeats");
    }
    if (auto violation = CardContentViolation(card)) {
      Violation("card content", *violation);
    }
  }

  std::map<std::optional<CardId>, std::vector<const Card*>> groups;
  for (const Card& card : doc.cards) {
    if (card.parent_id) {
      auto parent = by_id.find(*card.parent_id);
      if (parent == by_id.end()) {
        Violation("forest", "parent " + card.parent_id->value() + " of " +
                                card.id.value() + " is missing");
      }
      if (card.kind == CardKind::kFolder &&
          parent->second->kind != CardKind::kFolder) {
        Violation("folder rule", "folder " + card.id.value() + " inside " +
                                     std::string(CardKindName(
                                         parent->second->kind)));
      }
    }
    groups[card.parent_id].push_back(&card);
  }
  for (auto& [parent, siblings] : groups) {
    std::sort(siblings.begin(), siblings.end(),
              [](const Card* a, const Card* b) {
                return a->order_index < b->order_index;
              });
    for (std::size_t i = 0; i < siblings.size(); ++i) {
      if (siblings[i]->order_index != static_cast<std::int64_t>(i)) {
        Violation("dense indices",
                  "children of " + (parent ? parent->value() : "the root") +
                      " are not indexed 0.." +
                      std::to_string(siblings.size() - 1));
      }
    }
  }

  std::set<std::string> referenced;
  for (const Card& card : doc.cards) {
    for (std::string& hash : card.AssetRefs()) {
      if (!doc.manifest.contains(hash)) {
        Violation("manifest", "asset " + hash + " of card " +
                                  card.id.value() + " is not listed");
      }
      referenced.insert(std::move(hash));
    }
  }
  for (const auto& [hash, length] : doc.manifest) {
    if (!referenced.contains(hash)) {
      Violation("manifest", "asset " + hash + " is not referenced");
    }
    std::optional<AssetInfo> info = assets.Describe(hash);
    if (!info) {
      throw Error(ErrorCode::kMissingAsset, "asset " + hash + " is not stored");
    }
    if (info->byte_length != length) {
      Violation("manifest", "asset " + hash + " length disagrees with store");
    }
  }

  // Insert parents before children, siblings in index order. Cards never
  // reached from a root sit on a cycle.
  ProjectState state(doc.project);
  std::vector<const Card*> stack;
  auto push_group = [&](const std::optional<CardId>& parent) {
    auto it = groups.find(parent);
    if (it == groups.end()) return;
    for (auto c = it->second.rbegin(); c != it->second.rend(); ++c) {
      stack.push_back(*c);
    }
  };
  push_group(std::nullopt);
  std::size_t inserted = 0;
  while (!stack.empty()) {
    const Card* card = stack.back();
    stack.pop_back();
    state.Insert(*card, card->order_index);
    ++inserted;
    push_group(card->id);
  }
  if (inserted != doc.cards.size()) {
    Violation("forest", "parent links contain a cycle");
  }
  return state;
}

ManifestCatalog::ManifestCatalog(std::string_view document) {
  const Json doc = ParseJson(document);
  WithSchemaErrors("manifest", [&] {
    for (const auto& [hash, entry] : doc.at("assets").items()) {
      infos_[hash] = AssetInfo{hash, entry.at("media_type").get<std::string>(),
                               entry.at("byte_length").get<std::uint64_t>()};
    }
  });
}

std::optional<AssetInfo> ManifestCatalog::Describe(std::string_view hash) const {
  auto it = infos_.find(hash);
  if (it == infos_.end()) return std::nullopt;
  return it->second;
}

std::string SnapshotComparisonBody(std::string_view document) {
  Json doc = ParseJson(document);
  WithSchemaErrors("snapshot", [&] { doc.at("project")["id"] = ""; });
  return CanonicalDump(doc) + "\n";
}

}  // namespace clipnest
