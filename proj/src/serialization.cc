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

#include "clipnest/serialization.h"

#include "clipnest/asset_store.h"

namespace clipnest {

std::string CanonicalDump(const Json& value) {
  try {
    return value.dump();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("value cannot be encoded: ") + e.what());
  }
}

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaInvalid,
                std::string("malformed JSON: ") + e.what());
  }
}

namespace {

Json OptionalString(const std::optional<std::string>& s) {
  return s ? Json(*s) : Json(nullptr);
}

std::optional<std::string> ReadOptionalString(const Json& j,
                                              std::string_view key) {
  const Json& v = j.at(std::string(key));
  if (v.is_null()) return std::nullopt;
  return v.get<std::string>();
}

std::string ReadHash(const Json& v) {
  std::string hash = v.get<std::string>();
  if (!IsWellFormedHash(hash)) {
    throw Error(ErrorCode::kSchemaInvalid, "malformed asset hash '" + hash + "'");
  }
  return hash;
}

std::optional<std::string> ReadOptionalHash(const Json& j,
                                            std::string_view key) {
  const Json& v = j.at(std::string(key));
  if (v.is_null()) return std::nullopt;
  return ReadHash(v);
}

}  // namespace

Json ProvenanceToJson(const Provenance& p) {
  return Json{{"source_url", p.source_url},
              {"page_title", p.page_title},
              {"favicon", OptionalString(p.favicon)},
              {"viewport_screenshot", OptionalString(p.viewport_screenshot)},
              {"captured_at", FormatTimestamp(p.captured_at)}};
}

Provenance ProvenanceFromJson(const Json& j) {
  return WithSchemaErrors("provenance", [&] {
    Provenance p;
    p.source_url = j.at("source_url").get<std::string>();
    p.page_title = j.at("page_title").get<std::string>();
    p.favicon = ReadOptionalHash(j, "favicon");
    p.viewport_screenshot = ReadOptionalHash(j, "viewport_screenshot");
    p.captured_at = ParseTimestamp(j.at("captured_at").get<std::string>());
    return p;
  });
}

Json CardToJson(const Card& card) {
  Json reprs = Json::array();
  for (const auto& [kind, value] : card.representations) {
    reprs.push_back(Json{{"kind", ReprKindName(kind)},
                         {IsAssetRepr(kind) ? "asset" : "text", value}});
  }
  return Json{
      {"id", card.id.value()},
      {"parent_id",
       card.parent_id ? Json(card.parent_id->value()) : Json(nullptr)},
      {"kind", CardKindName(card.kind)},
      {"title", card.title},
      {"annotation", card.annotation},
      {"color", card.color ? Json(ColorName(*card.color)) : Json(nullptr)},
      {"order_index", card.order_index},
      {"collapsed", card.collapsed},
      {"representations", std::move(reprs)},
      {"provenance",
       card.provenance ? ProvenanceToJson(*card.provenance) : Json(nullptr)},
      {"created_at", FormatTimestamp(card.created_at)},
      {"updated_at", FormatTimestamp(card.updated_at)}};
}

Card CardFromJson(const Json& j) {
  return WithSchemaErrors("card", [&] {
    Card card;
    card.id = CardId(j.at("id").get<std::string>());
    if (card.id.empty()) {
      throw Error(ErrorCode::kSchemaInvalid, "card id is empty");
    }
    if (auto parent = ReadOptionalString(j, "parent_id")) {
      card.parent_id = CardId(*parent);
    }
    try {
      card.kind = ParseCardKind(j.at("kind").get<std::string>());
      if (auto color = ReadOptionalString(j, "color")) {
        card.color = ParseColor(*color);
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::kSchemaInvalid, e.what());
    }
    card.title = j.at("title").get<std::string>();
    card.annotation = j.at("annotation").get<std::string>();
    card.order_index = j.at("order_index").get<std::int64_t>();
    card.collapsed = j.at("collapsed").get<bool>();
    for (const Json& r : j.at("representations")) {
      const ReprKind kind = ParseReprKind(r.at("kind").get<std::string>());
      std::string value = IsAssetRepr(kind)
                              ? ReadHash(r.at("asset"))
                              : r.at("text").get<std::string>();
      if (!card.representations.emplace(kind, std::move(value)).second) {
        throw Error(ErrorCode::kSchemaInvalid,
                    "card " + card.id.value() + " repeats representation " +
                        std::string(ReprKindName(kind)));
      }
    }
    if (const Json& p = j.at("provenance"); !p.is_null()) {
      card.provenance = ProvenanceFromJson(p);
    }
    card.created_at = ParseTimestamp(j.at("created_at").get<std::string>());
    card.updated_at = ParseTimestamp(j.at("updated_at").get<std::string>());
    return card;
  });
}

Json ProjectInfoToJson(const ProjectInfo& info) {
  return Json{{"id", info.id.value()},
              {"name", info.name},
              {"pinned", info.pinned},
              {"created_at", FormatTimestamp(info.created_at)}};
}

ProjectInfo ProjectInfoFromJson(const Json& j) {
  return WithSchemaErrors("project", [&] {
    ProjectInfo info;
    info.id = ProjectId(j.at("id").get<std::string>());
    info.name = j.at("name").get<std::string>();
    info.pinned = j.at("pinned").get<bool>();
    info.created_at = ParseTimestamp(j.at("created_at").get<std::string>());
    return info;
  });
}

}  // namespace clipnest
