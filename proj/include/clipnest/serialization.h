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

#ifndef CLIPNEST_SERIALIZATION_H_
#define CLIPNEST_SERIALIZATION_H_

#include <string>
#include <string_view>

#include "clipnest/model.h"
#include "json.hpp"

namespace clipnest {

using Json = nlohmann::json;

// Canonical text encoding: object keys sorted, no insignificant whitespace,
// integers only, UTF-8 emitted unescaped. Equal values always produce equal
// bytes.
std::string CanonicalDump(const Json& value);

// Parses JSON text; throws kSchemaInvalid on malformed input.
Json ParseJson(std::string_view text);

Json CardToJson(const Card& card);
Json ProvenanceToJson(const Provenance& provenance);
Json ProjectInfoToJson(const ProjectInfo& info);

// The *FromJson functions throw kSchemaInvalid on missing or mistyped fields.
Card CardFromJson(const Json& j);
Provenance ProvenanceFromJson(const Json& j);
ProjectInfo ProjectInfoFromJson(const Json& j);

// Runs `fn`, translating nlohmann exceptions into kSchemaInvalid with
// `what` as context.
template <typename Fn>
auto WithSchemaErrors(std::string_view what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::kSchemaInvalid,
                std::string(what) + ": " + e.what());
  }
}

}  // namespace clipnest

#endif  // CLIPNEST_SERIALIZATION_H_
