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

#ifndef CLIPNEST_ASSET_STORE_H_
#define CLIPNEST_ASSET_STORE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

namespace clipnest {

// Lowercase hex SHA-256 of `bytes`.
std::string Sha256Hex(std::string_view bytes);

// 64 lowercase hex digits.
bool IsWellFormedHash(std::string_view hash);

struct AssetInfo {
  std::string hash;
  std::string media_type;
  std::uint64_t byte_length = 0;
};

// Read-only view used by snapshot export/import to build and check the
// asset manifest.
class AssetCatalog {
 public:
  virtual ~AssetCatalog() = default;
  virtual std::optional<AssetInfo> Describe(std::string_view hash) const = 0;
};

// Content-addressed, write-once blob store. Without a directory it lives in
// memory; with one, every blob is written to <dir>/<hash[0:2]>/<hash> with its
// media type in a sibling ".type" file.
class AssetStore : public AssetCatalog {
 public:
  struct Blob {
    std::string bytes;
    std::string media_type;
  };

  AssetStore() = default;
  explicit AssetStore(std::filesystem::path dir);

  AssetStore(const AssetStore&) = delete;
  AssetStore& operator=(const AssetStore&) = delete;

  // Idempotent: identical bytes map to the one stored blob, and the media
  // type recorded first wins. Throws kEmptyPayload, kUnsupportedMediaType.
  AssetInfo Put(std::string_view bytes, std::string_view media_type);

  // Throws kMalformedHash, kNotFound.
  Blob Get(std::string_view hash) const;

  std::optional<AssetInfo> Describe(std::string_view hash) const override;
  bool Contains(std::string_view hash) const {
    return Describe(hash).has_value();
  }
  std::size_t size() const;

  static bool IsSupportedMediaType(std::string_view media_type);
  // Subset accepted for image captures: png, jpeg, gif, webp, svg.
  static bool IsCaptureImageType(std::string_view media_type);
  // Lowercased, parameters (";charset=...") stripped.
  static std::string NormalizeMediaType(std::string_view media_type);

 private:
  std::filesystem::path BlobPath(std::string_view hash) const;

  std::optional<std::filesystem::path> dir_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, Blob> blobs_;
};

// Standard base64 with padding. Decode throws kInvalidArgument on malformed
// input.
std::string Base64Encode(std::string_view bytes);
std::string Base64Decode(std::string_view encoded);

// Best-effort media type from magic bytes; "application/octet-stream" when
// nothing matches.
std::string SniffMediaType(std::string_view bytes);

}  // namespace clipnest

#endif  // CLIPNEST_ASSET_STORE_H_
