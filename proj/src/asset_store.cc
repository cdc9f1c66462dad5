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

#include "clipnest/asset_store.h"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <iterator>
#include <mutex>
#include <sstream>

#include "clipnest/common.h"

namespace clipnest {

namespace fs = std::filesystem;

std::string Sha256Hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len,
                 EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::kIoError, "SHA-256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

bool IsWellFormedHash(std::string_view hash) {
  return hash.size() == 64 &&
         std::all_of(hash.begin(), hash.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

namespace {

constexpr std::string_view kCaptureImageTypes[] = {
    "image/png", "image/jpeg", "image/gif", "image/webp", "image/svg+xml"};

constexpr std::string_view kOtherAssetTypes[] = {
    "image/x-icon",      "image/vnd.microsoft.icon",
    "text/html",         "multipart/related",
    "application/x-mimearchive", "application/pdf",
    "application/json",  "application/octet-stream"};

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void WriteFileAtomically(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

std::string AssetStore::NormalizeMediaType(std::string_view media_type) {
  if (auto semi = media_type.find(';'); semi != std::string_view::npos) {
    media_type = media_type.substr(0, semi);
  }
  std::string out(text::Trim(media_type));
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool AssetStore::IsCaptureImageType(std::string_view media_type) {
  const std::string norm = NormalizeMediaType(media_type);
  return std::find(std::begin(kCaptureImageTypes), std::end(kCaptureImageTypes),
                   norm) != std::end(kCaptureImageTypes);
}

bool AssetStore::IsSupportedMediaType(std::string_view media_type) {
  const std::string norm = NormalizeMediaType(media_type);
  return IsCaptureImageType(norm) ||
         std::find(std::begin(kOtherAssetTypes), std::end(kOtherAssetTypes),
                   norm) != std::end(kOtherAssetTypes);
}

AssetStore::AssetStore(fs::path dir) : dir_(std::move(dir)) {
  fs::create_directories(*dir_);
  for (const auto& shard : fs::directory_iterator(*dir_)) {
    if (!shard.is_directory()) continue;
    for (const auto& entry : fs::directory_iterator(shard.path())) {
      const std::string name = entry.path().filename().string();
      if (!IsWellFormedHash(name)) continue;
      fs::path type_path = entry.path();
      type_path += ".type";
      if (!fs::exists(type_path)) continue;
      Blob blob{ReadFile(entry.path()), ReadFile(type_path)};
      // A blob whose bytes no longer hash to its name is dropped.
      if (Sha256Hex(blob.bytes) != name) continue;
      blobs_.emplace(name, std::move(blob));
    }
  }
}

fs::path AssetStore::BlobPath(std::string_view hash) const {
  return *dir_ / std::string(hash.substr(0, 2)) / std::string(hash);
}

AssetInfo AssetStore::Put(std::string_view bytes, std::string_view media_type) {
  if (bytes.empty()) throw Error(ErrorCode::kEmptyPayload, "asset is empty");
  std::string type = NormalizeMediaType(media_type);
  if (!IsSupportedMediaType(type)) {
    throw Error(ErrorCode::kUnsupportedMediaType,
                "unsupported media type '" + std::string(media_type) + "'");
  }
  std::string hash = Sha256Hex(bytes);

  std::unique_lock lock(mu_);
  if (auto it = blobs_.find(hash); it != blobs_.end()) {
    return AssetInfo{hash, it->second.media_type, it->second.bytes.size()};
  }
  if (dir_) {
    const fs::path path = BlobPath(hash);
    fs::create_directories(path.parent_path());
    fs::path type_path = path;
    type_path += ".type";
    WriteFileAtomically(path, bytes);
    WriteFileAtomically(type_path, type);
  }
  blobs_.emplace(hash, Blob{std::string(bytes), type});
  return AssetInfo{std::move(hash), std::move(type), bytes.size()};
}

AssetStore::Blob AssetStore::Get(std::string_view hash) const {
  if (!IsWellFormedHash(hash)) {
    throw Error(ErrorCode::kMalformedHash,
                "malformed asset hash '" + std::string(hash) + "'");
  }
  std::shared_lock lock(mu_);
  auto it = blobs_.find(std::string(hash));
  if (it == blobs_.end()) {
    throw Error(ErrorCode::kNotFound, "no asset " + std::string(hash));
  }
  return it->second;
}

std::optional<AssetInfo> AssetStore::Describe(std::string_view hash) const {
  std::shared_lock lock(mu_);
  auto it = blobs_.find(std::string(hash));
  if (it == blobs_.end()) return std::nullopt;
  return AssetInfo{it->first, it->second.media_type, it->second.bytes.size()};
}

std::size_t AssetStore::size() const {
  std::shared_lock lock(mu_);
  return blobs_.size();
}

std::string Base64Encode(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3) + 1, '\0');
  const int n = EVP_EncodeBlock(
      reinterpret_cast<unsigned char*>(out.data()),
      reinterpret_cast<const unsigned char*>(bytes.data()),
      static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string Base64Decode(std::string_view encoded) {
  std::string clean;
  clean.reserve(encoded.size());
  for (char c : encoded) {
    if (!std::isspace(static_cast<unsigned char>(c))) clean.push_back(c);
  }
  if (clean.size() % 4 != 0) {
    throw Error(ErrorCode::kInvalidArgument, "base64 length is not a multiple of 4");
  }
  std::string out(clean.size() / 4 * 3 + 1, '\0');
  const int n = EVP_DecodeBlock(
      reinterpret_cast<unsigned char*>(out.data()),
      reinterpret_cast<const unsigned char*>(clean.data()),
      static_cast<int>(clean.size()));
  if (n < 0) throw Error(ErrorCode::kInvalidArgument, "malformed base64");
  // EVP_DecodeBlock counts padding bytes as output; drop them.
  std::size_t len = static_cast<std::size_t>(n);
  if (!clean.empty() && clean.back() == '=') --len;
  if (clean.size() >= 2 && clean[clean.size() - 2] == '=') --len;
  out.resize(len);
  return out;
}

std::string SniffMediaType(std::string_view b) {
  auto starts = [&](std::string_view magic) { return b.starts_with(magic); };
  if (starts("\x89PNG\r\n\x1a\n")) return "image/png";
  if (starts("\xFF\xD8\xFF")) return "image/jpeg";
  if (starts("GIF87a") || starts("GIF89a")) return "image/gif";
  if (b.size() >= 12 && starts("RIFF") && b.substr(8, 4) == "WEBP") {
    return "image/webp";
  }
  if (starts(std::string_view("\x00\x00\x01\x00", 4))) return "image/x-icon";
  const std::string_view head = text::Trim(b.substr(0, 256));
  if (head.starts_with("<svg") ||
      (head.starts_with("<?xml") && b.find("<svg") != std::string_view::npos)) {
    return "image/svg+xml";
  }
  if (starts("%PDF-")) return "application/pdf";
  return "application/octet-stream";
}

}  // namespace clipnest
