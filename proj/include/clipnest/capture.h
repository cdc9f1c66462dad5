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

// The capture interactions: text selection, dragged image, bookmark, region
// clip and open-tab import, plus the region -> element resolver and the
// text-recognition hook. Each capture stores its blobs in the asset store and
// ends in exactly one commit on the model store.

#ifndef CLIPNEST_CAPTURE_H_
#define CLIPNEST_CAPTURE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "clipnest/asset_store.h"
#include "clipnest/geometry.h"
#include "clipnest/model.h"
#include "clipnest/model_store.h"

namespace clipnest {

// A candidate element serialized by the browser client. node_id follows
// document order.
struct LayoutNode {
  std::int64_t node_id = 0;
  int depth = 0;
  Rect rect;
  std::string markup;  // outer HTML
  std::string text;    // inner text
};

// A user-drawn selection; always has positive width and height.
class BoundingBox {
 public:
  // Throws kInvalidArgument for non-positive or non-finite extents.
  static BoundingBox Make(double x, double y, double width, double height);

  const Rect& rect() const { return rect_; }

 private:
  explicit BoundingBox(Rect rect) : rect_(rect) {}
  Rect rect_;
};

// Below this IoU the selection is considered not to match any element.
inline constexpr double kResolveThreshold = 0.1;

// The node whose rect has the highest IoU with `bbox`. Ties go to the deeper
// node, then the smaller rect, then the earlier node_id. Returns nullptr when
// `nodes` is empty or the best IoU is below kResolveThreshold.
const LayoutNode* ResolveRegion(std::span<const LayoutNode> nodes,
                                const BoundingBox& bbox);

// "https://example.com/x" style URL: a scheme followed by ':' and a
// non-empty remainder, with an authority for http(s).
bool IsAbsoluteUrl(std::string_view url);
// Lowercased host of an absolute URL; the scheme when there is no host
// (file:, about:).
std::string UrlHost(std::string_view url);

// Page context shipped with every capture.
struct CaptureContext {
  std::string source_url;
  std::string page_title;
  std::optional<std::string> favicon;              // raw bytes
  std::optional<std::string> viewport_screenshot;  // raw bytes
  std::optional<Timestamp> captured_at;            // defaults to now
};

// Where a captured card goes and which revision the client last saw.
struct Placement {
  std::optional<CardId> parent;
  std::optional<std::int64_t> position;
  std::optional<std::int64_t> expected_revision;
};

struct CaptureResult {
  Card card;
  std::int64_t revision = 0;
};

struct SkippedTab {
  std::size_t index = 0;
  ErrorCode reason = ErrorCode::kMissingUrl;
  std::string message;
};

struct TabImportResult {
  std::vector<Card> cards;
  std::vector<SkippedTab> skipped;
  std::int64_t revision = 0;
};

// Plug-in converting an image into text (OCR). Implementations throw on
// failure; the message is carried into kEngineFailure.
class TextRecognizer {
 public:
  virtual ~TextRecognizer() = default;
  virtual std::string Recognize(std::string_view image_bytes,
                                std::string_view media_type) = 0;
};

// Text snippet titles keep this many characters of the selection.
inline constexpr std::size_t kSnippetTitleChars = 80;
inline constexpr std::string_view kEllipsis = "…";

// First kSnippetTitleChars characters of the trimmed selection, with an
// ellipsis appended when anything was cut.
std::string SnippetTitle(std::string_view selection);

class Capturer {
 public:
  Capturer(ModelStore& store, AssetStore& assets)
      : store_(store), assets_(assets) {}

  // Throws kEmptySelection.
  CaptureResult CaptureText(const ProjectId& project,
                            std::string_view selection,
                            const CaptureContext& ctx,
                            const Placement& placement = {});

  // Throws kEmptyPayload, kUnsupportedMediaType.
  CaptureResult CaptureImage(const ProjectId& project,
                             std::string_view image_bytes,
                             std::string_view media_type,
                             const CaptureContext& ctx,
                             const Placement& placement = {});

  // Throws kMissingUrl.
  CaptureResult CaptureBookmark(
      const ProjectId& project, const CaptureContext& ctx,
      const std::optional<std::string>& page_archive = std::nullopt,
      const Placement& placement = {});

  // Throws kEmptyPayload, kUnsupportedMediaType.
  CaptureResult CaptureRegion(const ProjectId& project,
                              std::span<const LayoutNode> nodes,
                              const BoundingBox& bbox,
                              std::string_view region_screenshot,
                              const CaptureContext& ctx,
                              const Placement& placement = {},
                              std::string_view media_type = "image/png");

  // One BOOKMARK root card per usable tab, committed together. Tabs without
  // a URL are skipped and reported. Throws kEmptyTabList.
  TabImportResult ImportTabs(
      const ProjectId& project, std::span<const CaptureContext> tabs,
      std::optional<std::int64_t> expected_revision = std::nullopt);

  // Runs `engine` over the card's image and stores the output as
  // EXTRACTED_TEXT. Throws kNoImage, kAlreadyHasText, kEngineFailure; on
  // failure nothing is journaled.
  CaptureResult AttachRecognizedText(
      const ProjectId& project, const CardId& card, TextRecognizer& engine,
      std::optional<std::int64_t> expected_revision = std::nullopt);

 private:
  // Builds provenance; viewport screenshot only when `keep_viewport`.
  Provenance MakeProvenance(const CaptureContext& ctx, bool keep_viewport);
  CaptureResult Commit(const ProjectId& project, std::string_view op,
                       Card card, const Placement& placement);

  ModelStore& store_;
  AssetStore& assets_;
};

}  // namespace clipnest

#endif  // CLIPNEST_CAPTURE_H_
