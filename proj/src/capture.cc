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

#include "clipnest/capture.h"

#include <algorithm>
#include <cctype>
#include <cmath>

namespace clipnest {

BoundingBox BoundingBox::Make(double x, double y, double width,
                              double height) {
  const bool finite = std::isfinite(x) && std::isfinite(y) &&
                      std::isfinite(width) && std::isfinite(height);
  if (!finite || width <= 0 || height <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "bounding box needs finite coordinates and positive size");
  }
  return BoundingBox(Rect{x, y, width, height});
}

const LayoutNode* ResolveRegion(std::span<const LayoutNode> nodes,
                                const BoundingBox& bbox) {
  const LayoutNode* best = nullptr;
  double best_iou = 0;
  for (const LayoutNode& node : nodes) {
    const double iou = IntersectionOverUnion(bbox.rect(), node.rect);
    bool better;
    if (!best || iou != best_iou) {
      better = !best || iou > best_iou;
    } else if (node.depth != best->depth) {
      better = node.depth > best->depth;
    } else if (node.rect.area() != best->rect.area()) {
      better = node.rect.area() < best->rect.area();
    } else {
      better = node.node_id < best->node_id;
    }
    if (better) {
      best = &node;
      best_iou = iou;
    }
  }
  if (!best || best_iou < kResolveThreshold) return nullptr;
  return best;
}

namespace {

std::string_view UrlScheme(std::string_view url) {
  const std::size_t colon = url.find(':');
  if (colon == std::string_view::npos || colon == 0) return {};
  const std::string_view scheme = url.substr(0, colon);
  if (!std::isalpha(static_cast<unsigned char>(scheme.front()))) return {};
  for (char c : scheme) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' &&
        c != '.') {
      return {};
    }
  }
  return scheme;
}

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

bool IsAbsoluteUrl(std::string_view url) {
  const std::string_view scheme = UrlScheme(url);
  if (scheme.empty() || url.size() == scheme.size() + 1) return false;
  if (url.find_first_of(" \t\r\n") != std::string_view::npos) return false;
  const std::string lower = Lower(scheme);
  if (lower == "http" || lower == "https") {
    std::string_view rest = url.substr(scheme.size() + 1);
    if (!rest.starts_with("//")) return false;
    rest.remove_prefix(2);
    rest = rest.substr(0, rest.find_first_of("/?#"));
    if (auto at = rest.rfind('@'); at != std::string_view::npos) {
      rest.remove_prefix(at + 1);
    }
    return !rest.empty() && rest.front() != ':';
  }
  return true;
}

std::string UrlHost(std::string_view url) {
  const std::string_view scheme = UrlScheme(url);
  if (scheme.empty()) return {};
  std::string_view rest = url.substr(scheme.size() + 1);
  if (!rest.starts_with("//")) return Lower(scheme);
  rest.remove_prefix(2);
  rest = rest.substr(0, rest.find_first_of("/?#"));
  if (auto at = rest.rfind('@'); at != std::string_view::npos) {
    rest.remove_prefix(at + 1);
  }
  if (rest.starts_with('[')) {
    rest = rest.substr(0, rest.find(']') + 1);  // IPv6 literal
  } else {
    rest = rest.substr(0, rest.find(':'));
  }
  return rest.empty() ? Lower(scheme) : Lower(rest);
}

std::string SnippetTitle(std::string_view selection) {
  const std::string_view trimmed = text::Trim(selection);
  if (text::CodePointCount(trimmed) <= kSnippetTitleChars) {
    return std::string(trimmed);
  }
  return text::TruncateCodePoints(trimmed, kSnippetTitleChars) +
         std::string(kEllipsis);
}

namespace {

void RequireUrl(const CaptureContext& ctx) {
  if (text::IsBlank(ctx.source_url)) {
    throw Error(ErrorCode::kMissingUrl, "capture context has no URL");
  }
  if (!IsAbsoluteUrl(ctx.source_url)) {
    throw Error(ErrorCode::kInvalidArgument,
                "source URL '" + ctx.source_url + "' is not absolute");
  }
  text::RequireUtf8(ctx.page_title, "page title");
}

std::string DefaultTitle(const CaptureContext& ctx) {
  return text::IsBlank(ctx.page_title) ? ctx.source_url
                                       : std::string(ctx.page_title);
}

}  // namespace

Provenance Capturer::MakeProvenance(const CaptureContext& ctx,
                                    bool keep_viewport) {
  Provenance p;
  p.source_url = ctx.source_url;
  p.page_title = ctx.page_title;
  p.captured_at = ctx.captured_at.value_or(store_.clock().Now());
  if (ctx.favicon && !ctx.favicon->empty()) {
    p.favicon = assets_.Put(*ctx.favicon, SniffMediaType(*ctx.favicon)).hash;
  }
  if (keep_viewport && ctx.viewport_screenshot &&
      !ctx.viewport_screenshot->empty()) {
    p.viewport_screenshot =
        assets_
            .Put(*ctx.viewport_screenshot,
                 SniffMediaType(*ctx.viewport_screenshot))
            .hash;
  }
  return p;
}

CaptureResult Capturer::Commit(const ProjectId& project, std::string_view op,
                               Card card, const Placement& placement) {
  card.parent_id = placement.parent;
  auto [revision, stored] = store_.Edit(
      project, placement.expected_revision, [&](ProjectEditor& editor) {
        return editor.InsertCard(op, std::move(card), placement.position);
      });
  return CaptureResult{std::move(stored), revision};
}

CaptureResult Capturer::CaptureText(const ProjectId& project,
                                    std::string_view selection,
                                    const CaptureContext& ctx,
                                    const Placement& placement) {
  if (text::IsBlank(selection)) {
    throw Error(ErrorCode::kEmptySelection, "text selection is empty");
  }
  text::RequireUtf8(selection, "selection");
  RequireUrl(ctx);
  Card card;
  card.kind = CardKind::kTextSnippet;
  card.title = SnippetTitle(selection);
  card.representations.emplace(ReprKind::kExtractedText,
                               std::string(selection));
  card.provenance = MakeProvenance(ctx, /*keep_viewport=*/false);
  return Commit(project, ops::kCaptureText, std::move(card), placement);
}

CaptureResult Capturer::CaptureImage(const ProjectId& project,
                                     std::string_view image_bytes,
                                     std::string_view media_type,
                                     const CaptureContext& ctx,
                                     const Placement& placement) {
  if (image_bytes.empty()) {
    throw Error(ErrorCode::kEmptyPayload, "image is empty");
  }
  if (!AssetStore::IsCaptureImageType(media_type)) {
    throw Error(ErrorCode::kUnsupportedMediaType,
                "'" + std::string(media_type) + "' is not a supported image");
  }
  RequireUrl(ctx);
  Card card;
  card.kind = CardKind::kImage;
  card.title = DefaultTitle(ctx);
  card.representations.emplace(ReprKind::kRegionImage,
                               assets_.Put(image_bytes, media_type).hash);
  card.provenance = MakeProvenance(ctx, /*keep_viewport=*/false);
  return Commit(project, ops::kCaptureImage, std::move(card), placement);
}

CaptureResult Capturer::CaptureBookmark(
    const ProjectId& project, const CaptureContext& ctx,
    const std::optional<std::string>& page_archive,
    const Placement& placement) {
  RequireUrl(ctx);
  Card card;
  card.kind = CardKind::kBookmark;
  card.title = DefaultTitle(ctx);
  if (page_archive && !page_archive->empty()) {
    card.representations.emplace(
        ReprKind::kPageArchive,
        assets_.Put(*page_archive, "application/octet-stream").hash);
  }
  card.provenance = MakeProvenance(ctx, /*keep_viewport=*/true);
  return Commit(project, ops::kCaptureBookmark, std::move(card), placement);
}

CaptureResult Capturer::CaptureRegion(const ProjectId& project,
                                      std::span<const LayoutNode> nodes,
                                      const BoundingBox& bbox,
                                      std::string_view region_screenshot,
                                      const CaptureContext& ctx,
                                      const Placement& placement,
                                      std::string_view media_type) {
  if (region_screenshot.empty()) {
    throw Error(ErrorCode::kEmptyPayload, "region screenshot is empty");
  }
  if (!AssetStore::IsCaptureImageType(media_type)) {
    throw Error(ErrorCode::kUnsupportedMediaType,
                "'" + std::string(media_type) + "' is not a supported image");
  }
  RequireUrl(ctx);
  Card card;
  card.kind = CardKind::kRegionClip;
  card.title = DefaultTitle(ctx);
  if (const LayoutNode* match = ResolveRegion(nodes, bbox)) {
    text::RequireUtf8(match->markup, "node markup");
    text::RequireUtf8(match->text, "node text");
    card.representations.emplace(ReprKind::kHtmlFragment, match->markup);
    if (!text::IsBlank(match->text)) {
      card.representations.emplace(ReprKind::kExtractedText, match->text);
    }
  }
  card.representations.emplace(
      ReprKind::kRegionImage, assets_.Put(region_screenshot, media_type).hash);
  card.provenance = MakeProvenance(ctx, /*keep_viewport=*/false);
  return Commit(project, ops::kCaptureRegion, std::move(card), placement);
}

TabImportResult Capturer::ImportTabs(
    const ProjectId& project, std::span<const CaptureContext> tabs,
    std::optional<std::int64_t> expected_revision) {
  if (tabs.empty()) throw Error(ErrorCode::kEmptyTabList, "no tabs to import");
  TabImportResult result;
  std::vector<Card> pending;
  for (std::size_t i = 0; i < tabs.size(); ++i) {
    try {
      RequireUrl(tabs[i]);
    } catch (const Error& e) {
      result.skipped.push_back({i, e.code(), e.what()});
      continue;
    }
    Card card;
    card.kind = CardKind::kBookmark;
    card.title = DefaultTitle(tabs[i]);
    card.provenance = MakeProvenance(tabs[i], /*keep_viewport=*/true);
    pending.push_back(std::move(card));
  }
  auto [revision, cards] =
      store_.Edit(project, expected_revision, [&](ProjectEditor& editor) {
        std::vector<Card> inserted;
        for (Card& card : pending) {
          inserted.push_back(editor.InsertCard(ops::kImportTab, std::move(card)));
        }
        return inserted;
      });
  result.cards = std::move(cards);
  result.revision = revision;
  return result;
}

CaptureResult Capturer::AttachRecognizedText(
    const ProjectId& project, const CardId& card_id, TextRecognizer& engine,
    std::optional<std::int64_t> expected_revision) {
  std::shared_ptr<const ProjectState> snapshot = store_.Snapshot(project);
  const Card& card = snapshot->Get(card_id);
  const std::string* image = card.FindRepresentation(ReprKind::kRegionImage);
  if (!image) {
    throw Error(ErrorCode::kNoImage, "card " + card_id.value() + " has no image");
  }
  if (card.FindRepresentation(ReprKind::kExtractedText)) {
    throw Error(ErrorCode::kAlreadyHasText,
                "card " + card_id.value() + " already has extracted text");
  }
  const AssetStore::Blob blob = assets_.Get(*image);
  std::string recognized;
  try {
    recognized = engine.Recognize(blob.bytes, blob.media_type);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kEngineFailure,
                std::string("text recognition failed: ") + e.what());
  }
  if (!text::IsValidUtf8(recognized)) {
    throw Error(ErrorCode::kEngineFailure,
                "text recognition produced invalid UTF-8");
  }
  auto [revision, stored] =
      store_.Edit(project, expected_revision, [&](ProjectEditor& editor) {
        return editor.AttachRecognizedText(card_id, recognized);
      });
  return CaptureResult{std::move(stored), revision};
}

}  // namespace clipnest
