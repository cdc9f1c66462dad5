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

#include "clipnest/common.h"

#include <array>
#include <cctype>
#include <charconv>
#include <chrono>
#include <cstdio>

namespace clipnest {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyName: return "EmptyName";
    case ErrorCode::kUnknownProject: return "UnknownProject";
    case ErrorCode::kUnknownCard: return "UnknownCard";
    case ErrorCode::kUnknownParent: return "UnknownParent";
    case ErrorCode::kFolderInsideBundle: return "FolderInsideBundle";
    case ErrorCode::kPositionOutOfRange: return "PositionOutOfRange";
    case ErrorCode::kCycleRejected: return "CycleRejected";
    case ErrorCode::kUnknownColor: return "UnknownColor";
    case ErrorCode::kInvalidKind: return "InvalidKind";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSchemaInvalid: return "SchemaInvalid";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
    case ErrorCode::kMissingAsset: return "MissingAsset";
    case ErrorCode::kGapInSequence: return "GapInSequence";
    case ErrorCode::kUnknownOp: return "UnknownOp";
    case ErrorCode::kEmptySelection: return "EmptySelection";
    case ErrorCode::kEmptyPayload: return "EmptyPayload";
    case ErrorCode::kUnsupportedMediaType: return "UnsupportedMediaType";
    case ErrorCode::kMissingUrl: return "MissingUrl";
    case ErrorCode::kEmptyTabList: return "EmptyTabList";
    case ErrorCode::kNoImage: return "NoImage";
    case ErrorCode::kAlreadyHasText: return "AlreadyHasText";
    case ErrorCode::kEngineFailure: return "EngineFailure";
    case ErrorCode::kNotFound: return "NotFound";
    case ErrorCode::kMalformedHash: return "MalformedHash";
    case ErrorCode::kRevisionConflict: return "RevisionConflict";
    case ErrorCode::kAmbiguousCard: return "AmbiguousCard";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

Error Error::RevisionConflict(std::int64_t current) {
  Error e(ErrorCode::kRevisionConflict,
          "revision conflict: current revision is " + std::to_string(current));
  e.current_revision_ = current;
  return e;
}

std::string FormatTimestamp(Timestamp t) {
  using namespace std::chrono;
  const sys_time<milliseconds> tp{milliseconds{t.millis}};
  const auto day = floor<days>(tp);
  const year_month_day ymd{day};
  const hh_mm_ss<milliseconds> tod{tp - day};
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(tod.hours().count()),
                static_cast<int>(tod.minutes().count()),
                static_cast<int>(tod.seconds().count()),
                static_cast<int>(tod.subseconds().count()));
  return buf.data();
}

namespace {

bool ParseDigits(std::string_view s, std::size_t pos, std::size_t len,
                 int* out) {
  if (pos + len > s.size()) return false;
  const char* first = s.data() + pos;
  auto [ptr, ec] = std::from_chars(first, first + len, *out);
  return ec == std::errc() && ptr == first + len;
}

}  // namespace

Timestamp ParseTimestamp(std::string_view s) {
  using namespace std::chrono;
  int y, mo, d, h, mi, sec, ms;
  const bool shape_ok = s.size() == 24 && s[4] == '-' && s[7] == '-' &&
                        s[10] == 'T' && s[13] == ':' && s[16] == ':' &&
                        s[19] == '.' && s[23] == 'Z';
  if (!shape_ok || !ParseDigits(s, 0, 4, &y) || !ParseDigits(s, 5, 2, &mo) ||
      !ParseDigits(s, 8, 2, &d) || !ParseDigits(s, 11, 2, &h) ||
      !ParseDigits(s, 14, 2, &mi) || !ParseDigits(s, 17, 2, &sec) ||
      !ParseDigits(s, 20, 3, &ms)) {
    throw Error(ErrorCode::kSchemaInvalid,
                "malformed timestamp '" + std::string(s) + "'");
  }
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok() || h > 23 || mi > 59 || sec > 59) {
    throw Error(ErrorCode::kSchemaInvalid,
                "timestamp out of range '" + std::string(s) + "'");
  }
  const auto tp = sys_days{ymd} + hours{h} + minutes{mi} + seconds{sec} +
                  milliseconds{ms};
  return Timestamp{duration_cast<milliseconds>(tp.time_since_epoch()).count()};
}

Timestamp SystemClock::Now() {
  using namespace std::chrono;
  return Timestamp{duration_cast<milliseconds>(
                       system_clock::now().time_since_epoch())
                       .count()};
}

Timestamp SteppingClock::Now() {
  std::lock_guard lock(mu_);
  const Timestamp now = next_;
  next_.millis += step_;
  return now;
}

RandomIdSource::RandomIdSource() : rng_(std::random_device{}()) {}

std::string RandomIdSource::Next(std::string_view prefix) {
  std::uint64_t bits;
  {
    std::lock_guard lock(mu_);
    bits = rng_();
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx",
                static_cast<unsigned long long>(bits));
  return std::string(prefix) + buf.data();
}

std::string SequentialIdSource::Next(std::string_view prefix) {
  std::lock_guard lock(mu_);
  return std::string(prefix) + std::to_string(++counter_);
}

namespace text {

bool IsValidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t len;
    std::uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > s.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates, out of range.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) ||
        (len == 4 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF)) {
      return false;
    }
    i += len;
  }
  return true;
}

void RequireUtf8(std::string_view s, std::string_view field) {
  if (!IsValidUtf8(s)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(field) + " is not valid UTF-8");
  }
}

namespace {
bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }
}  // namespace

std::string_view Trim(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

bool IsBlank(std::string_view s) { return Trim(s).empty(); }

std::size_t WordCount(std::string_view s) {
  std::size_t words = 0;
  bool in_word = false;
  for (char c : s) {
    if (IsSpace(c)) {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++words;
    }
  }
  return words;
}

std::size_t CodePointCount(std::string_view s) {
  std::size_t n = 0;
  for (char c : s) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string TruncateCodePoints(std::string_view s, std::size_t max_chars) {
  std::size_t seen = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) {
      if (seen == max_chars) return std::string(s.substr(0, i));
      ++seen;
    }
  }
  return std::string(s);
}

}  // namespace text

}  // namespace clipnest
