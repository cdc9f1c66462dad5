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

#ifndef CLIPNEST_COMMON_H_
#define CLIPNEST_COMMON_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clipnest {

// Every failure the library reports. The HTTP layer maps these onto status
// codes, the Python module onto exception classes.
enum class ErrorCode {
  kEmptyName,
  kUnknownProject,
  kUnknownCard,
  kUnknownParent,
  kFolderInsideBundle,
  kPositionOutOfRange,
  kCycleRejected,
  kUnknownColor,
  kInvalidKind,
  kInvalidArgument,
  kSchemaInvalid,
  kInvariantViolation,
  kMissingAsset,
  kGapInSequence,
  kUnknownOp,
  kEmptySelection,
  kEmptyPayload,
  kUnsupportedMediaType,
  kMissingUrl,
  kEmptyTabList,
  kNoImage,
  kAlreadyHasText,
  kEngineFailure,
  kNotFound,
  kMalformedHash,
  kRevisionConflict,
  kAmbiguousCard,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  // Set only for kRevisionConflict.
  std::optional<std::int64_t> current_revision() const {
    return current_revision_;
  }

  static Error RevisionConflict(std::int64_t current);

 private:
  ErrorCode code_;
  std::optional<std::int64_t> current_revision_;
};

// Identifier wrapper so that project ids and card ids cannot be mixed up.
template <typename Tag>
class StrongId {
 public:
  StrongId() = default;
  explicit StrongId(std::string value) : value_(std::move(value)) {}

  const std::string& value() const { return value_; }
  bool empty() const { return value_.empty(); }

  friend bool operator==(const StrongId&, const StrongId&) = default;
  friend auto operator<=>(const StrongId&, const StrongId&) = default;

 private:
  std::string value_;
};

struct ProjectIdTag {};
struct CardIdTag {};
using ProjectId = StrongId<ProjectIdTag>;
using CardId = StrongId<CardIdTag>;

// Milliseconds since the Unix epoch, UTC.
struct Timestamp {
  std::int64_t millis = 0;

  friend bool operator==(const Timestamp&, const Timestamp&) = default;
  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

// "2026-03-01T12:00:00.000Z"
std::string FormatTimestamp(Timestamp t);
// Accepts the format produced by FormatTimestamp; throws kSchemaInvalid.
Timestamp ParseTimestamp(std::string_view text);

class Clock {
 public:
  virtual ~Clock() = default;
  virtual Timestamp Now() = 0;
};

class SystemClock : public Clock {
 public:
  Timestamp Now() override;
};

// Advances by a fixed step on every call. Used by tests and replays.
class SteppingClock : public Clock {
 public:
  explicit SteppingClock(Timestamp start, std::int64_t step_millis = 1000)
      : next_(start), step_(step_millis) {}
  Timestamp Now() override;

 private:
  std::mutex mu_;
  Timestamp next_;
  std::int64_t step_;
};

class IdSource {
 public:
  virtual ~IdSource() = default;
  // Returns a fresh identifier starting with `prefix`.
  virtual std::string Next(std::string_view prefix) = 0;
};

// 64 random bits rendered as hex.
class RandomIdSource : public IdSource {
 public:
  RandomIdSource();
  explicit RandomIdSource(std::uint64_t seed) : rng_(seed) {}
  std::string Next(std::string_view prefix) override;

 private:
  std::mutex mu_;
  std::mt19937_64 rng_;
};

// prefix + "1", prefix + "2", ...
class SequentialIdSource : public IdSource {
 public:
  std::string Next(std::string_view prefix) override;

 private:
  std::mutex mu_;
  std::uint64_t counter_ = 0;
};

namespace text {

bool IsValidUtf8(std::string_view s);
// Throws kInvalidArgument naming `field` when `s` is not valid UTF-8.
void RequireUtf8(std::string_view s, std::string_view field);

std::string_view Trim(std::string_view s);
bool IsBlank(std::string_view s);

// Number of maximal runs of non-whitespace characters.
std::size_t WordCount(std::string_view s);

// Number of code points in a valid UTF-8 string.
std::size_t CodePointCount(std::string_view s);

// First `max_chars` code points of `s`.
std::string TruncateCodePoints(std::string_view s, std::size_t max_chars);

}  // namespace text

}  // namespace clipnest

template <typename Tag>
struct std::hash<clipnest::StrongId<Tag>> {
  std::size_t operator()(const clipnest::StrongId<Tag>& id) const noexcept {
    return std::hash<std::string>{}(id.value());
  }
};

#endif  // CLIPNEST_COMMON_H_
