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

// Structural metrics over projects and corpora of projects.
//
// Conventions:
//   * root cards sit at depth 1, so a project with any nesting has
//     max_depth >= 2 and "deeper than two levels" means max_depth >= 3;
//   * a card is annotated when its annotation is non-blank;
//   * annotation length is the number of maximal non-whitespace runs;
//   * standard error is the sample standard deviation over sqrt(n), and 0
//     when fewer than two samples exist;
//   * corpus aggregates only cover projects with at least three non-folder
//     cards.

#ifndef CLIPNEST_STATS_H_
#define CLIPNEST_STATS_H_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "clipnest/model.h"
#include "clipnest/serialization.h"

namespace clipnest {

inline constexpr std::size_t kMinEligibleNonFolderCards = 3;

// Annotation counts for one node position: roots (no parent), internal
// (parent and children) and leaves (parent, no children).
struct PositionTally {
  std::size_t cards = 0;
  std::size_t annotated = 0;

  double rate() const {
    return cards == 0 ? 0.0 : static_cast<double>(annotated) / cards;
  }
  friend bool operator==(const PositionTally&, const PositionTally&) = default;
};

struct ProjectStats {
  std::size_t card_count = 0;
  std::size_t non_folder_count = 0;
  std::map<CardKind, std::size_t> counts_by_kind;  // every kind present
  int max_depth = 0;
  bool has_hierarchy = false;
  std::size_t annotated_count = 0;
  double annotated_fraction = 0;
  std::map<CardKind, std::vector<std::size_t>> annotation_word_lengths;
  std::size_t folder_parent_count = 0;
  std::size_t container_parent_count = 0;
  PositionTally root;
  PositionTally internal;
  PositionTally leaf;

  bool eligible() const {
    return non_folder_count >= kMinEligibleNonFolderCards;
  }
};

ProjectStats ComputeProjectStats(const ProjectState& state);

struct KindAnnotationStats {
  CardKind kind = CardKind::kManual;
  std::size_t n = 0;
  double mean = 0;
  double standard_error = 0;
};

struct CorpusReport {
  std::size_t project_count = 0;
  std::size_t eligible_project_count = 0;
  double fraction_with_hierarchy = 0;
  double fraction_depth_gt2 = 0;
  // Shares of parent cards (cards with at least one child) that are folders
  // and non-folder containers.
  double fraction_parents_folder = 0;
  double fraction_parents_container = 0;
  std::vector<KindAnnotationStats> annotation_by_kind;  // one per kind
  PositionTally root;
  PositionTally internal;
  PositionTally leaf;
};

// Independent of the order of `projects`.
CorpusReport ComputeCorpusReport(std::span<const ProjectStats> projects);

Json ProjectStatsToJson(const ProjectStats& stats);
Json CorpusReportToJson(const CorpusReport& report);

// Average annotation length in words per card kind, with standard errors:
// "kind,n,mean_words,standard_error" rows.
std::string AnnotationLengthCsv(const CorpusReport& report);
// The same table laid out for a terminal.
std::string AnnotationLengthTable(const CorpusReport& report);

}  // namespace clipnest

#endif  // CLIPNEST_STATS_H_
