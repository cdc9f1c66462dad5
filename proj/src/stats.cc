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

#include "clipnest/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace clipnest {

ProjectStats ComputeProjectStats(const ProjectState& state) {
  ProjectStats s;
  for (CardKind kind : kAllCardKinds) {
    s.counts_by_kind[kind] = 0;
    s.annotation_word_lengths[kind] = {};
  }
  for (const DepthEntry& e : state.DepthFirst()) {
    const Card& card = *e.card;
    ++s.card_count;
    ++s.counts_by_kind[card.kind];
    if (card.kind != CardKind::kFolder) ++s.non_folder_count;
    s.max_depth = std::max(s.max_depth, e.depth + 1);

    const bool annotated = !text::IsBlank(card.annotation);
    if (annotated) {
      ++s.annotated_count;
      s.annotation_word_lengths[card.kind].push_back(
          text::WordCount(card.annotation));
    }
    const bool has_children = !state.Children(card.id).empty();
    if (has_children) {
      if (card.kind == CardKind::kFolder) {
        ++s.folder_parent_count;
      } else {
        ++s.container_parent_count;
      }
    }
    PositionTally& slot =
        !card.parent_id ? s.root : (has_children ? s.internal : s.leaf);
    ++slot.cards;
    if (annotated) ++slot.annotated;
  }
  s.has_hierarchy = s.max_depth >= 2;
  s.annotated_fraction =
      s.card_count == 0 ? 0.0
                        : static_cast<double>(s.annotated_count) / s.card_count;
  return s;
}

namespace {

double Ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

void Accumulate(PositionTally& into, const PositionTally& from) {
  into.cards += from.cards;
  into.annotated += from.annotated;
}

// Integer moments, so the result does not depend on summation order.
struct Moments {
  std::uint64_t n = 0;
  unsigned __int128 sum = 0;
  unsigned __int128 sum_sq = 0;
};

}  // namespace

CorpusReport ComputeCorpusReport(std::span<const ProjectStats> projects) {
  CorpusReport r;
  r.project_count = projects.size();
  std::size_t with_hierarchy = 0, deep = 0, folder_parents = 0,
              container_parents = 0;
  std::map<CardKind, Moments> moments;
  for (const ProjectStats& p : projects) {
    if (!p.eligible()) continue;
    ++r.eligible_project_count;
    if (p.has_hierarchy) ++with_hierarchy;
    if (p.max_depth >= 3) ++deep;
    folder_parents += p.folder_parent_count;
    container_parents += p.container_parent_count;
    for (const auto& [kind, lengths] : p.annotation_word_lengths) {
      Moments& m = moments[kind];
      for (std::size_t words : lengths) {
        ++m.n;
        m.sum += words;
        m.sum_sq += static_cast<unsigned __int128>(words) * words;
      }
    }
    Accumulate(r.root, p.root);
    Accumulate(r.internal, p.internal);
    Accumulate(r.leaf, p.leaf);
  }
  r.fraction_with_hierarchy = Ratio(with_hierarchy, r.eligible_project_count);
  r.fraction_depth_gt2 = Ratio(deep, r.eligible_project_count);
  r.fraction_parents_folder =
      Ratio(folder_parents, folder_parents + container_parents);
  r.fraction_parents_container =
      Ratio(container_parents, folder_parents + container_parents);

  for (CardKind kind : kAllCardKinds) {
    const Moments m = moments[kind];
    KindAnnotationStats k{kind, static_cast<std::size_t>(m.n), 0, 0};
    if (m.n > 0) {
      k.mean = static_cast<double>(m.sum) / static_cast<double>(m.n);
    }
    if (m.n > 1) {
      // Sample variance = (n*sum_sq - sum^2) / (n*(n-1)); the numerator is
      // non-negative by Cauchy-Schwarz.
      const unsigned __int128 numer = m.n * m.sum_sq - m.sum * m.sum;
      const double variance =
          static_cast<double>(numer) /
          (static_cast<double>(m.n) * static_cast<double>(m.n - 1));
      k.standard_error =
          std::sqrt(variance) / std::sqrt(static_cast<double>(m.n));
    }
    r.annotation_by_kind.push_back(k);
  }
  return r;
}

namespace {

Json TallyToJson(const PositionTally& t) {
  return Json{{"cards", t.cards}, {"annotated", t.annotated}, {"rate", t.rate()}};
}

}  // namespace

Json ProjectStatsToJson(const ProjectStats& s) {
  Json counts = Json::object();
  Json lengths = Json::object();
  for (const auto& [kind, n] : s.counts_by_kind) counts[CardKindName(kind)] = n;
  for (const auto& [kind, v] : s.annotation_word_lengths) {
    lengths[CardKindName(kind)] = v;
  }
  return Json{{"card_count", s.card_count},
              {"non_folder_count", s.non_folder_count},
              {"counts_by_kind", std::move(counts)},
              {"max_depth", s.max_depth},
              {"has_hierarchy", s.has_hierarchy},
              {"annotated_count", s.annotated_count},
              {"annotated_fraction", s.annotated_fraction},
              {"annotation_word_lengths", std::move(lengths)},
              {"folder_parent_count", s.folder_parent_count},
              {"container_parent_count", s.container_parent_count},
              {"eligible", s.eligible()},
              {"annotation_rate_by_position",
               Json{{"root", TallyToJson(s.root)},
                    {"internal", TallyToJson(s.internal)},
                    {"leaf", TallyToJson(s.leaf)}}}};
}

Json CorpusReportToJson(const CorpusReport& r) {
  Json kinds = Json::array();
  for (const KindAnnotationStats& k : r.annotation_by_kind) {
    kinds.push_back(Json{{"kind", CardKindName(k.kind)},
                         {"n", k.n},
                         {"mean_words", k.mean},
                         {"standard_error", k.standard_error}});
  }
  return Json{{"project_count", r.project_count},
              {"eligible_project_count", r.eligible_project_count},
              {"fraction_with_hierarchy", r.fraction_with_hierarchy},
              {"fraction_depth_gt2", r.fraction_depth_gt2},
              {"fraction_parents_folder", r.fraction_parents_folder},
              {"fraction_parents_container", r.fraction_parents_container},
              {"annotation_length_by_kind", std::move(kinds)},
              {"annotation_rate_by_position",
               Json{{"root", TallyToJson(r.root)},
                    {"internal", TallyToJson(r.internal)},
                    {"leaf", TallyToJson(r.leaf)}}}};
}

std::string AnnotationLengthCsv(const CorpusReport& r) {
  std::ostringstream out;
  out << "kind,n,mean_words,standard_error\n";
  for (const KindAnnotationStats& k : r.annotation_by_kind) {
    char row[160];
    std::snprintf(row, sizeof row, "%s,%zu,%.6f,%.6f\n",
                  std::string(CardKindName(k.kind)).c_str(), k.n, k.mean,
                  k.standard_error);
    out << row;
  }
  return out.str();
}

std::string AnnotationLengthTable(const CorpusReport& r) {
  std::ostringstream out;
  out << "Average annotation length (words) by card kind\n";
  out << "kind            n      mean   std.err\n";
  for (const KindAnnotationStats& k : r.annotation_by_kind) {
    char row[160];
    std::snprintf(row, sizeof row, "%-13s %5zu %9.3f %9.3f\n",
                  std::string(CardKindName(k.kind)).c_str(), k.n, k.mean,
                  k.standard_error);
    out << row;
  }
  return out.str();
}

}  // namespace clipnest
