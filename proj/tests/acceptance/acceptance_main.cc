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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// line fails.
//
//   clipnest_acceptance [--sequences N] [--seed S]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <iostream>
#include <latch>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "clipnest/http_server.h"
#include "clipnest/journal.h"
#include "clipnest/snapshot.h"
#include "clipnest/stats.h"
#include "test_support.h"

namespace clipnest {
namespace {

namespace t = testing;

// Pinned limits.
constexpr int kSequences = 10'000;
constexpr int kMaxSequenceLength = 500;
constexpr double kTreeBudgetSeconds = 60.0;
constexpr int kResolverTrees = 1'000;
constexpr std::size_t kResolverMaxNodes = 200;
constexpr int kQueriesPerTree = 10;
constexpr int kStatsProjects = 100;
constexpr double kSeRelativeTolerance = 1e-12;  // mean is compared with ==
constexpr int kConcurrentClients = 32;

using Wall = std::chrono::steady_clock;

double SecondsSince(Wall::time_point start) {
  return std::chrono::duration<double>(Wall::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void Report(const std::string& name, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << name << ": " << o.detail
            << "\n";
  for (const std::string& note : o.notes) std::cout << "      note: " << note << "\n";
  std::cout.flush();
  failures += !o.pass;
}

// ---------------------------------------------------------------------------
// Random operation sequences (tree invariants + determinism)

struct SequenceTotals {
  std::int64_t ops = 0;
  std::int64_t rejected = 0;
  std::int64_t max_cards = 0;
  double op_seconds = 0;
  double check_seconds = 0;
  double export_seconds = 0;
  Outcome tree;
  Outcome determinism;
};

std::string OpName(int kind) {
  static const char* kNames[] = {"insert", "move",  "reorder",   "delete",
                                 "annotate", "color", "collapse", "pin"};
  return kNames[kind];
}

void RunSequence(t::Rng& rng, int seq, const t::AssetPool& pool,
                 const AssetStore& assets, Clock& clock_source, IdSource& ids,
                 SequenceTotals& totals) {
  ProjectInfo info;
  info.id = ProjectId("p_seq" + std::to_string(seq));
  info.name = "sequence " + std::to_string(seq);
  info.created_at = clock_source.Now();

  ProjectState state(info);
  std::vector<JournalEvent> journal;
  ProjectEditor editor(state, journal, clock_source, ids);
  t::ShadowForest shadow;
  std::vector<std::string> live;

  const int length = static_cast<int>(t::Uniform(rng, 1, kMaxSequenceLength));
  const auto start = Wall::now();
  for (int step = 0; step < length && totals.tree.pass; ++step) {
    const int roll = static_cast<int>(t::Uniform(rng, 0, 99));
    const int kind = roll < 34 ? 0 : roll < 52 ? 1 : roll < 60 ? 2 : roll < 66 ? 3
                   : roll < 76 ? 4 : roll < 84 ? 5 : roll < 94 ? 6 : 7;
    std::string target = "c_missing";
    if (!live.empty() && !t::Chance(rng, 0.04)) target = t::Pick(rng, live);
    const bool target_known = shadow.cards().contains(target);
    std::optional<std::string> parent;
    if (!live.empty() && t::Chance(rng, kind == 0 ? 0.6 : 0.7)) {
      parent = t::Chance(rng, 0.02) ? std::string("c_gone") : t::Pick(rng, live);
    }
    auto opt_card = [](const std::optional<std::string>& s) {
      return s ? std::optional<CardId>(CardId(*s)) : std::nullopt;
    };

    std::optional<ErrorCode> expected, actual;
    const std::int64_t revision_before = state.revision();
    if (kind == 0) {
      const CardKind card_kind =
          t::Chance(rng, 0.25) ? CardKind::kFolder
                               : t::Pick(rng, std::vector<CardKind>(
                                                  std::begin(kAllCardKinds),
                                                  std::end(kAllCardKinds)));
      std::optional<std::int64_t> position;
      if (t::Chance(rng, 0.5)) {
        position = t::Uniform(rng, -1, shadow.SiblingCount(parent) + 1);
      }
      expected = shadow.CheckInsert(card_kind, parent, position);
      std::string id;
      actual = t::ThrownCode([&] {
        if (card_kind == CardKind::kFolder || card_kind == CardKind::kManual) {
          id = editor.CreateCard(card_kind, "t", opt_card(parent), position).id.value();
        } else {
          Card card = t::RandomContentCard(rng, card_kind, pool);
          card.parent_id = opt_card(parent);
          id = editor.InsertCard(t::InsertOpFor(card_kind), card, position).id.value();
        }
      });
      if (!actual) {
        shadow.Insert(id, card_kind, parent, position);
        live.push_back(id);
      }
    } else if (kind == 1) {
      const std::int64_t pos = t::Uniform(rng, -1, shadow.SiblingCount(parent) + 1);
      expected = shadow.CheckMove(target, parent, pos);
      actual = t::ThrownCode([&] { editor.MoveCard(CardId(target), opt_card(parent), pos); });
      if (!actual) shadow.Move(target, parent, pos);
    } else if (kind == 2) {
      const std::optional<std::string> own =
          target_known ? shadow.cards().at(target).parent : std::nullopt;
      const std::int64_t pos = t::Uniform(rng, -1, shadow.SiblingCount(own));
      expected = shadow.CheckReorder(target, pos);
      actual = t::ThrownCode([&] { editor.ReorderCard(CardId(target), pos); });
      if (!actual) shadow.Move(target, own, pos);
    } else if (kind == 3) {
      if (!target_known) expected = ErrorCode::kUnknownCard;
      actual = t::ThrownCode([&] { editor.DeleteCard(CardId(target)); });
      if (!actual) {
        shadow.Delete(target);
        live = t::ShadowIds(shadow);
      }
    } else if (kind == 7) {
      actual = t::ThrownCode([&] { editor.SetPinned(t::Chance(rng, 0.5)); });
    } else {
      if (!target_known) expected = ErrorCode::kUnknownCard;
      actual = t::ThrownCode([&] {
        const CardId id(target);
        if (kind == 4) {
          editor.SetAnnotation(id, t::RandomWords(rng, 10));
        } else if (kind == 5) {
          std::optional<Color> color;
          if (t::Chance(rng, 0.8)) {
            color = t::Pick(rng, std::vector<Color>(std::begin(kAllColors),
                                                    std::end(kAllColors)));
          }
          editor.SetColor(id, color);
        } else {
          editor.SetCollapsed(id, t::Chance(rng, 0.5));
        }
      });
    }

    ++totals.ops;
    totals.rejected += actual.has_value();
    const auto check_start = Wall::now();
    std::string violation;
    if (actual != expected) {
      violation = "error mismatch";
    } else if (state.revision() != static_cast<std::int64_t>(journal.size()) ||
               state.revision() != revision_before + (actual ? 0 : 1)) {
      violation = "revision does not track the journal";
    } else if (std::string m = t::ShadowMismatch(state, shadow); !m.empty()) {
      violation = m;
    } else if (std::string f = t::ForestViolation(state, live); !f.empty()) {
      violation = f;
    }
    if (!violation.empty()) {
      totals.tree.Fail("sequence " + std::to_string(seq) + " step " +
                       std::to_string(step) + " (" + OpName(kind) + "): " + violation);
    }
    totals.max_cards = std::max<std::int64_t>(totals.max_cards, state.card_count());
    totals.check_seconds += SecondsSince(check_start);
  }
  totals.op_seconds += SecondsSince(start);
  if (!totals.tree.pass) return;

  const auto export_start = Wall::now();
  const std::string live_doc = ExportSnapshot(state, assets);
  const ProjectState replayed = ReplayJournal(ProjectState(info), journal);
  if (ExportSnapshot(replayed, assets) != live_doc) {
    totals.determinism.Fail("sequence " + std::to_string(seq) +
                            ": replayed export differs from live export");
  }
  ProjectState imported = ParseSnapshot(live_doc, assets);
  imported.mutable_info().id = ProjectId("p_imported");
  const std::string round_trip = ExportSnapshot(imported, assets);
  if (SnapshotComparisonBody(round_trip) != SnapshotComparisonBody(live_doc)) {
    totals.determinism.Fail("sequence " + std::to_string(seq) +
                            ": export -> import -> export changed bytes");
  }
  totals.export_seconds += SecondsSince(export_start);
}

void TreeAndDeterminism(int sequences, std::uint64_t seed) {
  t::Rng rng(seed);
  AssetStore assets;
  const t::AssetPool pool(assets, 6);
  SteppingClock clock{Timestamp{1'772'366'400'000}, 7};
  SequentialIdSource ids;
  SequenceTotals totals;
  for (int seq = 0; seq < sequences && totals.tree.pass; ++seq) {
    RunSequence(rng, seq, pool, assets, clock, ids, totals);
  }

  // The same round trip through the store's real import path.
  {
    ModelStore store(clock, ids, assets);
    const ProjectId p = store.CreateProject("import path").id;
    store.Edit(p, std::nullopt, [&](ProjectEditor& e) {
      t::GrowRandomProject(rng, e, pool, 300);
    });
    const std::string doc = store.Export(p);
    const ProjectId copy = store.Import(doc).id;
    if (SnapshotComparisonBody(store.Export(copy)) != SnapshotComparisonBody(doc) ||
        store.Export(copy) == doc) {
      totals.determinism.Fail("ModelStore::Import round trip differs");
    }
  }

  std::ostringstream tree;
  tree.precision(1);
  tree << std::fixed << sequences << " sequences (length 1.." << kMaxSequenceLength
       << "), " << totals.ops << " ops (" << totals.rejected
       << " rejected as predicted), largest tree " << totals.max_cards
       << " cards, invariants checked after every op, "
       << totals.op_seconds << " s including " << totals.check_seconds
       << " s of checking (limit " << kTreeBudgetSeconds << " s)";
  if (totals.tree.pass && totals.op_seconds >= kTreeBudgetSeconds) {
    totals.tree.Fail("over time budget");
  }
  totals.tree.detail = totals.tree.pass ? tree.str() : totals.tree.detail + "; " + tree.str();
  Report("tree invariants", totals.tree);

  std::ostringstream det;
  det.precision(1);
  det << std::fixed << sequences
      << " sequences: export(live) == export(replay(journal)) byte for byte, and "
         "export -> import -> export identical modulo project id, "
      << totals.export_seconds << " s";
  if (!totals.tree.pass) totals.determinism.Fail("not run: tree invariants failed");
  totals.determinism.detail =
      totals.determinism.pass ? det.str() : totals.determinism.detail;
  Report("determinism", totals.determinism);
}

// ---------------------------------------------------------------------------
// Resolver oracle

std::optional<std::int64_t> Resolve(const std::vector<t::OracleNode>& nodes,
                                    const t::IRect& box) {
  std::vector<LayoutNode> layout;
  for (const t::OracleNode& n : nodes) layout.push_back(t::ToLayoutNode(n));
  const LayoutNode* hit =
      ResolveRegion(layout, BoundingBox::Make(box.x, box.y, box.w, box.h));
  if (!hit) return std::nullopt;
  return hit->node_id;
}

bool SameFraction(const t::Fraction& a, std::int64_t num, std::int64_t den) {
  return t::Compare(a, t::Fraction{num, den}) == 0;
}

void ResolverOracle(std::uint64_t seed) {
  Outcome o;
  t::Rng rng(seed);
  std::int64_t queries = 0, none = 0, ties = 0;
  for (int tree = 0; tree < kResolverTrees && o.pass; ++tree) {
    const auto nodes = t::RandomLayoutTree(rng, kResolverMaxNodes);
    for (int q = 0; q < kQueriesPerTree; ++q) {
      const t::IRect box = t::RandomBox(rng, nodes);
      const auto expected = t::BruteForceResolve(nodes, box);
      const auto actual = Resolve(nodes, box);
      ++queries;
      none += !expected.has_value();
      if (expected) {
        const t::Fraction best = t::ExactIoU(
            {nodes[*expected].rect}, box);
        int equal = 0;
        for (const t::OracleNode& n : nodes) {
          equal += t::Compare(t::ExactIoU(n.rect, box), best) == 0;
        }
        ties += equal > 1;
      }
      if (actual != expected) {
        o.Fail("tree " + std::to_string(tree) + " query " + std::to_string(q) +
               ": engine " + (actual ? std::to_string(*actual) : "none") +
               ", oracle " + (expected ? std::to_string(*expected) : "none"));
        break;
      }
    }
  }

  // Worked examples over root > {A > A1, B}.
  const std::vector<t::OracleNode> worked = {{0, 0, {0, 0, 100, 100}},
                                             {1, 1, {0, 0, 50, 100}},
                                             {2, 2, {0, 0, 50, 50}},
                                             {3, 1, {50, 0, 50, 100}}};
  const t::IRect exact{0, 0, 50, 100}, nested{10, 10, 30, 30}, straddle{40, 0, 20, 100};
  if (!(Resolve(worked, exact) == 1 &&
        SameFraction(t::ExactIoU(worked[1].rect, exact), 1, 1))) {
    o.Fail("worked example 1 (exact match) did not give A at IoU 1.0");
  }
  if (!(Resolve(worked, nested) == 2 &&
        SameFraction(t::ExactIoU(worked[2].rect, nested), 36, 100) &&
        SameFraction(t::ExactIoU(worked[1].rect, nested), 18, 100) &&
        SameFraction(t::ExactIoU(worked[0].rect, nested), 9, 100))) {
    o.Fail("worked example 2 did not give A1 with IoU 0.36/0.18/0.09");
  }
  const bool tie = SameFraction(t::ExactIoU(worked[1].rect, straddle), 1000, 6000) &&
                   SameFraction(t::ExactIoU(worked[3].rect, straddle), 1000, 6000) &&
                   Resolve({worked[1], worked[3]}, straddle) == 1 &&
                   Resolve({worked[3], worked[1]}, straddle) == 1;
  if (!tie) o.Fail("worked example 3: A/B tie at 1000/6000 not broken towards A");
  const auto full = Resolve(worked, straddle);
  const bool full_agrees = full == t::BruteForceResolve(worked, straddle);
  if (!full_agrees) o.Fail("worked example 3: engine and oracle disagree on the full node set");
  o.notes.push_back(
      "worked example 3: A and B tie at IoU 1000/6000 and the tie goes to A, but over "
      "the full node set the root scores 2000/10000 = 0.2 > 1/6 and both engine and "
      "oracle return the root (node " +
      (full ? std::to_string(*full) : std::string("none")) +
      "), not A as the example states");

  if (o.pass) {
    o.detail = std::to_string(kResolverTrees) + " trees (<= " +
               std::to_string(kResolverMaxNodes) + " nodes), " +
               std::to_string(queries) + " queries, 100% agreement with the exact "
               "brute-force scorer (" + std::to_string(none) +
               " below threshold, " + std::to_string(ties) +
               " decided by tie-break); worked examples: IoU 1.0; 0.36/0.18/0.09; "
               "tie at 1000/6000 reproduced exactly";
  }
  Report("resolver oracle", o);
}

// ---------------------------------------------------------------------------
// Stats oracle

std::string WordsOf(std::size_t n) {
  std::string out;
  for (std::size_t i = 0; i < n; ++i) out += i ? "  word" : "word";
  return out;
}

void StatsOracle(std::uint64_t seed) {
  Outcome o;
  t::Rng rng(seed);
  SteppingClock clock{Timestamp{0}};
  SequentialIdSource ids;
  AssetStore assets;
  const t::AssetPool pool(assets);
  ModelStore store(clock, ids, assets);

  std::vector<ProjectStats> engine;
  std::vector<t::NaiveProjectStats> naive;
  for (int i = 0; i < kStatsProjects && o.pass; ++i) {
    const ProjectId p = store.CreateProject("random " + std::to_string(i)).id;
    store.Edit(p, std::nullopt, [&](ProjectEditor& e) {
      t::GrowRandomProject(rng, e, pool,
                           static_cast<std::size_t>(t::Uniform(rng, 0, 80)),
                           t::Uniform(rng, 0, 10) / 10.0);
    });
    engine.push_back(ComputeProjectStats(*store.Snapshot(p)));
    naive.push_back(t::NaiveStats(t::AllCards(*store.Snapshot(p))));
    if (std::string m = t::StatsMismatch(engine.back(), naive.back()); !m.empty()) {
      o.Fail("project " + std::to_string(i) + ": " + m + " differs from the naive recount");
    }
  }
  const CorpusReport random_report = ComputeCorpusReport(engine);
  if (o.pass) {
    if (std::string m = t::CorpusMismatch(random_report, t::NaiveCorpusReport(naive));
        !m.empty()) {
      o.Fail("corpus report on random projects: " + m + " differs");
    }
  }

  // Seeded corpus: annotation word lengths chosen per kind, spread over
  // three eligible projects plus one ineligible project that must not count.
  const std::map<CardKind, std::vector<std::size_t>> seeded = {
      {CardKind::kTextSnippet, {9, 9, 9, 9, 9, 9}},
      {CardKind::kImage, {2, 4, 4, 4, 5, 5, 7, 9}},
      {CardKind::kRegionClip, {1, 2, 3, 4, 5, 6, 7}},
      {CardKind::kBookmark, {12}},
      {CardKind::kManual, {3, 8, 8, 21, 13}},
      {CardKind::kFolder, {}}};
  std::vector<ProjectStats> corpus;
  std::vector<ProjectId> seeded_projects;
  for (int i = 0; i < 3; ++i) {
    seeded_projects.push_back(store.CreateProject("seeded " + std::to_string(i)).id);
  }
  std::size_t slot = 0;
  for (const auto& [kind, lengths] : seeded) {
    for (std::size_t len : lengths) {
      const ProjectId p = seeded_projects[slot++ % seeded_projects.size()];
      store.Edit(p, std::nullopt, [&](ProjectEditor& e) {
        Card card = t::RandomContentCard(rng, kind, pool);
        card.annotation = WordsOf(len);
        e.InsertCard(t::InsertOpFor(kind), card);
      });
    }
  }
  // Unannotated filler so every seeded project is eligible.
  for (const ProjectId& p : seeded_projects) {
    store.Edit(p, std::nullopt, [&](ProjectEditor& e) {
      for (int k = 0; k < 3; ++k) e.CreateCard(CardKind::kManual, "filler", std::nullopt);
    });
    corpus.push_back(ComputeProjectStats(*store.Snapshot(p)));
  }
  const ProjectId small = store.CreateProject("ineligible").id;
  store.Edit(small, std::nullopt, [&](ProjectEditor& e) {
    e.SetAnnotation(e.CreateCard(CardKind::kManual, "x", std::nullopt).id, WordsOf(100));
  });
  corpus.push_back(ComputeProjectStats(*store.Snapshot(small)));

  const CorpusReport report = ComputeCorpusReport(corpus);
  for (const KindAnnotationStats& k : report.annotation_by_kind) {
    const std::vector<std::size_t>& xs = seeded.at(k.kind);
    // Exact: mean = S/n, SE^2 = (n*Q - S^2) / (n^2 (n-1)) in integers.
    std::int64_t n = static_cast<std::int64_t>(xs.size()), s = 0, q = 0;
    for (std::size_t x : xs) {
      s += static_cast<std::int64_t>(x);
      q += static_cast<std::int64_t>(x * x);
    }
    const double mean = n ? static_cast<double>(s) / static_cast<double>(n) : 0.0;
    const double se =
        n < 2 ? 0.0
              : std::sqrt(static_cast<double>(n * q - s * s) /
                          static_cast<double>(n * n * (n - 1)));
    const bool se_ok = se == 0.0 ? k.standard_error == 0.0
                                 : std::abs(k.standard_error - se) <=
                                       kSeRelativeTolerance * se;
    if (k.n != xs.size() || k.mean != mean || !se_ok) {
      std::ostringstream why;
      why.precision(17);
      why << "seeded " << CardKindName(k.kind) << ": n=" << k.n << " mean=" << k.mean
          << " se=" << k.standard_error << ", expected n=" << xs.size()
          << " mean=" << mean << " se=" << se;
      o.Fail(why.str());
    }
  }
  if (report.annotation_by_kind[0].mean != 9.0 ||
      report.annotation_by_kind[0].standard_error != 0.0 ||
      report.annotation_by_kind[1].mean != 5.0 ||
      report.annotation_by_kind[1].standard_error != std::sqrt(32.0 / 7.0) / std::sqrt(8.0)) {
    o.Fail("hand-checked rows (TEXT_SNIPPET 9/0, IMAGE 5/sqrt(4/7)) not reproduced");
  }
  if (report.eligible_project_count != 3 || report.project_count != 4) {
    o.Fail("seeded corpus eligibility: expected 3 of 4 projects");
  }

  if (o.pass) {
    o.detail = std::to_string(kStatsProjects) +
               " random projects match the naive recount field for field; corpus report "
               "matches exactly; seeded corpus means exact, standard errors within " +
               "1e-12 relative of the exact-integer formula";
  }
  std::cout << "\n" << AnnotationLengthTable(report) << "\n";
  Report("stats oracle", o);
}

// ---------------------------------------------------------------------------
// Concurrency

Json Envelope(std::int64_t revision, const std::string& title) {
  return Json{{"expected_revision", revision},
              {"op", "create_card"},
              {"args", {{"kind", "MANUAL"}, {"title", title}}}};
}

void Concurrency() {
  Outcome o;
  Service service;
  const ProjectId p = service.store().CreateProject("race").id;

  // In process, repeated at several starting revisions.
  int rounds = 0;
  for (std::int64_t base = 0; base < 20 && o.pass; ++base, ++rounds) {
    std::latch go(kConcurrentClients);
    std::atomic<int> ok{0}, conflicts{0}, other{0};
    std::vector<std::thread> threads;
    for (int i = 0; i < kConcurrentClients; ++i) {
      threads.emplace_back([&, i] {
        go.arrive_and_wait();
        const auto code = t::ThrownCode([&] {
          service.ApplyMutation(p, MutationEnvelope::FromJson(
                                       Envelope(base, std::to_string(i))));
        });
        if (!code) {
          ++ok;
        } else if (*code == ErrorCode::kRevisionConflict) {
          ++conflicts;
        } else {
          ++other;
        }
      });
    }
    for (std::thread& th : threads) th.join();
    const std::int64_t after = service.store().Snapshot(p)->revision();
    if (ok != 1 || conflicts != kConcurrentClients - 1 || other != 0 || after != base + 1) {
      o.Fail("in-process round " + std::to_string(base) + ": " + std::to_string(ok) +
             " successes, " + std::to_string(conflicts) + " conflicts, revision " +
             std::to_string(after));
    }
  }

  // Over HTTP.
  HttpServer server(service);
  const int port = server.Start();
  const std::int64_t base = service.store().Snapshot(p)->revision();
  std::latch go(kConcurrentClients);
  std::vector<int> statuses(kConcurrentClients, -1);
  std::vector<std::string> bodies(kConcurrentClients);
  std::vector<std::thread> threads;
  for (int i = 0; i < kConcurrentClients; ++i) {
    threads.emplace_back([&, i] {
      httplib::Client client("127.0.0.1", port);
      client.set_read_timeout(30, 0);
      const std::string body = Envelope(base, "http " + std::to_string(i)).dump();
      go.arrive_and_wait();
      auto res = client.Post("/projects/" + p.value() + "/mutations", body,
                             "application/json");
      if (res) {
        statuses[i] = res->status;
        bodies[i] = res->body;
      } else {
        bodies[i] = httplib::to_string(res.error());
      }
    });
  }
  for (std::thread& th : threads) th.join();
  server.Stop();
  const int ok = static_cast<int>(std::count(statuses.begin(), statuses.end(), 200));
  int conflicts = 0;
  for (int i = 0; i < kConcurrentClients; ++i) {
    if (statuses[i] != 409) continue;
    const Json err = ParseJson(bodies[i]);
    conflicts += err.at("error") == "RevisionConflict" &&
                 err.at("current_revision") == base + 1;
  }
  const std::int64_t after = service.store().Snapshot(p)->revision();
  for (int i = 0; i < kConcurrentClients; ++i) {
    if (statuses[i] < 0) o.notes.push_back("client " + std::to_string(i) + ": " + bodies[i]);
  }
  if (ok != 1 || conflicts != kConcurrentClients - 1 || after != base + 1) {
    o.Fail("http: " + std::to_string(ok) + " x 200, " + std::to_string(conflicts) +
           " x 409 RevisionConflict, revision " + std::to_string(base) + " -> " +
           std::to_string(after));
  }
  if (o.pass) {
    o.detail = "N=" + std::to_string(kConcurrentClients) +
               " envelopes at one revision: 1 success, " +
               std::to_string(kConcurrentClients - 1) +
               " RevisionConflict, revision +1 (" + std::to_string(rounds) +
               " in-process rounds and 1 round over HTTP)";
  }
  Report("concurrency", o);
}

// ---------------------------------------------------------------------------
// Headphone walkthrough over HTTP

class Api {
 public:
  Api(int port, Outcome& o) : client_("127.0.0.1", port), o_(o) {}

  Json Call(const std::string& method, const std::string& path, const Json& body,
            int want) {
    httplib::Result res = method == "GET"
                              ? client_.Get(path)
                              : client_.Post(path, body.dump(), "application/json");
    if (!res) {
      o_.Fail(method + " " + path + ": no response");
      return Json::object();
    }
    if (res->status != want) {
      o_.Fail(method + " " + path + ": status " + std::to_string(res->status) +
              " (wanted " + std::to_string(want) + ") " + res->body);
      return Json::object();
    }
    last_revision_ = res->get_header_value(kRevisionHeader);
    return ParseJson(res->body);
  }
  Json Get(const std::string& path) { return Call("GET", path, nullptr, 200); }
  const std::string& last_revision() const { return last_revision_; }

 private:
  httplib::Client client_;
  Outcome& o_;
  std::string last_revision_;
};

std::string B64(std::string_view bytes) { return Base64Encode(bytes); }

Json Node(int id, int depth, int x, int y, int w, int h, const std::string& markup,
          const std::string& text) {
  return Json{{"id", id},
              {"depth", depth},
              {"rect", {{"x", x}, {"y", y}, {"width", w}, {"height", h}}},
              {"markup", markup},
              {"text", text}};
}

void Expect(Outcome& o, bool ok, const std::string& what) {
  if (!ok) o.Fail(what);
}

void HeadphoneScenario() {
  Outcome o;
  SteppingClock clock{Timestamp{1'772'366'400'000}};
  Service service(ServiceOptions{std::nullopt, 64, &clock, nullptr, nullptr});
  HttpServer server(service);
  Api api(server.Start(), o);

  const std::string png_viewport = t::kTinyPng + "viewport";
  const std::string png_favicon = t::kTinyPng + "favicon";
  const std::string png_region = t::kTinyPng + "listicle-region";
  const std::string png_review = t::kTinyPng + "review-region";

  // 1. The project.
  const Json project =
      api.Call("POST", "/projects", Json{{"name", "Wireless headphone shopping"}}, 201);
  const std::string pid = project.value("id", "");
  const std::string base = "/projects/" + pid;
  Expect(o, api.last_revision() == "0", "new project is at revision 0");
  Expect(o, api.Get(base + "/overview").value("cards", Json::array()).empty(),
         "new project has no cards");

  // 2. Bookmark two product pages.
  auto bookmark = [&](const std::string& url, const std::string& title) {
    return api.Call("POST", base + "/capture/bookmark",
                    Json{{"ctx",
                          {{"url", url},
                           {"title", title},
                           {"favicon_b64", B64(png_favicon)},
                           {"viewport_b64", B64(png_viewport)}}},
                         {"bytes_b64", B64("<html>" + title + "</html>")}},
                    201)
        .value("card", Json::object());
  };
  const Json sony = bookmark("https://www.amazon.com/dp/B09XS7JWHH", "Sony WH-1000XM5");
  const Json bose = bookmark("https://www.bose.com/p/qc-earbuds-ii", "Bose QuietComfort Earbuds II");

  // 3. A one-off recommendation from a social media comment.
  const Json jabra =
      api.Call("POST", base + "/capture/text",
               Json{{"text", "Jabra Elite 85t are underrated, great call quality"},
                    {"ctx", {{"url", "https://www.reddit.com/r/headphones/comments/abc"},
                             {"title", "Best earbuds under $200?"}}}},
               201)
          .value("card", Json::object());

  // 4. Part of a listicle, clipped with a bounding box.
  const Json listicle_nodes = Json::array(
      {Node(1, 0, 0, 0, 1200, 4000, "<body>...</body>", "Best wireless headphones"),
       Node(2, 1, 100, 200, 800, 3600, "<article>...</article>", "..."),
       Node(3, 2, 100, 200, 800, 600, "<section><h2>1. Apple AirPods Pro</h2></section>",
            "1. Apple AirPods Pro"),
       Node(4, 2, 100, 800, 800, 600, "<section><h2>2. Sennheiser Momentum 4</h2></section>",
            "2. Sennheiser Momentum 4")});
  const Json airpods =
      api.Call("POST", base + "/capture/region",
               Json{{"nodes", listicle_nodes},
                    {"bbox", {{"x", 110}, {"y", 210}, {"width", 780}, {"height", 580}}},
                    {"bytes_b64", B64(png_region)},
                    {"ctx", {{"url", "https://www.rtings.com/headphones/best/wireless"},
                             {"title", "The 7 Best Wireless Headphones"}}}},
               201)
          .value("card", Json::object());
  Expect(o, airpods.dump().find("1. Apple AirPods Pro</h2>") != std::string::npos,
         "region clip resolved to the listicle section");
  Expect(o, airpods.value("provenance", Json::object()).value("viewport_screenshot", Json()) .is_null(),
         "region clip keeps no viewport screenshot");

  // 5. Reorder by preference: the Jabra comment goes first.
  auto mutate = [&](const std::string& op, const Json& args) {
    const std::int64_t rev = std::stoll(api.last_revision().empty() ? "0" : api.last_revision());
    return api.Call("POST", base + "/mutations",
                    Json{{"expected_revision", rev}, {"op", op}, {"args", args}}, 200);
  };
  const std::string sony_id = sony.value("id", ""), bose_id = bose.value("id", "");
  const std::string jabra_id = jabra.value("id", ""), airpods_id = airpods.value("id", "");
  mutate("reorder_card", {{"card_id", jabra_id}, {"position", 0}});

  // 6. Clip a critical review and drag it into the Sony card; add a note too.
  const Json review =
      api.Call("POST", base + "/capture/region",
               Json{{"nodes", Json::array({Node(1, 0, 0, 0, 1000, 2000, "<body/>", ""),
                                           Node(7, 1, 50, 300, 600, 200,
                                                "<div class=\"review\">Clamping force hurts after an hour</div>",
                                                "Clamping force hurts after an hour")})},
                    {"bbox", {{"x", 50}, {"y", 300}, {"width", 600}, {"height", 200}}},
                    {"bytes_b64", B64(png_review)},
                    {"ctx", {{"url", "https://www.amazon.com/dp/B09XS7JWHH#reviews"},
                             {"title", "Sony WH-1000XM5 reviews"}}}},
               201)
          .value("card", Json::object());
  const std::string review_id = review.value("id", "");
  mutate("move_card", {{"card_id", review_id}, {"parent_id", sony_id}, {"position", 0}});
  const Json price =
      api.Call("POST", base + "/capture/text",
               Json{{"text", "$399 is too expensive unless on sale"},
                    {"ctx", {{"url", "https://www.amazon.com/dp/B09XS7JWHH"},
                             {"title", "Sony WH-1000XM5"}}}},
               201)
          .value("card", Json::object());
  const std::string price_id = price.value("id", "");
  mutate("move_card", {{"card_id", price_id}, {"parent_id", sony_id}, {"position", 1}});
  mutate("set_annotation", {{"card_id", sony_id}, {"annotation", "best ANC so far"}});

  // 7. Folders for the two kinds of headphones.
  const std::string over =
      mutate("create_card", {{"kind", "FOLDER"}, {"title", "Over-ear"}})
          .value("result", Json::object()).value("card", Json::object()).value("id", "");
  const std::string buds =
      mutate("create_card", {{"kind", "FOLDER"}, {"title", "Earbuds"}})
          .value("result", Json::object()).value("card", Json::object()).value("id", "");
  mutate("move_card", {{"card_id", sony_id}, {"parent_id", over}, {"position", 0}});
  mutate("move_card", {{"card_id", bose_id}, {"parent_id", buds}, {"position", 0}});
  mutate("move_card", {{"card_id", jabra_id}, {"parent_id", buds}, {"position", 1}});
  mutate("move_card", {{"card_id", airpods_id}, {"parent_id", buds}, {"position", 2}});

  // 8. Reorder inside Earbuds and compress the Over-ear folder.
  mutate("reorder_card", {{"card_id", airpods_id}, {"position", 0}});
  mutate("set_collapsed", {{"card_id", over}, {"collapsed", true}});
  Expect(o, api.last_revision() == "18", "final revision is 18, got " + api.last_revision());

  // Hand-computed final state:
  //   Over-ear (FOLDER, collapsed)
  //     Sony WH-1000XM5 (BOOKMARK) > [review clip, price snippet]
  //   Earbuds (FOLDER)
  //     AirPods listicle clip, Bose (BOOKMARK), Jabra snippet
  const Json overview = api.Get(base + "/overview");
  const Json roots = overview.value("cards", Json::array());
  Expect(o, roots.size() == 2, "overview has two root folders");
  if (roots.size() == 2) {
    const Json& f1 = roots[0];
    const Json& f2 = roots[1];
    Expect(o, f1.value("title", "") == "Over-ear" && f1.value("collapsed", false) &&
                  f1.value("child_count", -1) == 1,
           "Over-ear is first, collapsed, with one child");
    Expect(o, f2.value("title", "") == "Earbuds" && !f2.value("collapsed", true) &&
                  f2.value("child_count", -1) == 3,
           "Earbuds is second, expanded, with three children");
    const Json over_children = f1.value("children", Json::array());
    Expect(o, over_children.size() == 1, "Over-ear lists the Sony card");
    if (over_children.size() == 1) {
      const Json& s = over_children[0];
      Expect(o, s.value("card_id", "") == sony_id && s.value("child_count", -1) == 2 &&
                    s.value("children", Json::array()).empty(),
             "Sony bundles its two clips without listing them");
      Expect(o, s.value("preview_grid", Json::object()) ==
                    Json({{"squares_shown", 2}, {"overflow", 0}}),
             "Sony preview grid shows 2 squares");
      Expect(o, s.value("header_image", "") == Sha256Hex(png_viewport),
             "Sony header image is the viewport screenshot");
      Expect(o, s.value("source_host", "") == "www.amazon.com", "Sony source host");
      Expect(o, s.value("annotation_excerpt", "") == "best ANC so far", "Sony note");
    }
    std::vector<std::string> order;
    for (const Json& c : f2.value("children", Json::array())) {
      order.push_back(c.value("card_id", ""));
    }
    Expect(o, order == std::vector<std::string>{airpods_id, bose_id, jabra_id},
           "Earbuds order is AirPods, Bose, Jabra");
  }

  const Json peek_sony = api.Get("/cards/" + sony_id + "/peek");
  const Json sony_children = peek_sony.value("children", Json::array());
  Expect(o, sony_children.size() == 2, "peek Sony shows 2 children");
  if (sony_children.size() == 2) {
    Expect(o, sony_children[0].value("child_id", "") == review_id &&
                  sony_children[0].value("thumbnail", Json::object()).value("asset", "") ==
                      Sha256Hex(png_review),
           "first miniature is the review clip image");
    Expect(o, sony_children[1].value("child_id", "") == price_id &&
                  sony_children[1].value("thumbnail", Json::object()).value("excerpt", "") ==
                      "$399 is too expensive unless on sale",
           "second miniature is the price snippet text");
  }
  Expect(o, api.Get("/cards/" + buds + "/peek").value("children", Json::array()).size() == 3,
         "peek Earbuds shows 3 children");
  Expect(o, api.Get("/cards/" + over + "/peek").value("children", Json::array()).size() == 1,
         "peek Over-ear shows 1 child");
  Expect(o, api.Get("/cards/" + jabra_id + "/peek").value("children", Json::array()).empty(),
         "peek Jabra shows no children");

  std::vector<std::pair<std::string, int>> flat;
  for (const Json& e : api.Get(base + "/reader").value("entries", Json::array())) {
    flat.emplace_back(e.at("card").value("id", ""), e.value("depth", -1));
  }
  const std::vector<std::pair<std::string, int>> want_flat = {
      {over, 0},  {sony_id, 1},    {review_id, 2}, {price_id, 2},
      {buds, 0},  {airpods_id, 1}, {bose_id, 1},   {jabra_id, 1}};
  Expect(o, flat == want_flat, "reader flattening of the whole project");
  std::vector<std::pair<std::string, int>> sub;
  for (const Json& e :
       api.Get(base + "/reader?root=" + sony_id).value("entries", Json::array())) {
    sub.emplace_back(e.at("card").value("id", ""), e.value("depth", -1));
  }
  Expect(o, sub == (std::vector<std::pair<std::string, int>>{
                       {sony_id, 0}, {review_id, 1}, {price_id, 1}}),
         "reader flattening under Sony");

  // The journal replays to the same tree.
  const std::string live = service.ExportProject(ProjectId(pid));
  const ProjectState replayed =
      ReplayJournal(ProjectState(service.store().Snapshot(ProjectId(pid))->info()),
                    service.store().Journal(ProjectId(pid)));
  Expect(o, ExportSnapshot(replayed, service.assets()) == live,
         "journal replay reproduces the scenario export");
  server.Stop();

  if (o.pass) {
    o.detail = "18 revisions over HTTP (project, 2 bookmarks, text clip, listicle region "
               "clip, reorder, review clip nested into Sony, 2 folders, moves, reorder, "
               "collapse); overview, peek counts 2/3/1/0 and reader flattening match";
  }
  Report("headphone scenario", o);
}

}  // namespace
}  // namespace clipnest

int main(int argc, char** argv) {
  int sequences = clipnest::kSequences;
  std::uint64_t seed = 20260301;
  for (int i = 1; i + 1 < argc; i += 2) {
    if (std::strcmp(argv[i], "--sequences") == 0) sequences = std::atoi(argv[i + 1]);
    if (std::strcmp(argv[i], "--seed") == 0) seed = std::strtoull(argv[i + 1], nullptr, 10);
  }
  std::cout << "clipnest acceptance (seed " << seed << ")\n";
  clipnest::TreeAndDeterminism(sequences, seed);
  clipnest::ResolverOracle(seed + 1);
  clipnest::StatsOracle(seed + 2);
  clipnest::Concurrency();
  clipnest::HeadphoneScenario();
  std::cout << (clipnest::failures == 0 ? "all criteria passed"
                                        : std::to_string(clipnest::failures) +
                                              " criteria failed")
            << "\n";
  return clipnest::failures == 0 ? 0 : 1;
}
