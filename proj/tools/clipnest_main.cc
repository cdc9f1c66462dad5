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

// clipnest: run the local service or work on a data directory offline.
//
//   clipnest serve  [--data-dir D] [--host H] [--port P]
//   clipnest list   [--data-dir D]
//   clipnest export <project-id> [-o FILE] [--data-dir D]
//   clipnest import <FILE> [--data-dir D]
//   clipnest stats  <DATA-DIR | SNAPSHOT...> [--csv | --table]

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>

#include "CLI11.hpp"
#include "clipnest/http_server.h"
#include "clipnest/service.h"
#include "clipnest/snapshot.h"
#include "clipnest/stats.h"

namespace {

namespace fs = std::filesystem;
using namespace clipnest;

fs::path DefaultDataDir() {
  if (const char* env = std::getenv("CLIPNEST_DATA_DIR"); env && *env) {
    return env;
  }
  if (const char* xdg = std::getenv("XDG_DATA_HOME"); xdg && *xdg) {
    return fs::path(xdg) / "clipnest";
  }
  const char* home = std::getenv("HOME");
  return fs::path(home ? home : ".") / ".local" / "share" / "clipnest";
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::vector<ProjectStats> StatsFromPaths(const std::vector<fs::path>& paths) {
  std::vector<ProjectStats> stats;
  for (const fs::path& path : paths) {
    if (fs::is_directory(path)) {
      ServiceOptions options;
      options.data_dir = path;
      Service service(options);
      for (const ProjectListing& p : service.store().ListProjects()) {
        stats.push_back(
            ComputeProjectStats(*service.store().Snapshot(p.info.id)));
      }
      continue;
    }
    const std::string doc = ReadFile(path);
    stats.push_back(ComputeProjectStats(ParseSnapshot(doc, ManifestCatalog(doc))));
  }
  return stats;
}

HttpServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server) g_server->Stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clipnest: hierarchical web clipping service"};
  app.require_subcommand(1);

  std::string data_dir = DefaultDataDir().string();
  auto add_data_dir = [&](CLI::App* sub) {
    sub->add_option("--data-dir", data_dir, "Data directory")
        ->capture_default_str();
  };

  CLI::App* serve = app.add_subcommand("serve", "Run the local HTTP service");
  add_data_dir(serve);
  std::string host = "127.0.0.1";
  int port = 7465;
  std::int64_t checkpoint_interval = 64;
  serve->add_option("--host", host, "Bind address")->capture_default_str();
  serve->add_option("--port", port, "Port (0 picks one)")->capture_default_str();
  serve->add_option("--checkpoint-interval", checkpoint_interval,
                    "Revisions between checkpoints")
      ->capture_default_str();

  CLI::App* list = app.add_subcommand("list", "List projects");
  add_data_dir(list);

  CLI::App* export_cmd = app.add_subcommand("export", "Export a project");
  add_data_dir(export_cmd);
  std::string project_id;
  std::string output;
  export_cmd->add_option("project", project_id, "Project id")->required();
  export_cmd->add_option("-o,--output", output, "Output file (default stdout)");

  CLI::App* import_cmd = app.add_subcommand("import", "Import a snapshot");
  add_data_dir(import_cmd);
  std::string input;
  import_cmd->add_option("file", input, "Snapshot file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* stats_cmd = app.add_subcommand(
      "stats", "Corpus statistics over data directories or snapshot files");
  std::vector<std::string> stats_paths;
  bool csv = false;
  bool table = false;
  stats_cmd->add_option("paths", stats_paths, "Data directory or snapshots")
      ->required()
      ->check(CLI::ExistingPath);
  auto* csv_flag = stats_cmd->add_flag("--csv", csv, "Annotation length CSV");
  stats_cmd->add_flag("--table", table, "Annotation length table")
      ->excludes(csv_flag);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*serve) {
      ServiceOptions options;
      options.data_dir = data_dir;
      options.checkpoint_interval = checkpoint_interval;
      Service service(options);
      HttpServer server(service);
      const int bound = server.Bind(host, port);
      std::cout << "clipnest listening on http://" << host << ":" << bound
                << " (data " << data_dir << ")" << std::endl;
      g_server = &server;
      std::signal(SIGINT, HandleSignal);
      std::signal(SIGTERM, HandleSignal);
      server.Run();
      g_server = nullptr;
      return 0;
    }

    if (*stats_cmd) {
      std::vector<fs::path> paths(stats_paths.begin(), stats_paths.end());
      const std::vector<ProjectStats> stats = StatsFromPaths(paths);
      const CorpusReport report = ComputeCorpusReport(stats);
      if (csv) {
        std::cout << AnnotationLengthCsv(report);
      } else if (table) {
        std::cout << AnnotationLengthTable(report);
      } else {
        std::cout << CorpusReportToJson(report).dump(2) << "\n";
      }
      return 0;
    }

    ServiceOptions options;
    options.data_dir = data_dir;
    Service service(options);
    if (*list) {
      std::cout << service.ProjectsJson().dump(2) << "\n";
    } else if (*export_cmd) {
      const std::string doc = service.ExportProject(ProjectId(project_id));
      if (output.empty()) {
        std::cout << doc;
      } else {
        std::ofstream(output, std::ios::binary) << doc;
      }
    } else if (*import_cmd) {
      const ProjectInfo info = service.ImportProject(ReadFile(input));
      std::cout << info.id.value() << "\n";
    }
  } catch (const Error& e) {
    std::cerr << "clipnest: " << ErrorCodeName(e.code()) << ": " << e.what()
              << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "clipnest: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
