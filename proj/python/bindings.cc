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

// clipnest._core: the service and its pure helpers. Structured values cross
// the boundary as plain dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clipnest/capture.h"
#include "clipnest/geometry.h"
#include "clipnest/service.h"
#include "clipnest/snapshot.h"
#include "clipnest/stats.h"

namespace py = pybind11;
using namespace clipnest;

namespace {

Json ToJson(const py::handle& obj) {
  py::object dumps = py::module_::import("json").attr("dumps");
  return ParseJson(dumps(obj).cast<std::string>());
}

py::object FromJson(const Json& j) {
  py::object loads = py::module_::import("json").attr("loads");
  return loads(j.dump());
}

Rect RectFrom(const std::tuple<double, double, double, double>& r) {
  return Rect{std::get<0>(r), std::get<1>(r), std::get<2>(r), std::get<3>(r)};
}

class PyService {
 public:
  PyService(std::optional<std::string> data_dir, std::int64_t checkpoint_interval) {
    ServiceOptions options;
    if (data_dir) options.data_dir = *data_dir;
    options.checkpoint_interval = checkpoint_interval;
    service_ = std::make_unique<Service>(options);
  }

  py::object CreateProject(const std::string& name) {
    return FromJson(ProjectInfoToJson(service_->store().CreateProject(name)));
  }

  py::object Mutate(const std::string& project, const py::dict& envelope) {
    const MutationEnvelope e = MutationEnvelope::FromJson(ToJson(envelope));
    MutationOutcome out;
    {
      py::gil_scoped_release unlocked;
      out = service_->ApplyMutation(ProjectId(project), e);
    }
    return FromJson(Json{{"revision", out.revision}, {"result", std::move(out.result)}});
  }

  py::object Capture(const std::string& project, const std::string& kind,
                     const py::dict& payload) {
    MutationOutcome out = service_->Capture(ProjectId(project), kind, ToJson(payload));
    Json j = std::move(out.result);
    j["revision"] = out.revision;
    return FromJson(j);
  }

  std::string Export(const std::string& project) {
    return service_->ExportProject(ProjectId(project));
  }

  py::object Import(const std::string& document) {
    return FromJson(ProjectInfoToJson(service_->ImportProject(document)));
  }

  py::object Projects() { return FromJson(service_->ProjectsJson()); }
  py::object Overview(const std::string& project) {
    return FromJson(service_->OverviewJson(ProjectId(project)));
  }
  py::object Reader(const std::string& project, std::optional<std::string> root) {
    std::optional<CardId> r;
    if (root) r = CardId(*root);
    return FromJson(service_->ReaderJson(ProjectId(project), r));
  }
  py::object Peek(const std::string& card, std::optional<std::string> project) {
    std::optional<ProjectId> p;
    if (project) p = ProjectId(*project);
    return FromJson(service_->PeekJson(CardId(card), p));
  }
  py::object ProjectStats(const std::string& project) {
    return FromJson(service_->ProjectStatsJson(ProjectId(project)));
  }
  py::object CorpusReport() { return FromJson(service_->CorpusReportJson()); }

  py::object PutAsset(const py::bytes& bytes, const std::string& media_type) {
    const AssetInfo info = service_->assets().Put(std::string(bytes), media_type);
    return FromJson(Json{{"hash", info.hash},
                         {"media_type", info.media_type},
                         {"byte_length", info.byte_length}});
  }
  py::tuple GetAsset(const std::string& hash) {
    AssetStore::Blob blob = service_->assets().Get(hash);
    return py::make_tuple(py::bytes(blob.bytes), blob.media_type);
  }

 private:
  std::unique_ptr<Service> service_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hierarchical web clipping store: projects, cards, capture and statistics.";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result(
      [&m] { return py::exception<Error>(m, "ClipnestError"); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object revision = e.current_revision()
                                ? py::object(py::int_(*e.current_revision()))
                                : py::object(py::none());
      py::tuple args = py::make_tuple(std::string(ErrorCodeName(e.code())),
                                      std::string(e.what()), revision);
      PyErr_SetObject(error.get_stored().ptr(), args.ptr());
    }
  });

  py::class_<PyService>(m, "Service")
      .def(py::init<std::optional<std::string>, std::int64_t>(),
           py::arg("data_dir") = py::none(), py::arg("checkpoint_interval") = 64)
      .def("create_project", &PyService::CreateProject, py::arg("name"))
      .def("mutate", &PyService::Mutate, py::arg("project_id"), py::arg("envelope"))
      .def("capture", &PyService::Capture, py::arg("project_id"), py::arg("kind"),
           py::arg("payload"))
      .def("export_project", &PyService::Export, py::arg("project_id"))
      .def("import_project", &PyService::Import, py::arg("document"))
      .def("projects", &PyService::Projects)
      .def("overview", &PyService::Overview, py::arg("project_id"))
      .def("reader", &PyService::Reader, py::arg("project_id"),
           py::arg("root") = py::none())
      .def("peek", &PyService::Peek, py::arg("card_id"),
           py::arg("project_id") = py::none())
      .def("project_stats", &PyService::ProjectStats, py::arg("project_id"))
      .def("corpus_report", &PyService::CorpusReport)
      .def("put_asset", &PyService::PutAsset, py::arg("data"), py::arg("media_type"))
      .def("get_asset", &PyService::GetAsset, py::arg("hash"));

  m.def(
      "iou",
      [](const std::tuple<double, double, double, double>& a,
         const std::tuple<double, double, double, double>& b) {
        return IntersectionOverUnion(RectFrom(a), RectFrom(b));
      },
      py::arg("a"), py::arg("b"), "Intersection over union of two (x, y, w, h) boxes.");

  m.def(
      "resolve_region",
      [](const py::list& nodes, const std::tuple<double, double, double, double>& bbox)
          -> py::object {
        const std::vector<LayoutNode> layout = LayoutNodesFromJson(ToJson(nodes));
        const Rect r = RectFrom(bbox);
        const LayoutNode* hit =
            ResolveRegion(layout, BoundingBox::Make(r.x, r.y, r.width, r.height));
        if (!hit) return py::none();
        return FromJson(Json{{"id", hit->node_id},
                             {"depth", hit->depth},
                             {"markup", hit->markup},
                             {"text", hit->text}});
      },
      py::arg("nodes"), py::arg("bbox"),
      "Best-matching layout node for a selection box, or None.");

  m.def("word_count", [](const std::string& s) { return text::WordCount(s); }, py::arg("text"));

  m.def(
      "corpus_report_from_snapshots",
      [](const std::vector<std::string>& documents, const std::string& format) -> py::object {
        std::vector<ProjectStats> stats;
        for (const std::string& doc : documents) {
          stats.push_back(ComputeProjectStats(ParseSnapshot(doc, ManifestCatalog(doc))));
        }
        const clipnest::CorpusReport report = ComputeCorpusReport(stats);
        if (format == "csv") return py::str(AnnotationLengthCsv(report));
        if (format == "table") return py::str(AnnotationLengthTable(report));
        return FromJson(CorpusReportToJson(report));
      },
      py::arg("documents"), py::arg("format") = "json");
}
