#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ecoscope/abandonment.hpp"
#include "ecoscope/advisor.hpp"
#include "ecoscope/cli.hpp"
#include "ecoscope/depgraph.hpp"
#include "ecoscope/incidents.hpp"
#include "ecoscope/popularity.hpp"
#include "ecoscope/snapshot.hpp"
#include "ecoscope/squatting.hpp"

namespace py = pybind11;
using namespace ecoscope;

PYBIND11_MODULE(_core, m) {
    m.doc() = "package ecosystem risk analysis core";

    py::register_exception<Error>(m, "EcoscopeError");

    py::enum_<Ecosystem>(m, "Ecosystem")
        .value("NPM", Ecosystem::Npm)
        .value("PYPI", Ecosystem::PyPI);

    py::class_<PackageRecord>(m, "PackageRecord")
        .def(py::init<>())
        .def_readwrite("name", &PackageRecord::name)
        .def_readwrite("ecosystem", &PackageRecord::ecosystem)
        .def_readwrite("latest_version", &PackageRecord::latest_version)
        .def_readwrite("dependencies", &PackageRecord::dependencies)
        .def_readwrite("last_release", &PackageRecord::last_release)
        .def_readwrite("downloads", &PackageRecord::downloads)
        .def_readwrite("modules", &PackageRecord::modules)
        .def_readwrite("file_hashes", &PackageRecord::file_hashes)
        .def("__repr__", [](const PackageRecord& r) {
            return "<PackageRecord '" + r.name + "'>";
        });

    py::class_<Snapshot>(m, "Snapshot")
        .def(py::init<>())
        .def_readwrite("ecosystem", &Snapshot::ecosystem)
        .def_readwrite("captured_at", &Snapshot::captured_at)
        .def_readonly("records", &Snapshot::records)
        .def_readonly("ingest_warnings", &Snapshot::ingest_warnings)
        .def("find", &Snapshot::find, py::return_value_policy::reference_internal)
        .def("__len__", [](const Snapshot& s) { return s.records.size(); });

    m.def("load_snapshot", &parse_snapshot_file, py::arg("path"));
    m.def("parse_snapshot", [](const std::string& text) {
        std::istringstream in(text);
        return parse_snapshot(in);
    });
    m.def("fold_name", [](const std::string& s) { return fold_name(s); });
    m.def("normalize_name", [](const std::string& s) { return normalize_name(s); });

    py::class_<DependencyGraph>(m, "DependencyGraph")
        .def("node_count", &DependencyGraph::node_count)
        .def("nodes", &DependencyGraph::nodes)
        .def("contains", &DependencyGraph::contains)
        .def("closure_size",
             py::overload_cast<const std::string&>(&DependencyGraph::closure_size, py::const_))
        .def("chain_depth",
             py::overload_cast<const std::string&>(&DependencyGraph::chain_depth, py::const_))
        .def("unresolved", &DependencyGraph::unresolved)
        .def("disconnected_removed", &DependencyGraph::disconnected_removed);

    m.def("build_graph", &build_graph, py::arg("snapshot"));
    m.def("prune_disconnected", &prune_disconnected, py::arg("graph"));

    py::class_<GraphStats>(m, "GraphStats")
        .def_readonly("node_count", &GraphStats::node_count)
        .def_readonly("avg_outdegree", &GraphStats::avg_outdegree)
        .def_readonly("avg_tree_size", &GraphStats::avg_tree_size)
        .def_readonly("avg_tree_depth", &GraphStats::avg_tree_depth)
        .def_readonly("disconnected_removed", &GraphStats::disconnected_removed);

    m.def("graph_summary", &graph_summary, py::arg("graph"));
    m.def("closure_size_distribution", &closure_size_distribution, py::arg("graph"));

    py::class_<PowerLawFit>(m, "PowerLawFit")
        .def_readonly("alpha", &PowerLawFit::alpha)
        .def_readonly("xmin", &PowerLawFit::xmin)
        .def_readonly("n_tail", &PowerLawFit::n_tail);

    m.def("top_share", &top_share, py::arg("snapshot"), py::arg("k"));
    m.def("count_at_least", &count_at_least, py::arg("snapshot"), py::arg("threshold"));
    m.def(
        "fit_power_law",
        [](const Snapshot& snapshot, double xmin) {
            return fit_power_law(download_sample(snapshot), xmin);
        },
        py::arg("snapshot"), py::arg("xmin"));
    m.def(
        "fit_power_law_values",
        [](std::vector<double> values, double xmin) {
            DownloadSample sample;
            sample.values = std::move(values);
            return fit_power_law(sample, xmin);
        },
        py::arg("values"), py::arg("xmin"));

    m.def("is_abandoned", &is_abandoned, py::arg("record"), py::arg("reference_time"),
          py::arg("window_days") = kAbandonmentWindowDays);

    py::class_<AbandonmentReport>(m, "AbandonmentReport")
        .def_readonly("total", &AbandonmentReport::total)
        .def_readonly("abandoned", &AbandonmentReport::abandoned)
        .def_readonly("fraction", &AbandonmentReport::fraction)
        .def_readonly("top_abandoned", &AbandonmentReport::top_abandoned)
        .def_readonly("cumulative_abandoned_downloads",
                      &AbandonmentReport::cumulative_abandoned_downloads);

    m.def("abandonment_report", &abandonment_report, py::arg("snapshot"),
          py::arg("reference_time"), py::arg("top_n"),
          py::arg("window_days") = kAbandonmentWindowDays);

    m.def(
        "edit_distance",
        [](const std::string& a, const std::string& b, bool allow_transposition) {
            return edit_distance(a, b, allow_transposition);
        },
        py::arg("a"), py::arg("b"), py::arg("allow_transposition") = false);
    m.def("candidate_pairs", &candidate_pairs, py::arg("names"), py::arg("max_distance") = 1,
          py::arg("min_length") = 0);
    m.def("short_name_saturation", &short_name_saturation, py::arg("names"),
          py::arg("length"));
    m.def("content_similarity", &content_similarity, py::arg("hashes_a"),
          py::arg("hashes_b"));

    py::class_<SquatCandidate>(m, "SquatCandidate")
        .def_readonly("subject", &SquatCandidate::subject)
        .def_readonly("target", &SquatCandidate::target)
        .def_readonly("distance", &SquatCandidate::distance)
        .def_readonly("popularity_ratio", &SquatCandidate::popularity_ratio)
        .def_readonly("content_similarity", &SquatCandidate::content_similarity)
        .def_readonly("evidence", &SquatCandidate::evidence);

    m.def("import_squat_candidates", &import_squat_candidates, py::arg("snapshot"));
    m.def("rank_typo_candidates", &rank_typo_candidates, py::arg("pairs"),
          py::arg("snapshot"));

    py::class_<AdvisorPolicy>(m, "AdvisorPolicy")
        .def(py::init<>())
        .def_readwrite("obscure_download_threshold",
                       &AdvisorPolicy::obscure_download_threshold)
        .def_readwrite("popularity_ratio_threshold",
                       &AdvisorPolicy::popularity_ratio_threshold)
        .def_readwrite("max_alert_distance", &AdvisorPolicy::max_alert_distance)
        .def_readwrite("long_name_length", &AdvisorPolicy::long_name_length)
        .def_readwrite("long_name_distance", &AdvisorPolicy::long_name_distance)
        .def_readwrite("abandonment_window_days", &AdvisorPolicy::abandonment_window_days)
        .def_readwrite("strict", &AdvisorPolicy::strict);

    py::enum_<AlertKind>(m, "AlertKind")
        .value("POSSIBLE_TYPOSQUAT", AlertKind::PossibleTyposquat)
        .value("ABANDONED_PACKAGE", AlertKind::AbandonedPackage)
        .value("IMPORT_NAME_COLLISION", AlertKind::ImportNameCollision)
        .value("UNKNOWN_PACKAGE", AlertKind::UnknownPackage);

    py::enum_<AlertSeverity>(m, "AlertSeverity")
        .value("WARN", AlertSeverity::Warn)
        .value("BLOCK_BY_DEFAULT", AlertSeverity::BlockByDefault);

    py::class_<Alert>(m, "Alert")
        .def_readonly("kind", &Alert::kind)
        .def_readonly("severity", &Alert::severity)
        .def_readonly("subject", &Alert::subject)
        .def_readonly("suggestion", &Alert::suggestion)
        .def_readonly("distance", &Alert::distance)
        .def_readonly("subject_downloads", &Alert::subject_downloads)
        .def_readonly("suggestion_downloads", &Alert::suggestion_downloads)
        .def_readonly("last_release_age_days", &Alert::last_release_age_days);

    py::class_<AdvisorIndex>(m, "AdvisorIndex")
        .def(py::init<const Snapshot&>(), py::arg("snapshot"), py::keep_alive<1, 2>());

    m.def("check_install", &check_install, py::arg("index"), py::arg("requested"),
          py::arg("policy") = AdvisorPolicy{});
    m.def("check_update", &check_update, py::arg("record"), py::arg("reference_time"),
          py::arg("policy") = AdvisorPolicy{});
    m.def("check_import", &check_import, py::arg("index"), py::arg("requested"));

    py::class_<IncidentRecord>(m, "IncidentRecord")
        .def_readonly("id", &IncidentRecord::id)
        .def_readonly("description", &IncidentRecord::description)
        .def_readonly("time_to_discovery_days", &IncidentRecord::time_to_discovery_days)
        .def_property_readonly("attack_type",
                               [](const IncidentRecord& r) { return to_string(r.attack_type); })
        .def_property_readonly("strategy",
                               [](const IncidentRecord& r) { return to_string(r.strategy); })
        .def_property_readonly("vector",
                               [](const IncidentRecord& r) { return to_string(r.vector); })
        .def_property_readonly("victims",
                               [](const IncidentRecord& r) { return to_string(r.victims); })
        .def_property_readonly("goal",
                               [](const IncidentRecord& r) { return to_string(r.goal); });

    py::class_<IncidentSummary>(m, "IncidentSummary")
        .def_readonly("count", &IncidentSummary::count)
        .def_readonly("median_ttd_days", &IncidentSummary::median_ttd_days)
        .def_readonly("mean_ttd_days", &IncidentSummary::mean_ttd_days)
        .def_readonly("by_type", &IncidentSummary::by_type)
        .def_readonly("by_strategy", &IncidentSummary::by_strategy)
        .def_readonly("by_vector", &IncidentSummary::by_vector)
        .def_readonly("by_victims", &IncidentSummary::by_victims)
        .def_readonly("by_goal", &IncidentSummary::by_goal);

    m.def("load_incidents", &load_incidents, py::return_value_policy::reference);
    m.def("incident_summary", &incident_summary, py::arg("records"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args, const std::string& input) {
            std::istringstream in(input);
            std::ostringstream out, err;
            int code = cli::run(args, in, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), py::arg("input") = std::string(),
        "Run the command-line interface in-process; returns (exit_code, stdout, stderr).");
}
