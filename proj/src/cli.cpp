#include "ecoscope/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecoscope/abandonment.hpp"
#include "ecoscope/advisor.hpp"
#include "ecoscope/depgraph.hpp"
#include "ecoscope/incidents.hpp"
#include "ecoscope/popularity.hpp"
#include "ecoscope/registry.hpp"
#include "ecoscope/snapshot.hpp"
#include "ecoscope/squatting.hpp"

namespace ecoscope::cli {

namespace {

enum class Format { Human, Structured };

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct CommonOpts {
    std::string snapshot_path;
    std::string format = "human";
    bool assume_yes = false;
    std::string policy_path;

    Format fmt() const { return format == "structured" ? Format::Structured : Format::Human; }

    Snapshot load_snapshot() const {
        std::string path = snapshot_path;
        if (path.empty()) {
            if (const char* env = std::getenv("ECOSCOPE_SNAPSHOT")) path = env;
        }
        if (path.empty())
            throw Error("no snapshot given (use --snapshot or ECOSCOPE_SNAPSHOT)");
        return parse_snapshot_file(path);
    }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_snapshot = true) {
    if (with_snapshot)
        cmd->add_option("--snapshot", opts.snapshot_path, "snapshot file path");
    cmd->add_option("--format", opts.format, "output format")
        ->check(CLI::IsMember({"human", "structured"}));
    cmd->add_flag("--yes", opts.assume_yes, "assume yes at prompts");
    cmd->add_option("--policy", opts.policy_path, "advisor policy file (JSON)");
}

AdvisorPolicy load_policy(const CommonOpts& opts) {
    AdvisorPolicy policy;
    if (opts.policy_path.empty()) return policy;
    std::ifstream in(opts.policy_path);
    if (!in) throw Error("cannot open policy file: " + opts.policy_path);
    nlohmann::json j = nlohmann::json::parse(in);
    policy.obscure_download_threshold =
        j.value("obscure_download_threshold", policy.obscure_download_threshold);
    policy.popularity_ratio_threshold =
        j.value("popularity_ratio_threshold", policy.popularity_ratio_threshold);
    policy.max_alert_distance = j.value("max_alert_distance", policy.max_alert_distance);
    policy.long_name_length = j.value("long_name_length", policy.long_name_length);
    policy.long_name_distance = j.value("long_name_distance", policy.long_name_distance);
    policy.abandonment_window_days =
        j.value("abandonment_window_days", policy.abandonment_window_days);
    policy.strict = j.value("strict", policy.strict);
    return policy;
}

void print_alert(const Alert& alert, Format fmt, std::ostream& out) {
    if (fmt == Format::Structured) {
        out << "alert\tkind=" << to_string(alert.kind)
            << "\tseverity=" << to_string(alert.severity) << "\tsubject=" << alert.subject;
        if (alert.suggestion) out << "\tsuggestion=" << *alert.suggestion;
        if (alert.kind == AlertKind::PossibleTyposquat) out << "\tdistance=" << alert.distance;
        if (alert.kind == AlertKind::PossibleTyposquat ||
            alert.kind == AlertKind::ImportNameCollision)
            out << "\tsubject_downloads=" << alert.subject_downloads
                << "\tsuggestion_downloads=" << alert.suggestion_downloads;
        if (alert.kind == AlertKind::AbandonedPackage)
            out << "\tlast_release_age_days=" << alert.last_release_age_days;
        out << '\n';
        return;
    }
    switch (alert.kind) {
        case AlertKind::PossibleTyposquat:
            out << "WARNING: '" << alert.subject << "' (" << alert.subject_downloads
                << " downloads) is very close to the far more popular '"
                << *alert.suggestion << "' (" << alert.suggestion_downloads
                << " downloads). Did you mean '" << *alert.suggestion << "'?\n";
            break;
        case AlertKind::AbandonedPackage:
            out << "WARNING: '" << alert.subject << "' appears abandoned (last release "
                << alert.last_release_age_days << " days before the snapshot).\n";
            break;
        case AlertKind::ImportNameCollision:
            out << "WARNING: '" << alert.subject << "' is the import name of '"
                << *alert.suggestion << "', but installs a different package. Did you mean '"
                << *alert.suggestion << "'?\n";
            break;
        case AlertKind::UnknownPackage:
            out << "WARNING: '" << alert.subject << "' is not in the snapshot";
            if (alert.suggestion)
                out << "; its import name is provided by '" << *alert.suggestion << "'";
            out << ".\n";
            break;
    }
}

// 0 = proceed, 1 = declined
int confirm_or_decline(const std::vector<Alert>& alerts, const CommonOpts& opts,
                       std::istream& in, std::ostream& out, std::ostream& err) {
    for (const auto& alert : alerts) print_alert(alert, opts.fmt(), out);
    if (alerts.empty()) return 0;
    if (opts.assume_yes) return 0;
    err << "Proceed anyway? [y/N] " << std::flush;
    std::string answer;
    if (!std::getline(in, answer)) return 1;
    std::string folded = fold_name(answer);
    return (folded == "y" || folded == "yes") ? 0 : 1;
}

int cmd_graph_stats(const CommonOpts& opts, bool no_prune, std::ostream& out) {
    Snapshot snap = opts.load_snapshot();
    DependencyGraph graph = build_graph(snap);
    std::size_t removed = 0;
    if (!no_prune) {
        auto [pruned, count] = prune_disconnected(graph);
        graph = std::move(pruned);
        removed = count;
    }
    GraphStats stats = graph_summary(graph);
    if (opts.fmt() == Format::Structured) {
        out << "graph-stats\tnode_count=" << stats.node_count
            << "\tavg_outdegree=" << fmt_real(stats.avg_outdegree)
            << "\tavg_tree_size=" << fmt_real(stats.avg_tree_size)
            << "\tavg_tree_depth=" << fmt_real(stats.avg_tree_depth)
            << "\tdisconnected_removed=" << stats.disconnected_removed
            << "\tunresolved=" << graph.unresolved().size() << '\n';
    } else {
        out << "Dependency graph (" << to_string(snap.ecosystem) << ")\n"
            << "  nodes:                 " << stats.node_count << '\n'
            << "  avg outdegree:         " << fmt_real(stats.avg_outdegree) << '\n'
            << "  avg dep tree size:     " << fmt_real(stats.avg_tree_size) << '\n'
            << "  avg dep tree depth:    " << fmt_real(stats.avg_tree_depth) << '\n'
            << "  disconnected removed:  " << stats.disconnected_removed << '\n'
            << "  unresolved deps:       " << graph.unresolved().size() << '\n';
    }
    return 0;
}

int cmd_popularity(const CommonOpts& opts, std::size_t top_k, std::uint64_t threshold,
                   double xmin, const std::string& series_path, std::ostream& out,
                   std::ostream& err) {
    Snapshot snap = opts.load_snapshot();
    double share = top_share(snap, top_k);
    std::size_t at_least = count_at_least(snap, threshold);
    std::uint64_t total_downloads = 0;
    for (const auto& rec : snap.records) total_downloads += rec.downloads;

    DownloadSample sample = download_sample(snap);
    std::optional<PowerLawFit> fit;
    try {
        fit = fit_power_law(sample, xmin);
    } catch (const InsufficientTailError& e) {
        err << "power-law fit skipped: " << e.what() << '\n';
    }

    if (!series_path.empty()) {
        std::ofstream series(series_path);
        if (!series) throw Error("cannot write series file: " + series_path);
        for (const auto& [value, fraction] : ccdf(sample))
            series << fmt_real(value) << ' ' << fmt_real(fraction) << '\n';
        if (fit) {
            std::ofstream overlay(series_path + ".fit");
            for (const auto& [value, fraction] : power_law_ccdf(*fit, sample.values))
                overlay << fmt_real(value) << ' ' << fmt_real(fraction) << '\n';
        }
    }

    if (opts.fmt() == Format::Structured) {
        out << "popularity\ttotal=" << snap.records.size()
            << "\ttotal_downloads=" << total_downloads << "\ttop_k=" << top_k
            << "\ttop_share=" << fmt_real(share) << "\tthreshold=" << threshold
            << "\tcount_at_least=" << at_least;
        if (fit)
            out << "\txmin=" << fmt_real(fit->xmin) << "\talpha=" << fmt_real(fit->alpha)
                << "\tn_tail=" << fit->n_tail;
        out << '\n';
    } else {
        out << "Download statistics (" << to_string(snap.ecosystem) << ")\n"
            << "  packages:              " << snap.records.size() << '\n'
            << "  total downloads:       " << total_downloads << '\n'
            << "  top-" << top_k << " share:           " << fmt_real(share) << '\n'
            << "  packages >= " << threshold << ":      " << at_least << '\n';
        if (fit)
            out << "  power-law alpha:       " << fmt_real(fit->alpha) << " (xmin "
                << fmt_real(fit->xmin) << ", tail " << fit->n_tail << ")\n";
    }
    return 0;
}

int cmd_abandonment(const CommonOpts& opts, std::size_t top_n, std::ostream& out) {
    Snapshot snap = opts.load_snapshot();
    AbandonmentReport report = abandonment_report(snap, snap.captured_at, top_n);
    if (opts.fmt() == Format::Structured) {
        out << "abandonment\ttotal=" << report.total << "\tabandoned=" << report.abandoned
            << "\tfraction=" << fmt_real(report.fraction)
            << "\tcumulative_abandoned_downloads=" << report.cumulative_abandoned_downloads
            << '\n';
        for (const auto& [name, downloads] : report.top_abandoned)
            out << "abandoned-package\tname=" << name << "\tdownloads=" << downloads << '\n';
    } else {
        out << "Abandonment (" << to_string(snap.ecosystem) << ")\n"
            << "  packages:   " << report.total << '\n'
            << "  abandoned:  " << report.abandoned << " (" << fmt_real(report.fraction * 100)
            << "%)\n"
            << "  cumulative abandoned downloads: " << report.cumulative_abandoned_downloads
            << '\n';
        for (const auto& [name, downloads] : report.top_abandoned)
            out << "    " << name << "  " << downloads << '\n';
    }
    return 0;
}

int cmd_squat_scan(const CommonOpts& opts, int max_distance, std::size_t min_length,
                   std::ostream& out) {
    Snapshot snap = opts.load_snapshot();
    std::vector<std::string> names;
    names.reserve(snap.records.size());
    for (const auto& rec : snap.records) names.push_back(rec.name);
    auto pairs = candidate_pairs(names, max_distance, min_length);
    auto ranked = rank_typo_candidates(pairs, snap);
    for (const auto& cand : ranked) {
        if (opts.fmt() == Format::Structured) {
            out << "typo-candidate\tsubject=" << cand.subject << "\ttarget=" << cand.target
                << "\tdistance=" << cand.distance
                << "\tratio=" << fmt_real(cand.popularity_ratio);
            if (cand.content_similarity)
                out << "\tsimilarity=" << fmt_real(*cand.content_similarity);
            out << '\n';
        } else {
            out << cand.subject << " ~ " << cand.target << " (distance " << cand.distance
                << ", popularity ratio " << fmt_real(cand.popularity_ratio);
            if (cand.content_similarity)
                out << ", content similarity " << fmt_real(*cand.content_similarity);
            out << ")\n";
        }
    }
    return 0;
}

int cmd_import_squat_scan(const CommonOpts& opts, std::ostream& out) {
    Snapshot snap = opts.load_snapshot();
    for (const auto& cand : import_squat_candidates(snap)) {
        if (opts.fmt() == Format::Structured) {
            out << "import-squat\tsubject=" << cand.subject << "\tmodule=" << cand.target
                << "\tevidence=" << cand.evidence << '\n';
        } else {
            out << cand.subject << " provides module '" << cand.target << "' ("
                << cand.evidence << ")\n";
        }
    }
    return 0;
}

int cmd_incidents(const CommonOpts& opts, std::ostream& out) {
    const auto& records = load_incidents();
    IncidentSummary summary = incident_summary(records);
    if (opts.fmt() == Format::Structured) {
        for (const auto& r : records) {
            out << "incident\tid=" << r.id << "\ttype=" << to_string(r.attack_type)
                << "\tstrategy=" << to_string(r.strategy)
                << "\tvector=" << to_string(r.vector)
                << "\tvictims=" << to_string(r.victims) << "\tgoal=" << to_string(r.goal)
                << "\tttd_days=" << fmt_real(r.time_to_discovery_days) << '\n';
        }
        out << "incident-summary\tcount=" << summary.count
            << "\tmedian_ttd_days=" << fmt_real(summary.median_ttd_days)
            << "\tmean_ttd_days=" << fmt_real(summary.mean_ttd_days);
        for (const auto& [key, value] : summary.by_type) out << '\t' << key << '=' << value;
        out << '\n';
    } else {
        for (const auto& r : records) {
            out << r.id << " [" << to_string(r.attack_type) << ", " << to_string(r.strategy)
                << ", " << to_string(r.vector) << ", " << to_string(r.victims) << ", "
                << to_string(r.goal) << ", " << fmt_real(r.time_to_discovery_days)
                << " days]\n  " << r.description << '\n';
        }
        out << summary.count << " incidents; median time-to-discovery "
            << fmt_real(summary.median_ttd_days) << " days, mean "
            << fmt_real(summary.mean_ttd_days) << " days\n";
    }
    return 0;
}

int cmd_check(const CommonOpts& opts, const std::string& name, std::istream& in,
              std::ostream& out, std::ostream& err) {
    Snapshot snap = opts.load_snapshot();
    AdvisorIndex index(snap);
    AdvisorPolicy policy = load_policy(opts);
    std::vector<Alert> alerts = check_install(index, name, policy);
    if (snap.ecosystem == Ecosystem::PyPI) {
        std::vector<Alert> import_alerts = check_import(index, name);
        if (!import_alerts.empty()) {
            // the import collision subsumes a bare unknown-package alert
            std::erase_if(alerts, [](const Alert& a) {
                return a.kind == AlertKind::UnknownPackage && !a.suggestion;
            });
            alerts.insert(alerts.end(), import_alerts.begin(), import_alerts.end());
        }
    }
    return confirm_or_decline(alerts, opts, in, out, err);
}

int cmd_check_update(const CommonOpts& opts, const std::string& name, std::istream& in,
                     std::ostream& out, std::ostream& err) {
    Snapshot snap = opts.load_snapshot();
    const PackageRecord* record = snap.find(name);
    if (!record) {
        AdvisorIndex index(snap);
        record = index.find_folded(name);
    }
    if (!record) throw Error("package not in snapshot: " + name);
    AdvisorPolicy policy = load_policy(opts);
    std::vector<Alert> alerts = check_update(*record, snap.captured_at, policy);
    return confirm_or_decline(alerts, opts, in, out, err);
}

int cmd_ingest(const CommonOpts& opts, const std::string& config_path,
               const std::string& names_path, const std::string& out_path,
               std::int64_t captured_at, std::ostream& err) {
    RegistryConfig config = load_registry_config(config_path);
    RegistryClient client(config, make_http_transport(config.timeout_seconds));

    std::ifstream names_in(names_path);
    if (!names_in) throw Error("cannot open names file: " + names_path);

    Snapshot snap;
    snap.ecosystem = config.ecosystem;
    snap.captured_at = captured_at;
    std::string name;
    while (std::getline(names_in, name)) {
        if (name.empty()) continue;
        try {
            PackageRecord rec = client.fetch_package_metadata(name);
            if (snap.by_name.count(rec.name)) continue;
            snap.by_name.emplace(rec.name, snap.records.size());
            snap.records.push_back(std::move(rec));
        } catch (const NotFoundError& e) {
            err << "skipping: " << e.what() << '\n';
        }
    }

    std::ofstream out_file(out_path);
    if (!out_file) throw Error("cannot write snapshot: " + out_path);
    serialize_snapshot(snap, out_file);
    err << "wrote " << snap.records.size() << " records to " << out_path << '\n';
    return 0;
}

} // namespace

int run(const std::vector<std::string>& argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"ecoscope - package ecosystem risk analyzer"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto* graph_cmd = app.add_subcommand("graph-stats", "dependency graph metrics");
    bool no_prune = false;
    graph_cmd->add_flag("--no-prune", no_prune, "keep disconnected nodes");
    add_common(graph_cmd, opts);

    auto* pop_cmd = app.add_subcommand("popularity", "download statistics and power-law fit");
    std::size_t top_k = 20;
    std::uint64_t threshold = 1000;
    double xmin = 1e4;
    std::string series_path;
    pop_cmd->add_option("--top", top_k, "k for the top-k download share");
    pop_cmd->add_option("--threshold", threshold, "download count threshold");
    pop_cmd->add_option("--xmin", xmin, "lower bound for the power-law fit");
    pop_cmd->add_option("--series", series_path, "write the CCDF as a two-column series");
    add_common(pop_cmd, opts);

    auto* ab_cmd = app.add_subcommand("abandonment", "abandonment classification report");
    std::size_t top_n = 10;
    ab_cmd->add_option("--top", top_n, "number of top abandoned packages to list");
    add_common(ab_cmd, opts);

    auto* squat_cmd = app.add_subcommand("squat-scan", "typosquat candidate pair scan");
    int max_distance = 1;
    std::size_t min_length = 0;
    squat_cmd->add_option("--max-distance", max_distance, "maximum edit distance (1 or 2)");
    squat_cmd->add_option("--min-length", min_length, "minimum name length");
    add_common(squat_cmd, opts);

    auto* import_cmd = app.add_subcommand("import-squat-scan",
                                          "package/module name mismatch scan (PyPI)");
    add_common(import_cmd, opts);

    auto* inc_cmd = app.add_subcommand("incidents", "bundled incident dataset and summary");
    add_common(inc_cmd, opts, /*with_snapshot=*/false);

    auto* check_cmd = app.add_subcommand("check", "install-time obscurity check");
    std::string check_name;
    check_cmd->add_option("name", check_name, "package to check")->required();
    add_common(check_cmd, opts);

    auto* update_cmd = app.add_subcommand("check-update", "update-time abandonment check");
    std::string update_name;
    update_cmd->add_option("name", update_name, "package to check")->required();
    add_common(update_cmd, opts);

    auto* ingest_cmd = app.add_subcommand("ingest", "build a snapshot from a registry");
    std::string config_path, names_path, out_path;
    std::int64_t captured_at = std::time(nullptr);
    ingest_cmd->add_option("--config", config_path, "registry config file")->required();
    ingest_cmd->add_option("--names", names_path, "file with one package name per line")
        ->required();
    ingest_cmd->add_option("--out", out_path, "output snapshot path")->required();
    ingest_cmd->add_option("--captured-at", captured_at, "snapshot reference time (epoch)");
    add_common(ingest_cmd, opts, /*with_snapshot=*/false);

    std::vector<std::string> full_args = argv;
    full_args.insert(full_args.begin(), "ecoscope");
    std::vector<char*> c_args;
    c_args.reserve(full_args.size());
    for (auto& arg : full_args) c_args.push_back(arg.data());

    try {
        app.parse(static_cast<int>(c_args.size()), c_args.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n' << app.help();
        return 2;
    }

    try {
        if (graph_cmd->parsed()) return cmd_graph_stats(opts, no_prune, out);
        if (pop_cmd->parsed())
            return cmd_popularity(opts, top_k, threshold, xmin, series_path, out, err);
        if (ab_cmd->parsed()) return cmd_abandonment(opts, top_n, out);
        if (squat_cmd->parsed()) return cmd_squat_scan(opts, max_distance, min_length, out);
        if (import_cmd->parsed()) return cmd_import_squat_scan(opts, out);
        if (inc_cmd->parsed()) return cmd_incidents(opts, out);
        if (check_cmd->parsed()) return cmd_check(opts, check_name, in, out, err);
        if (update_cmd->parsed()) return cmd_check_update(opts, update_name, in, out, err);
        if (ingest_cmd->parsed())
            return cmd_ingest(opts, config_path, names_path, out_path, captured_at, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cin, std::cout, std::cerr);
}

} // namespace ecoscope::cli
