"""Python bindings for the ecoscope package-ecosystem risk analyzer."""

from ._core import (
    AbandonmentReport,
    AdvisorIndex,
    AdvisorPolicy,
    Alert,
    AlertKind,
    AlertSeverity,
    DependencyGraph,
    Ecosystem,
    EcoscopeError,
    GraphStats,
    IncidentRecord,
    IncidentSummary,
    PackageRecord,
    PowerLawFit,
    Snapshot,
    SquatCandidate,
    abandonment_report,
    build_graph,
    candidate_pairs,
    check_import,
    check_install,
    check_update,
    closure_size_distribution,
    content_similarity,
    count_at_least,
    edit_distance,
    fit_power_law,
    fit_power_law_values,
    fold_name,
    graph_summary,
    import_squat_candidates,
    incident_summary,
    is_abandoned,
    load_incidents,
    load_snapshot,
    normalize_name,
    parse_snapshot,
    prune_disconnected,
    rank_typo_candidates,
    run_cli,
    short_name_saturation,
    top_share,
)

__all__ = [
    "AbandonmentReport",
    "AdvisorIndex",
    "AdvisorPolicy",
    "Alert",
    "AlertKind",
    "AlertSeverity",
    "DependencyGraph",
    "Ecosystem",
    "EcoscopeError",
    "GraphStats",
    "IncidentRecord",
    "IncidentSummary",
    "PackageRecord",
    "PowerLawFit",
    "Snapshot",
    "SquatCandidate",
    "abandonment_report",
    "build_graph",
    "candidate_pairs",
    "check_import",
    "check_install",
    "check_update",
    "closure_size_distribution",
    "content_similarity",
    "count_at_least",
    "edit_distance",
    "fit_power_law",
    "fit_power_law_values",
    "fold_name",
    "graph_summary",
    "import_squat_candidates",
    "incident_summary",
    "is_abandoned",
    "load_incidents",
    "load_snapshot",
    "normalize_name",
    "parse_snapshot",
    "prune_disconnected",
    "rank_typo_candidates",
    "run_cli",
    "short_name_saturation",
    "top_share",
]
