"""Report serialization and two-network comparison.

JSON reports carry ``schema_version`` and keep full float precision
(shortest exact round-trip repr, i.e. every value re-reads bit-identical);
rounding to the displayed 3 decimals happens only in the text table. All
written files end with a trailing newline and contain nothing
time- or locale-dependent.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Sequence, TextIO

from .errors import SchemaError
from .graph import Graph, NodeRole
from .ingest import EdgePair
from .metrics import MetricsReport
from .nullmodels import SmallWorldVerdict

SCHEMA_VERSION = 1

# Table row order: the five comparison properties with n, m prepended.
COMPARISON_PROPERTIES = (
    "n", "m", "density", "diameter", "average_path_length",
    "average_clustering_coefficient",
)

_FLAG_RULES = (
    # property, comparison ("greater" wins or "smaller" wins), flag suffix
    ("density", "greater", "denser"),
    ("diameter", "smaller", "smaller_diameter"),
    ("average_path_length", "smaller", "shorter_apl"),
    ("average_clustering_coefficient", "greater", "more_clustered"),
)


@dataclass(frozen=True)
class ComparisonReport:
    left_name: str
    right_name: str
    rows: tuple[dict, ...]
    verdicts: dict | None
    narrative_flags: tuple[str, ...]


def report_to_dict(report: MetricsReport) -> dict:
    """MetricsReport as a JSON-ready dict (fixed key order)."""
    dist = report.degree_distribution
    stats = report.path_stats
    return {
        "schema_version": SCHEMA_VERSION,
        "n": report.n,
        "m": report.m,
        "density": report.density,
        "density_mode": report.density_mode.value,
        "degree_distribution": {
            "histogram": {str(d): c for d, c in sorted(dist.histogram.items())},
            "pdf": {str(d): p for d, p in sorted(dist.pdf.items())},
            "n": dist.n,
        },
        "path_stats": {
            "scope": stats.scope.value,
            "diameter": stats.diameter,
            "average_path_length": stats.average_path_length,
            "reachable_pairs": stats.reachable_pairs,
            "eccentricity": [int(e) for e in stats.eccentricity],
        },
        "average_clustering": report.average_clustering,
        "clustering_policy": report.clustering_policy.value,
        "component_sizes": list(report.component_sizes),
        "power_law": None if report.power_law is None else {
            "alpha": report.power_law.alpha,
            "xmin": report.power_law.xmin,
            "n_tail": report.power_law.n_tail,
            "ks_statistic": report.power_law.ks_statistic,
        },
        "strictly_bipartite": report.strictly_bipartite,
    }


def verdict_to_dict(verdict: SmallWorldVerdict) -> dict:
    return {
        "sigma": verdict.sigma,
        "c_observed": verdict.c_observed,
        "c_random": verdict.c_random,
        "l_observed": verdict.l_observed,
        "l_random": verdict.l_random,
        "n_baseline_samples": verdict.n_baseline_samples,
        "apl_ratio_max": verdict.apl_ratio_max,
        "is_small_world": verdict.is_small_world,
    }


def write_json(payload: dict, stream: TextIO) -> None:
    json.dump(payload, stream, indent=2)
    stream.write("\n")


def read_report_dict(stream: TextIO) -> dict:
    """Load a stats report and check its schema version."""
    payload = json.load(stream)
    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(
            f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})")
    return payload


def _report_row_values(report: dict) -> dict:
    return {
        "n": report["n"],
        "m": report["m"],
        "density": report["density"],
        "diameter": report["path_stats"]["diameter"],
        "average_path_length": report["path_stats"]["average_path_length"],
        "average_clustering_coefficient": report["average_clustering"],
    }


def compare_reports(left: dict, right: dict, left_name: str = "left",
                    right_name: str = "right",
                    verdicts: dict | None = None) -> ComparisonReport:
    """Align two saved reports property-by-property and derive the
    mechanical narrative flags (denser, smaller diameter, shorter APL,
    more clustered, plus policy_mismatch when the reports were computed
    under different clustering policies)."""
    lv = _report_row_values(left)
    rv = _report_row_values(right)
    rows = tuple(
        {"property": p, "left": lv[p], "right": rv[p]}
        for p in COMPARISON_PROPERTIES
    )
    flags = []
    for prop, direction, suffix in _FLAG_RULES:
        l, r = lv[prop], rv[prop]
        if l == r:
            continue
        left_wins = (l > r) if direction == "greater" else (l < r)
        flags.append(f"{'left' if left_wins else 'right'}.{suffix}")
    if left["clustering_policy"] != right["clustering_policy"]:
        flags.append("policy_mismatch")
    return ComparisonReport(
        left_name=left_name,
        right_name=right_name,
        rows=rows,
        verdicts=verdicts,
        narrative_flags=tuple(flags),
    )


def comparison_to_dict(cmp: ComparisonReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "left_name": cmp.left_name,
        "right_name": cmp.right_name,
        "rows": list(cmp.rows),
        "verdicts": cmp.verdicts,
        "narrative_flags": list(cmp.narrative_flags),
    }


def _display(prop: str, value) -> str:
    if value is None:
        return "-"
    if prop in ("n", "m", "diameter"):
        return str(int(value))
    return f"{value:.3f}"


def comparison_table(cmp: ComparisonReport) -> str:
    """Fixed-width text table; density/APL/clustering shown to 3 decimals."""
    header = ("Network Properties", cmp.left_name, cmp.right_name)
    body = [
        (row["property"], _display(row["property"], row["left"]),
         _display(row["property"], row["right"]))
        for row in cmp.rows
    ]
    if cmp.verdicts:
        left_v = cmp.verdicts.get("left")
        right_v = cmp.verdicts.get("right")
        body.append(("sigma",
                     _display("sigma", left_v and left_v["sigma"]),
                     _display("sigma", right_v and right_v["sigma"])))
        body.append(("is_small_world",
                     "-" if left_v is None else str(left_v["is_small_world"]),
                     "-" if right_v is None else str(right_v["is_small_world"])))
    widths = [max(len(header[i]), *(len(row[i]) for row in body))
              for i in range(3)]
    lines = []
    fmt = "  ".join("{:<%d}" % w for w in widths)
    lines.append(fmt.format(*header))
    lines.append("  ".join("-" * w for w in widths))
    for row in body:
        lines.append(fmt.format(*row))
    if cmp.narrative_flags:
        lines.append("")
        lines.append("flags: " + ", ".join(cmp.narrative_flags))
    return "\n".join(lines) + "\n"


def oriented_edge_labels(g: Graph) -> list[tuple[str, str]]:
    """Edges as (startup-side label, investor-side label).

    The startup-role endpoint goes left; when both endpoints held both
    roles in the source data the orientation is unrecoverable and the
    smaller node id goes left.
    """
    out = []
    for u, v in g.edge_array():
        u, v = int(u), int(v)
        if g.roles[v] is NodeRole.STARTUP or (
                g.roles[u] is NodeRole.INVESTOR):
            u, v = v, u
        out.append((g.labels[u], g.labels[v]))
    return out


def write_edge_list(pairs: Sequence[EdgePair] | Sequence[tuple[str, str]],
                    stream: TextIO) -> None:
    """Write a format-B edge list (header + one pair per row)."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["startup_name", "investor_name"])
    for pair in pairs:
        if isinstance(pair, EdgePair):
            writer.writerow([pair.startup_name, pair.investor_name])
        else:
            writer.writerow([pair[0], pair[1]])


def write_node_table(g: Graph, stream: TextIO) -> None:
    """Write the node table: id,label,role,degree, ascending by id."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["id", "label", "role", "degree"])
    degrees = g.degrees
    for i in range(g.n):
        writer.writerow([i, g.labels[i], g.roles[i].value, int(degrees[i])])
