"""Command-line front end: ingest -> stats -> compare -> generate ->
robustness -> export.

Exit codes: 0 success, 2 unreadable/invalid input or parameters, 3 the
graph is too degenerate for the requested quantity. Diagnostics (dropped
rows, collapsed duplicates) go to stderr; results go to --output or
stdout. Given identical inputs, flags, and seeds every command writes
byte-identical output.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

from . import ingest, reporting
from .errors import (DegenerateBaselineError, DegenerateGraphError,
                     EmptyGraphError, InvestnetError, NoPairsError)
from .graph import Graph, build_graph
from .metrics import (ClusteringPolicy, DensityMode, PathScope,
                      compute_report, degree_distribution)
from .nullmodels import (GeneratorKind, GeneratorSpec, RemovalStrategy,
                         generate, robustness_probe, verdict_against_baselines)

_SCOPES = {"whole": PathScope.WHOLE_GRAPH, "lcc": PathScope.LARGEST_COMPONENT}
_POLICIES = {"include": ClusteringPolicy.INCLUDE_LOW_DEGREE_AS_ZERO,
             "exclude": ClusteringPolicy.EXCLUDE_LOW_DEGREE}
_DENSITY_MODES = {"unipartite": DensityMode.UNIPARTITE,
                  "bipartite": DensityMode.BIPARTITE}
_DEGENERATE_ERRORS = (DegenerateGraphError, EmptyGraphError, NoPairsError,
                      DegenerateBaselineError)


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@contextmanager
def _open_input(path: str):
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            yield fh
    except OSError as exc:
        raise _CliError(2, f"cannot read {path}: {exc.strerror}")
    except UnicodeDecodeError:
        raise _CliError(2, f"{path} is not valid UTF-8")


@contextmanager
def _open_output(path: str | None):
    if path is None:
        yield sys.stdout
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh
    except OSError as exc:
        raise _CliError(2, f"cannot write {path}: {exc.strerror}")


def _load_graph(args) -> Graph:
    """Shared ingest pipeline: parse, preprocess, report drops, build."""
    with _open_input(args.input) as fh:
        try:
            if args.format == "table":
                records = ingest.parse_startup_table(fh)
            else:
                pairs = ingest.parse_edge_list(fh)
        except InvestnetError as exc:
            raise _CliError(2, f"{args.input}: {exc}")
        except UnicodeDecodeError:
            raise _CliError(2, f"{args.input} is not valid UTF-8")

    if args.format == "table":
        exclusions = frozenset()
        if getattr(args, "exclude", None):
            with _open_input(args.exclude) as fh:
                exclusions = ingest.load_exclusions(fh)
        records, pre_log = ingest.preprocess(records, exclusions)
        pairs, pair_log = ingest.records_to_edge_list(records)
        for name, count in (
                ("records without investors", pre_log.dropped_no_investor),
                ("duplicate startup rows", pre_log.dropped_duplicate),
                ("excluded rows/names", pre_log.dropped_excluded),
                ("self-loop pairs", pair_log.dropped_self_loop)):
            if count:
                print(f"warning: dropped {count} {name}", file=sys.stderr)
    else:
        pairs, loop_log = ingest.drop_self_loops(pairs)
        if loop_log.dropped_self_loop:
            print(f"warning: dropped {loop_log.dropped_self_loop} "
                  "self-loop pairs", file=sys.stderr)

    g = build_graph((p.startup_name, p.investor_name) for p in pairs)
    collapsed = len(pairs) - g.m
    if collapsed:
        print(f"warning: collapsed {collapsed} duplicate pairs",
              file=sys.stderr)
    return g


def cmd_stats(args) -> int:
    g = _load_graph(args)
    try:
        report = compute_report(
            g,
            scope=_SCOPES[args.scope],
            clustering_policy=_POLICIES[args.clustering_policy],
            density_mode=_DENSITY_MODES[args.density_mode],
            workers=args.workers,
        )
    except _DEGENERATE_ERRORS as exc:
        raise _CliError(3, str(exc))
    with _open_output(args.output) as out:
        reporting.write_json(reporting.report_to_dict(report), out)
    return 0


def cmd_compare(args) -> int:
    sides = []
    for path in (args.left, args.right):
        with _open_input(path) as fh:
            try:
                sides.append(reporting.read_report_dict(fh))
            except InvestnetError as exc:
                raise _CliError(2, f"{path}: {exc}")
            except ValueError as exc:
                raise _CliError(2, f"{path}: not valid JSON ({exc})")
    verdicts = None
    if args.verdicts:
        verdicts = {}
        for side, report in zip(("left", "right"), sides):
            try:
                verdict = verdict_against_baselines(
                    report["n"], report["m"], report["average_clustering"],
                    report["path_stats"]["average_path_length"],
                    args.baseline_samples, args.seed,
                    clustering_policy=_POLICIES[report["clustering_policy"]])
            except _DEGENERATE_ERRORS as exc:
                raise _CliError(3, str(exc))
            verdicts[side] = reporting.verdict_to_dict(verdict)
    cmp = reporting.compare_reports(sides[0], sides[1],
                                    left_name=args.names[0],
                                    right_name=args.names[1],
                                    verdicts=verdicts)
    print(reporting.comparison_table(cmp), end="")
    if args.output:
        with _open_output(args.output) as out:
            reporting.write_json(reporting.comparison_to_dict(cmp), out)
    return 0


def _generator_spec(args) -> GeneratorSpec:
    kind = GeneratorKind(args.kind)
    if kind is GeneratorKind.ER_NM:
        if args.edges is None:
            raise _CliError(2, "--edges is required for kind=er")
        params = {"m": args.edges}
    elif kind is GeneratorKind.WS:
        if args.k is None or args.p is None:
            raise _CliError(2, "--k and --p are required for kind=ws")
        params = {"k": args.k, "p": args.p}
    else:
        if args.m_attach is None:
            raise _CliError(2, "--m-attach is required for kind=ba")
        params = {"m_attach": args.m_attach}
    return GeneratorSpec(kind=kind, n=args.nodes, params=params, seed=args.seed)


def cmd_generate(args) -> int:
    spec = _generator_spec(args)
    try:
        g = generate(spec)
    except InvestnetError as exc:
        raise _CliError(2, str(exc))
    with _open_output(args.output) as out:
        reporting.write_edge_list(reporting.oriented_edge_labels(g), out)
    return 0


def cmd_degree_dist(args) -> int:
    g = _load_graph(args)
    try:
        dist = degree_distribution(g)
    except _DEGENERATE_ERRORS as exc:
        raise _CliError(3, str(exc))
    rows = []
    if args.binning == "raw":
        rows = sorted(dist.histogram.items())
    else:
        bins: dict[int, int] = {}
        for degree, count in dist.histogram.items():
            low = 0 if degree == 0 else 2 ** (degree.bit_length() - 1)
            bins[low] = bins.get(low, 0) + count
        rows = sorted(bins.items())
    with _open_output(args.output) as out:
        out.write("degree_or_bin,count\n")
        for key, count in rows:
            out.write(f"{key},{count}\n")
    return 0


def cmd_robustness(args) -> int:
    g = _load_graph(args)
    try:
        result = robustness_probe(
            g, RemovalStrategy(args.strategy), args.fraction, args.trials,
            args.seed, clustering_policy=_POLICIES[args.clustering_policy])
    except (NoPairsError, DegenerateGraphError) as exc:
        raise _CliError(3, str(exc))
    except InvestnetError as exc:
        raise _CliError(2, str(exc))
    payload = {
        "schema_version": reporting.SCHEMA_VERSION,
        "strategy": result.strategy.value,
        "fraction_removed": result.fraction_removed,
        "apl_before": result.apl_before,
        "apl_after": result.apl_after,
        "clustering_before": result.clustering_before,
        "clustering_after": result.clustering_after,
        "trials": result.trials,
        "apl_ratio_mean": result.apl_ratio_mean,
        "undefined_apl_trials": result.undefined_apl_trials,
    }
    with _open_output(args.output) as out:
        reporting.write_json(payload, out)
    return 0


def cmd_export(args) -> int:
    g = _load_graph(args)
    with _open_output(args.output) as out:
        if args.export_format == "edgelist":
            reporting.write_edge_list(reporting.oriented_edge_labels(g), out)
        else:
            reporting.write_node_table(g, out)
    return 0


def _add_input_flags(parser) -> None:
    parser.add_argument("--input", required=True, help="input file path")
    parser.add_argument("--format", choices=("table", "edgelist"),
                        default="edgelist",
                        help="input shape: startup table or two-column edge list")
    parser.add_argument("--exclude", default=None,
                        help="exclusion list file (one label per line)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="investnet",
        description="Startup-investor network statistics and small-world probes")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("stats", help="compute a full metrics report")
    _add_input_flags(p)
    p.add_argument("--output", default=None)
    p.add_argument("--scope", choices=tuple(_SCOPES), default="lcc")
    p.add_argument("--clustering-policy", choices=tuple(_POLICIES),
                   default="include")
    p.add_argument("--density-mode", choices=tuple(_DENSITY_MODES),
                   default="unipartite")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("compare", help="compare two saved stats reports")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--output", default=None, help="write comparison JSON here")
    p.add_argument("--names", nargs=2, default=("left", "right"),
                   metavar=("LEFT", "RIGHT"))
    p.add_argument("--verdicts", action="store_true",
                   help="attach small-world verdicts (ER baselines on each n, m)")
    p.add_argument("--baseline-samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("generate", help="write a seeded random graph as an edge list")
    p.add_argument("--kind", choices=tuple(k.value for k in GeneratorKind),
                   required=True)
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--edges", type=int, default=None, help="edge count (er)")
    p.add_argument("--k", type=int, default=None, help="lattice degree (ws)")
    p.add_argument("--p", type=float, default=None,
                   help="rewiring probability (ws)")
    p.add_argument("--m-attach", type=int, default=None,
                   help="edges per arriving node (ba)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("degree-dist", help="degree histogram as CSV")
    _add_input_flags(p)
    p.add_argument("--binning", choices=("raw", "log2"), default="raw")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_degree_dist)

    p = sub.add_parser("robustness", help="node-removal probe")
    _add_input_flags(p)
    p.add_argument("--strategy",
                   choices=tuple(s.value for s in RemovalStrategy),
                   required=True)
    p.add_argument("--fraction", type=float, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--clustering-policy", choices=tuple(_POLICIES),
                   default="include")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_robustness)

    p = sub.add_parser("export", help="re-emit the graph for other tools")
    _add_input_flags(p)
    p.add_argument("--export-format", choices=("edgelist", "nodetable"),
                   default="edgelist")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except _DEGENERATE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvestnetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
