"""Network property computation: degree distribution, density, distances,
clustering, and discrete power-law fitting.

All operations are pure functions over an immutable Graph. Distance
quantities come from exact all-sources BFS (O(n*(n+m)) unweighted); the
source sweep can be fanned out across worker threads and combines with
integer max/sum reductions, so parallel results are bit-identical to
sequential ones.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np
from scipy.special import zeta

from . import _kernels
from .errors import (DegenerateGraphError, EmptyGraphError,
                     InsufficientTailError, NoPairsError, OutOfRangeError)
from .graph import (ComponentPartition, Graph, NodeRole, connected_components,
                    is_strictly_bipartite)


class DensityMode(Enum):
    UNIPARTITE = "unipartite"
    BIPARTITE = "bipartite"


class PathScope(Enum):
    WHOLE_GRAPH = "whole"
    LARGEST_COMPONENT = "lcc"


class ClusteringPolicy(Enum):
    INCLUDE_LOW_DEGREE_AS_ZERO = "include"
    EXCLUDE_LOW_DEGREE = "exclude"


@dataclass(frozen=True)
class DegreeDistribution:
    """Degree histogram and the induced probability mass over nodes."""

    histogram: dict[int, int]
    pdf: dict[int, float]
    n: int


@dataclass(frozen=True)
class PathStats:
    """Exact shortest-path summary for a scope of the graph.

    ``eccentricity`` is aligned to node ids; nodes outside the scope carry
    the sentinel -1. Unreachable pairs never enter the average.
    """

    scope: PathScope
    diameter: int
    average_path_length: float
    reachable_pairs: int
    eccentricity: np.ndarray


@dataclass(frozen=True)
class PowerLawFit:
    """Discrete maximum-likelihood power-law fit of an integer sample."""

    alpha: float
    xmin: int
    n_tail: int
    ks_statistic: float


@dataclass(frozen=True)
class MetricsReport:
    """All computed properties of one network, with the policies that
    produced them, so any report is reproducible from its own fields."""

    n: int
    m: int
    density: float
    density_mode: DensityMode
    degree_distribution: DegreeDistribution
    path_stats: PathStats
    average_clustering: float
    clustering_policy: ClusteringPolicy
    component_sizes: tuple[int, ...]
    power_law: PowerLawFit | None
    strictly_bipartite: bool


def degree_distribution(g: Graph) -> DegreeDistribution:
    """Histogram of node degrees and its normalization by n."""
    if g.n == 0:
        raise EmptyGraphError("degree distribution needs at least one node")
    counts = np.bincount(g.degrees)
    histogram = {int(d): int(c) for d, c in enumerate(counts) if c > 0}
    pdf = {d: c / g.n for d, c in histogram.items()}
    return DegreeDistribution(histogram=histogram, pdf=pdf, n=g.n)


def density(g: Graph, mode: DensityMode = DensityMode.UNIPARTITE) -> float:
    """Fraction of present edges over the maximum possible.

    Unipartite: 2m / (n(n-1)). Bipartite: m / (|U|*|V|) with BOTH-role
    nodes counted on both sides (an upper-bound convention; graphs that
    are strictly two-mode are unaffected).
    """
    if mode is DensityMode.UNIPARTITE:
        if g.n < 2:
            raise DegenerateGraphError("unipartite density needs n >= 2")
        return 2.0 * g.m / (g.n * (g.n - 1))
    n_u = sum(1 for r in g.roles if r is not NodeRole.INVESTOR)
    n_v = sum(1 for r in g.roles if r is not NodeRole.STARTUP)
    if n_u == 0 or n_v == 0:
        raise DegenerateGraphError("bipartite density needs both roles present")
    return g.m / (n_u * n_v)


def sssp_bfs(g: Graph, source: int) -> np.ndarray:
    """Exact unweighted distances from source; unreachable nodes get -1."""
    if not 0 <= source < g.n:
        raise OutOfRangeError(f"source {source} not in 0..{g.n - 1}")
    return _kernels.bfs_distances(g.indptr, g.indices, source, g.n)


def _sweep(g: Graph, sources: np.ndarray, workers: int):
    if workers <= 1 or sources.size < 2 * workers:
        return _kernels.bfs_sweep(g.indptr, g.indices, sources, g.n)
    chunks = np.array_split(sources, workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(
            lambda c: _kernels.bfs_sweep(g.indptr, g.indices, c, g.n), chunks))
    ecc = np.concatenate([p[0] for p in parts])
    dist_sum = np.concatenate([p[1] for p in parts])
    reached = np.concatenate([p[2] for p in parts])
    return ecc, dist_sum, reached


def apsp_stats(g: Graph, scope: PathScope = PathScope.LARGEST_COMPONENT,
               workers: int = 1,
               components: ComponentPartition | None = None) -> PathStats:
    """Diameter, average path length, and per-node eccentricity from BFS
    out of every in-scope node.

    Whole-graph scope averages over the reachable pairs only and records
    how many there were; largest-component scope restricts the sources to
    the biggest component. Raises NoPairsError when the scope contains no
    connected pair.
    """
    if scope is PathScope.LARGEST_COMPONENT:
        parts = components if components is not None else connected_components(g)
        if not parts.component_sizes or parts.component_sizes[0] < 2:
            raise NoPairsError("largest component has no connected pair")
        sources = np.flatnonzero(parts.component_id == 0).astype(np.int32)
    else:
        if g.m == 0:
            raise NoPairsError("graph has no edges")
        sources = np.arange(g.n, dtype=np.int32)

    ecc, dist_sum, reached = _sweep(g, sources, workers)
    total = int(dist_sum.sum())
    pairs = int(reached.sum())
    eccentricity = np.full(g.n, -1, np.int32)
    eccentricity[sources] = ecc
    eccentricity.setflags(write=False)
    return PathStats(
        scope=scope,
        diameter=int(ecc.max()),
        average_path_length=total / pairs,
        reachable_pairs=pairs // 2,
        eccentricity=eccentricity,
    )


def triangle_count(g: Graph) -> int:
    """Number of unordered node triples forming a 3-cycle."""
    if g.n == 0:
        return 0
    tri = _kernels.triangles_per_node(g.indptr, g.indices, g.n)
    return int(tri.sum()) // 3


def local_clustering(g: Graph, v: int) -> float:
    """Fraction of v's neighbor pairs that are themselves adjacent; 0 for
    degree < 2."""
    nbrs = g.neighbors(v)
    d = nbrs.size
    if d < 2:
        return 0.0
    links = 0
    for u in nbrs:
        links += np.intersect1d(g.neighbors(int(u)), nbrs,
                                assume_unique=True).size
    return links / (d * (d - 1))


def _local_clustering_all(g: Graph) -> np.ndarray:
    tri = _kernels.triangles_per_node(g.indptr, g.indices, g.n)
    deg = g.degrees
    out = np.zeros(g.n, float)
    eligible = deg >= 2
    pairs = deg[eligible] * (deg[eligible] - 1) / 2.0
    out[eligible] = tri[eligible] / pairs
    return out


def average_clustering(
        g: Graph,
        policy: ClusteringPolicy = ClusteringPolicy.INCLUDE_LOW_DEGREE_AS_ZERO,
) -> float:
    """Mean local clustering under the chosen low-degree policy."""
    if g.n == 0:
        raise DegenerateGraphError("average clustering needs at least one node")
    local = _local_clustering_all(g)
    if policy is ClusteringPolicy.INCLUDE_LOW_DEGREE_AS_ZERO:
        return float(local.mean())
    eligible = g.degrees >= 2
    if not eligible.any():
        raise DegenerateGraphError("no node has degree >= 2")
    return float(local[eligible].mean())


def _discrete_cdf(alpha: float, xmin: int, xs: np.ndarray) -> np.ndarray:
    """CDF of the discrete power law p(x) ~ x^-alpha on x >= xmin."""
    norm = zeta(alpha, xmin)
    return 1.0 - zeta(alpha, xs + 1) / norm


def _fit_at(samples: np.ndarray, xmin: int) -> PowerLawFit | None:
    tail = samples[samples >= xmin]
    if tail.size < 2 or np.unique(tail).size < 2:
        return None
    alpha = 1.0 + tail.size / np.log(tail / (xmin - 0.5)).sum()
    xs = np.unique(tail)
    empirical = np.searchsorted(np.sort(tail), xs, side="right") / tail.size
    fitted = _discrete_cdf(alpha, xmin, xs)
    ks = float(np.abs(empirical - fitted).max())
    return PowerLawFit(alpha=float(alpha), xmin=int(xmin),
                       n_tail=int(tail.size), ks_statistic=ks)


def fit_power_law(samples: Sequence[int] | np.ndarray,
                  xmin: int | str = "auto") -> PowerLawFit:
    """Discrete MLE power-law fit with KS-minimizing automatic xmin.

    alpha = 1 + n_tail / sum(ln(x_i / (xmin - 1/2))) over the tail
    x_i >= xmin (the standard continuity-corrected discrete estimator);
    the KS statistic is the largest CDF gap between the tail and the
    fitted law, evaluated at the observed tail values. Automatic xmin
    scans the distinct sample values and keeps the KS minimizer (smallest
    xmin on ties).

    Raises InsufficientTailError when fewer than two samples, or fewer
    than two distinct values, lie at or above xmin.
    """
    samples = np.asarray(samples, dtype=np.int64)
    if samples.size == 0 or samples.min() < 1:
        raise InsufficientTailError("samples must be positive integers")
    if xmin == "auto":
        best = None
        for candidate in np.unique(samples)[:-1]:
            fit = _fit_at(samples, int(candidate))
            if fit is None:
                continue
            if best is None or fit.ks_statistic < best.ks_statistic:
                best = fit
        if best is None:
            raise InsufficientTailError(
                "no xmin leaves >= 2 samples with >= 2 distinct values")
        return best
    if xmin < 1:
        raise InsufficientTailError("xmin must be a positive integer")
    fit = _fit_at(samples, int(xmin))
    if fit is None:
        raise InsufficientTailError(
            f"fewer than 2 samples or distinct values at or above xmin={xmin}")
    return fit


def compute_report(g: Graph, *,
                   scope: PathScope = PathScope.LARGEST_COMPONENT,
                   clustering_policy: ClusteringPolicy =
                   ClusteringPolicy.INCLUDE_LOW_DEGREE_AS_ZERO,
                   density_mode: DensityMode = DensityMode.UNIPARTITE,
                   power_law_xmin: int | str = "auto",
                   workers: int = 1) -> MetricsReport:
    """Assemble every property of one network into a self-describing report.

    The power-law entry is None when the degree sequence has no fit-able
    tail (fewer than two distinct positive degrees); everything else
    propagates its own errors.
    """
    if g.n < 2:
        raise DegenerateGraphError("report needs at least two nodes")
    parts = connected_components(g)
    dist = degree_distribution(g)
    degrees = g.degrees
    try:
        power_law = fit_power_law(degrees[degrees > 0], power_law_xmin)
    except InsufficientTailError:
        power_law = None
    return MetricsReport(
        n=g.n,
        m=g.m,
        density=density(g, density_mode),
        density_mode=density_mode,
        degree_distribution=dist,
        path_stats=apsp_stats(g, scope, workers=workers, components=parts),
        average_clustering=average_clustering(g, clustering_policy),
        clustering_policy=clustering_policy,
        component_sizes=parts.component_sizes,
        power_law=power_law,
        strictly_bipartite=is_strictly_bipartite(g),
    )
