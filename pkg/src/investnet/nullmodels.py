"""Seeded random-graph generators and the classification probes built on
them.

All randomness comes from numpy's PCG64 via ``np.random.default_rng(seed)``,
so identical (parameters, seed) give byte-identical graphs on every
platform. Baseline samples inside ``small_world_index`` use derived seeds
``seed + sample_index``; evaluating them in any order gives the same
result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (DegenerateBaselineError, NoPairsError, ParameterError,
                     TooManyEdgesError)
from .graph import Graph, connected_components, from_edge_array, subgraph
from .metrics import (ClusteringPolicy, PathScope, apsp_stats,
                      average_clustering)

# A network only counts as small-world when its mean distance stays within
# this factor of the random baseline's; the clustering/path-length ratio
# alone rewards lattices, whose clustering excess outweighs their long
# paths (see SmallWorldVerdict).
DEFAULT_APL_RATIO_MAX = 6.0


class GeneratorKind(Enum):
    ER_NM = "er"
    WS = "ws"
    BA = "ba"


@dataclass(frozen=True)
class GeneratorSpec:
    """CLI- and JSON-expressible description of one generated graph."""

    kind: GeneratorKind
    n: int
    params: dict
    seed: int


@dataclass(frozen=True)
class SmallWorldVerdict:
    """Observed vs random-baseline clustering and path length.

    sigma = (c_observed/c_random) / (l_observed/l_random). The verdict
    requires sigma > 1 with a positive clustering baseline AND
    l_observed <= apl_ratio_max * l_random; the path-length cap encodes
    the "short paths, typical of random graphs" half of the definition,
    which the sigma composite alone cannot (a ring lattice's clustering
    excess outweighs its linearly long paths). All four raw values are
    reported so other thresholds can be applied downstream.
    """

    sigma: float
    c_observed: float
    c_random: float
    l_observed: float
    l_random: float
    n_baseline_samples: int
    apl_ratio_max: float
    is_small_world: bool


class RemovalStrategy(Enum):
    RANDOM = "random"
    HUB = "hub"


@dataclass(frozen=True)
class RobustnessResult:
    """Effect of node removal on largest-component APL and clustering.

    ``apl_after`` and ``apl_ratio_mean`` are None when every trial left no
    connected pair (the explicit undefined marker); trials that did are
    counted in ``undefined_apl_trials`` and excluded from the means.
    """

    strategy: RemovalStrategy
    fraction_removed: float
    apl_before: float
    apl_after: float | None
    clustering_before: float
    clustering_after: float
    trials: int
    apl_ratio_mean: float | None
    undefined_apl_trials: int = 0


def _pair_rank_to_edge(ranks: np.ndarray, n: int) -> np.ndarray:
    """Map lexicographic pair ranks to (u, v) with u < v, exactly."""
    cum = np.cumsum(np.arange(n - 1, 0, -1))
    u = np.searchsorted(cum, ranks, side="right")
    base = np.zeros(n - 1, np.int64)
    base[1:] = cum[:-1]
    v = ranks - base[u] + u + 1
    return np.column_stack([u, v])


def gen_er(n: int, m: int, seed: int) -> Graph:
    """Uniform simple graph with exactly n nodes and m edges (G(n, m))."""
    if n < 0 or m < 0:
        raise ParameterError("n and m must be non-negative")
    total = n * (n - 1) // 2
    if m > total:
        raise TooManyEdgesError(f"m={m} exceeds max {total} for n={n}")
    rng = np.random.default_rng(seed)
    if total == 0 or m == 0:
        return from_edge_array(n, np.empty((0, 2), np.int64))
    if m * 3 > total:
        ranks = rng.permutation(total)[:m]
    else:
        chosen: dict[int, None] = {}
        while len(chosen) < m:
            batch = rng.integers(0, total, size=max(16, 2 * (m - len(chosen))))
            for r in batch:
                if len(chosen) == m:
                    break
                chosen.setdefault(int(r), None)
        ranks = np.fromiter(chosen, np.int64, count=m)
    edges = _pair_rank_to_edge(np.sort(ranks), n)
    return from_edge_array(n, edges)


def gen_ws(n: int, k: int, p: float, seed: int) -> Graph:
    """Ring lattice of n nodes, each tied to its k nearest neighbors, with
    every lattice edge rewired with probability p to a uniform new target
    (no self-loops, no duplicate edges)."""
    if k % 2 != 0 or not 2 <= k < n:
        raise ParameterError("k must be even with 2 <= k < n")
    if not 0.0 <= p <= 1.0:
        raise ParameterError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    adjacency: list[set[int]] = [set() for _ in range(n)]
    edges: dict[tuple[int, int], None] = {}

    def key(a: int, b: int) -> tuple[int, int]:
        return (a, b) if a < b else (b, a)

    for j in range(1, k // 2 + 1):
        for u in range(n):
            v = (u + j) % n
            edges[key(u, v)] = None
            adjacency[u].add(v)
            adjacency[v].add(u)
    if p > 0.0:
        for j in range(1, k // 2 + 1):
            for u in range(n):
                if rng.random() >= p:
                    continue
                v = (u + j) % n
                if len(adjacency[u]) >= n - 1:
                    continue  # u already tied to everyone else
                while True:
                    w = int(rng.integers(n))
                    if w != u and w not in adjacency[u]:
                        break
                del edges[key(u, v)]
                adjacency[u].discard(v)
                adjacency[v].discard(u)
                edges[key(u, w)] = None
                adjacency[u].add(w)
                adjacency[w].add(u)
    edge_arr = np.array(sorted(edges), np.int64).reshape(-1, 2)
    return from_edge_array(n, edge_arr)


def gen_ba(n: int, m_attach: int, seed: int) -> Graph:
    """Growth with degree-proportional attachment.

    Starts from a clique on m_attach+1 nodes; each arriving node draws
    m_attach distinct targets by repeated degree-proportional sampling
    with duplicate rejection (degrees snapshot from before the arrival).
    Final edge count is C(m_attach+1, 2) + (n - m_attach - 1) * m_attach.
    """
    if not 1 <= m_attach < n:
        raise ParameterError("need 1 <= m_attach < n")
    rng = np.random.default_rng(seed)
    core = m_attach + 1
    edges = [(i, j) for i in range(core) for j in range(i + 1, core)]
    # each slot in `stubs` is one unit of degree; uniform draws over it are
    # degree-proportional draws over nodes
    stubs: list[int] = []
    for i in range(core):
        stubs.extend([i] * m_attach)
    for new in range(core, n):
        chosen: dict[int, None] = {}
        while len(chosen) < m_attach:
            target = stubs[int(rng.integers(len(stubs)))]
            chosen.setdefault(target, None)
        for target in chosen:
            edges.append((target, new))
            stubs.append(target)
        stubs.extend([new] * m_attach)
    return from_edge_array(n, np.array(edges, np.int64))


def generate(spec: GeneratorSpec) -> Graph:
    """Dispatch a GeneratorSpec to its generator."""
    if spec.kind is GeneratorKind.ER_NM:
        return gen_er(spec.n, spec.params["m"], spec.seed)
    if spec.kind is GeneratorKind.WS:
        return gen_ws(spec.n, spec.params["k"], spec.params["p"], spec.seed)
    if spec.kind is GeneratorKind.BA:
        return gen_ba(spec.n, spec.params["m_attach"], spec.seed)
    raise ParameterError(f"unknown generator kind {spec.kind!r}")


def verdict_against_baselines(n: int, m: int, c_observed: float,
                              l_observed: float, n_baseline_samples: int,
                              seed: int, *,
                              clustering_policy: ClusteringPolicy =
                              ClusteringPolicy.INCLUDE_LOW_DEGREE_AS_ZERO,
                              apl_ratio_max: float = DEFAULT_APL_RATIO_MAX,
                              ) -> SmallWorldVerdict:
    """Classify observed clustering/APL against fresh ER(n, m) baselines.

    Baseline metrics are largest-component values; sample i uses seed
    ``seed + i``. Raises DegenerateBaselineError when every baseline sample
    has zero clustering. Works from saved report values as well as live
    graphs, since only n and m are needed to draw the baselines.
    """
    if n_baseline_samples < 1:
        raise ParameterError("n_baseline_samples must be >= 1")
    c_samples = []
    l_samples = []
    for i in range(n_baseline_samples):
        baseline = gen_er(n, m, seed + i)
        c_samples.append(average_clustering(baseline, clustering_policy))
        l_samples.append(
            apsp_stats(baseline, PathScope.LARGEST_COMPONENT).average_path_length)
    c_random = float(np.mean(c_samples))
    l_random = float(np.mean(l_samples))
    if c_random == 0.0:
        raise DegenerateBaselineError(
            "all baseline samples have zero clustering")
    sigma = (c_observed / c_random) / (l_observed / l_random)
    return SmallWorldVerdict(
        sigma=sigma,
        c_observed=c_observed,
        c_random=c_random,
        l_observed=l_observed,
        l_random=l_random,
        n_baseline_samples=n_baseline_samples,
        apl_ratio_max=apl_ratio_max,
        is_small_world=bool(sigma > 1.0
                            and l_observed <= apl_ratio_max * l_random),
    )


def small_world_index(g: Graph, n_baseline_samples: int, seed: int, *,
                      clustering_policy: ClusteringPolicy =
                      ClusteringPolicy.INCLUDE_LOW_DEGREE_AS_ZERO,
                      apl_ratio_max: float = DEFAULT_APL_RATIO_MAX,
                      ) -> SmallWorldVerdict:
    """Compare g's clustering and mean distance against same-n,m uniform
    random baselines and classify (see SmallWorldVerdict)."""
    if g.m < 1:
        raise ParameterError("graph needs at least one edge")
    c_observed = average_clustering(g, clustering_policy)
    l_observed = apsp_stats(g, PathScope.LARGEST_COMPONENT).average_path_length
    return verdict_against_baselines(
        g.n, g.m, c_observed, l_observed, n_baseline_samples, seed,
        clustering_policy=clustering_policy, apl_ratio_max=apl_ratio_max)


def _lcc_metrics(g: Graph, policy: ClusteringPolicy) -> tuple[float | None, float]:
    """(APL, clustering) of the largest component; APL None when there is
    no connected pair left."""
    parts = connected_components(g)
    if not parts.component_sizes:
        return None, 0.0
    lcc = subgraph(g, parts.members(0))
    clustering = average_clustering(lcc, policy) if lcc.n else 0.0
    try:
        apl = apsp_stats(lcc, PathScope.LARGEST_COMPONENT).average_path_length
    except NoPairsError:
        apl = None
    return apl, clustering


def robustness_probe(g: Graph, strategy: RemovalStrategy, fraction: float,
                     trials: int, seed: int, *,
                     clustering_policy: ClusteringPolicy =
                     ClusteringPolicy.INCLUDE_LOW_DEGREE_AS_ZERO,
                     ) -> RobustnessResult:
    """Remove ceil(fraction*n) nodes and measure largest-component APL and
    clustering before vs after.

    Random removal draws nodes uniformly without replacement per trial;
    hub removal takes the highest-degree nodes (ties to the smaller id)
    and is deterministic, so trials is forced to 1.
    """
    if not 0.0 < fraction < 1.0:
        raise ParameterError("fraction must lie strictly between 0 and 1")
    if trials < 1:
        raise ParameterError("trials must be >= 1")
    n_remove = math.ceil(fraction * g.n)
    if n_remove == 0:
        raise ParameterError("fraction removes no node")
    if g.n - n_remove < 2:
        raise ParameterError("removal must leave at least 2 nodes")
    apl_before, clustering_before = _lcc_metrics(g, clustering_policy)
    if apl_before is None:
        raise NoPairsError("graph has no connected pair to measure")

    if strategy is RemovalStrategy.HUB:
        trials = 1
        order = np.lexsort((np.arange(g.n), -g.degrees))
        removal_sets = [order[:n_remove]]
    else:
        rng = np.random.default_rng(seed)
        removal_sets = [rng.choice(g.n, size=n_remove, replace=False)
                        for _ in range(trials)]

    all_ids = np.arange(g.n)
    apl_afters = []
    clustering_afters = []
    undefined = 0
    for removed in removal_sets:
        kept = np.setdiff1d(all_ids, removed, assume_unique=False)
        apl_after, clustering_after = _lcc_metrics(
            subgraph(g, kept), clustering_policy)
        clustering_afters.append(clustering_after)
        if apl_after is None:
            undefined += 1
        else:
            apl_afters.append(apl_after)

    has_apl = len(apl_afters) > 0
    return RobustnessResult(
        strategy=strategy,
        fraction_removed=fraction,
        apl_before=apl_before,
        apl_after=float(np.mean(apl_afters)) if has_apl else None,
        clustering_before=clustering_before,
        clustering_after=float(np.mean(clustering_afters)),
        trials=trials,
        apl_ratio_mean=(float(np.mean([a / apl_before for a in apl_afters]))
                        if has_apl else None),
        undefined_apl_trials=undefined,
    )
