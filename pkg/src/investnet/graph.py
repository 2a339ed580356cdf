"""Immutable undirected simple graph with per-node role labels.

Nodes are dense integers 0..n-1 assigned in first-seen order of the input
labels, adjacency is CSR-style (``indptr``/``indices``) with neighbor lists
sorted ascending, and every node carries the side(s) of the two-column
input it appeared on: left column = startup side, right column = investor
side, both = ``NodeRole.BOTH``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import EmptyLabelError, OutOfRangeError, SelfLoopError


class NodeRole(Enum):
    STARTUP = "startup"
    INVESTOR = "investor"
    BOTH = "both"


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; immutable after construction.

    Safe for concurrent reads. ``indptr`` has length n+1; ``indices`` holds
    the 2m neighbor entries, sorted ascending within each node's slice.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[str, ...]
    roles: tuple[NodeRole, ...]

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return self.indices.size // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr).astype(np.int64)

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of v (read-only view)."""
        if not 0 <= v < self.n:
            raise OutOfRangeError(f"node id {v} not in 0..{self.n - 1}")
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return i < nbrs.size and nbrs[i] == v

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, sorted lexicographically."""
        u = np.repeat(np.arange(self.n, dtype=np.int64), np.diff(self.indptr))
        v = self.indices.astype(np.int64)
        keep = u < v
        return np.column_stack([u[keep], v[keep]])


@dataclass(frozen=True)
class ComponentPartition:
    """Partition of nodes by reachability.

    Component ids are assigned by descending size; ties broken by the
    smallest node id the component contains.
    """

    component_id: np.ndarray
    component_sizes: tuple[int, ...]

    @property
    def n_components(self) -> int:
        return len(self.component_sizes)

    def members(self, cid: int) -> np.ndarray:
        return np.flatnonzero(self.component_id == cid)


def _assemble(n: int, edges: np.ndarray, labels: tuple[str, ...],
              roles: tuple[NodeRole, ...]) -> Graph:
    """Build the CSR arrays from a deduplicated (m, 2) int edge array."""
    if edges.size:
        u = np.concatenate([edges[:, 0], edges[:, 1]])
        v = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.lexsort((v, u))
        indices = v[order].astype(np.int32)
        counts = np.bincount(u, minlength=n)
    else:
        indices = np.empty(0, np.int32)
        counts = np.zeros(n, np.int64)
    indptr = np.zeros(n + 1, np.int64)
    np.cumsum(counts, out=indptr[1:])
    indptr.setflags(write=False)
    indices.setflags(write=False)
    return Graph(indptr=indptr, indices=indices, labels=labels, roles=roles)


def from_edge_array(n: int, edges: Sequence[tuple[int, int]] | np.ndarray,
                    labels: Sequence[str] | None = None) -> Graph:
    """Graph from integer edge endpoints; plumbing for generators.

    Labels default to "v0".."v{n-1}". Roles follow the same column rule as
    ``build_graph``: first endpoint counts as the startup side, second as
    the investor side. Nodes that appear in no edge default to STARTUP.
    """
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    if edges.size and (edges.min() < 0 or edges.max() >= n):
        raise OutOfRangeError("edge endpoint outside 0..n-1")
    if np.any(edges[:, 0] == edges[:, 1]):
        raise SelfLoopError(str(int(edges[edges[:, 0] == edges[:, 1]][0, 0])))
    if labels is None:
        labels = tuple(f"v{i}" for i in range(n))
    else:
        labels = tuple(labels)
        if len(labels) != n:
            raise ValueError("labels length must equal n")
    left = np.zeros(n, bool)
    right = np.zeros(n, bool)
    if edges.size:
        left[edges[:, 0]] = True
        right[edges[:, 1]] = True
        lo = np.minimum(edges[:, 0], edges[:, 1])
        hi = np.maximum(edges[:, 0], edges[:, 1])
        edges = np.unique(np.column_stack([lo, hi]), axis=0)
    roles = tuple(
        NodeRole.BOTH if left[i] and right[i]
        else NodeRole.INVESTOR if right[i]
        else NodeRole.STARTUP
        for i in range(n)
    )
    return _assemble(n, edges, labels, roles)


def build_graph(pairs: Iterable[tuple[str, str]], *, case_fold: bool = False) -> Graph:
    """Build a role-labelled graph from (startup, investor) label pairs.

    One node per distinct label, ids in first-seen order (left before right
    within a pair); one edge per distinct unordered pair, duplicates
    collapsed silently. Labels are trimmed before matching; matching is
    exact unless ``case_fold`` is set (stored spelling is the first seen).

    Raises SelfLoopError when a pair joins a label to itself and
    EmptyLabelError on a blank label.
    """
    ids: dict[str, int] = {}
    labels: list[str] = []
    left_seen: list[bool] = []
    right_seen: list[bool] = []
    edge_order: dict[tuple[int, int], None] = {}

    def intern(label: str, is_left: bool) -> int:
        text = label.strip()
        if not text:
            raise EmptyLabelError("blank node label")
        key = text.casefold() if case_fold else text
        i = ids.get(key)
        if i is None:
            i = len(labels)
            ids[key] = i
            labels.append(text)
            left_seen.append(False)
            right_seen.append(False)
        if is_left:
            left_seen[i] = True
        else:
            right_seen[i] = True
        return i

    for left_label, right_label in pairs:
        u = intern(left_label, True)
        v = intern(right_label, False)
        if u == v:
            raise SelfLoopError(labels[u])
        edge_order[(u, v) if u < v else (v, u)] = None

    n = len(labels)
    edges = np.array(list(edge_order), dtype=np.int64).reshape(-1, 2)
    roles = tuple(
        NodeRole.BOTH if left_seen[i] and right_seen[i]
        else NodeRole.INVESTOR if right_seen[i]
        else NodeRole.STARTUP
        for i in range(n)
    )
    return _assemble(n, edges, tuple(labels), roles)


def degree(g: Graph, v: int) -> int:
    """Number of edges incident to v."""
    if not 0 <= v < g.n:
        raise OutOfRangeError(f"node id {v} not in 0..{g.n - 1}")
    return int(g.indptr[v + 1] - g.indptr[v])


def connected_components(g: Graph) -> ComponentPartition:
    """Partition nodes by reachability.

    Ids are ordered by descending component size; ties go to the component
    containing the smallest node id.
    """
    if g.n == 0:
        return ComponentPartition(component_id=np.empty(0, np.int32),
                                  component_sizes=())
    raw, count = _kernels.component_labels(g.indptr, g.indices, g.n)
    sizes = np.bincount(raw, minlength=count)
    # raw labels are in discovery order, i.e. ascending smallest-member id,
    # so a stable sort on size alone realizes the tie-break rule
    order = sorted(range(count), key=lambda c: -sizes[c])
    remap = np.empty(count, np.int32)
    for new, old in enumerate(order):
        remap[old] = new
    component_id = remap[raw]
    component_id.setflags(write=False)
    return ComponentPartition(
        component_id=component_id,
        component_sizes=tuple(int(sizes[c]) for c in order),
    )


def is_strictly_bipartite(g: Graph) -> bool:
    """True iff no node plays both roles and every edge joins the two sides.

    This is the observational reading: a node's side comes from the input
    columns, not from a 2-coloring search.
    """
    if any(r is NodeRole.BOTH for r in g.roles):
        return False
    code = np.fromiter((0 if r is NodeRole.STARTUP else 1 for r in g.roles),
                       np.int8, count=g.n)
    u = np.repeat(np.arange(g.n, dtype=np.int64), np.diff(g.indptr))
    return bool(np.all(code[u] != code[g.indices]))


def subgraph(g: Graph, keep: np.ndarray | Sequence[int]) -> Graph:
    """Induced subgraph on the given node ids, relabelled densely.

    Kept nodes are renumbered 0..k-1 in ascending original id; labels and
    roles carry over.
    """
    keep = np.asarray(keep, dtype=np.int64)
    if keep.size and (keep.min() < 0 or keep.max() >= g.n):
        raise OutOfRangeError("kept node id outside 0..n-1")
    keep = np.unique(keep)
    new_id = np.full(g.n, -1, np.int64)
    new_id[keep] = np.arange(keep.size)
    edges = g.edge_array()
    if edges.size:
        mask = (new_id[edges[:, 0]] >= 0) & (new_id[edges[:, 1]] >= 0)
        edges = new_id[edges[mask]]
    labels = tuple(g.labels[i] for i in keep)
    roles = tuple(g.roles[i] for i in keep)
    return _assemble(keep.size, edges.reshape(-1, 2), labels, roles)
