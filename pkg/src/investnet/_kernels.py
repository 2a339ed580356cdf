"""Compiled kernels for the metric hot paths (BFS sweeps, triangle counts).

All kernels operate on the CSR arrays of a Graph (``indptr`` int64,
``indices`` int32, neighbor lists sorted ascending) and are compiled with
``nogil=True`` so chunks of BFS sources can run on real OS threads.
"""

import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def bfs_distances(indptr, indices, source, n):
    """Single-source unweighted distances; unreachable nodes get -1."""
    dist = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    dist[source] = 0
    queue[0] = source
    head, tail = 0, 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if dist[v] < 0:
                dist[v] = du + 1
                queue[tail] = v
                tail += 1
    return dist


@njit(cache=True, nogil=True)
def bfs_sweep(indptr, indices, sources, n):
    """BFS from each source; per-source eccentricity, distance sum, reach count.

    Distance sums fit int64 comfortably (diameter < n, pairs < n^2).
    """
    k = len(sources)
    dist = np.empty(n, np.int32)
    queue = np.empty(n, np.int32)
    ecc = np.zeros(k, np.int32)
    dist_sum = np.zeros(k, np.int64)
    reached = np.zeros(k, np.int64)
    for si in range(k):
        s = sources[si]
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head, tail = 0, 1
        total = 0
        reach = 0
        mx = 0
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[u]
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if dist[v] < 0:
                    d = du + 1
                    dist[v] = d
                    queue[tail] = v
                    tail += 1
                    total += d
                    reach += 1
                    if d > mx:
                        mx = d
        ecc[si] = mx
        dist_sum[si] = total
        reached[si] = reach
    return ecc, dist_sum, reached


@njit(cache=True, nogil=True)
def triangles_per_node(indptr, indices, n):
    """Triangles through each node, by sorted-adjacency intersection.

    Each triangle u < v < w is found once from edge (u, v) and credited to
    all three corners, so sum(result) == 3 * total triangle count.
    """
    tri = np.zeros(n, np.int64)
    for u in range(n):
        for j in range(indptr[u], indptr[u + 1]):
            v = indices[j]
            if v <= u:
                continue
            # two-pointer walk over the sorted lists, keeping only w > v
            a = indptr[u]
            b = indptr[v]
            a_end = indptr[u + 1]
            b_end = indptr[v + 1]
            while a < a_end and b < b_end:
                wa = indices[a]
                wb = indices[b]
                if wa < wb:
                    a += 1
                elif wb < wa:
                    b += 1
                else:
                    if wa > v:
                        tri[u] += 1
                        tri[v] += 1
                        tri[wa] += 1
                    a += 1
                    b += 1
    return tri


@njit(cache=True, nogil=True)
def component_labels(indptr, indices, n):
    """Connected-component label per node, in discovery (node id) order."""
    label = np.full(n, -1, np.int32)
    queue = np.empty(n, np.int32)
    current = 0
    for s in range(n):
        if label[s] >= 0:
            continue
        label[s] = current
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for j in range(indptr[u], indptr[u + 1]):
                v = indices[j]
                if label[v] < 0:
                    label[v] = current
                    queue[tail] = v
                    tail += 1
        current += 1
    return label, current
