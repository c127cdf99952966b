"""Per-source shortest-path sweeps over CSR adjacency.

The unweighted kernels are JIT-compiled and release the GIL; sources are
processed in fixed-size blocks and partial results are reduced in block
order, so results are bitwise identical for any worker count. Weighted
sweeps (path length = sum of 1/weight) run in plain Python and are meant
for the opt-in weighted centrality mode.
"""

from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from itertools import count

import numpy as np
from numba import njit

from .errors import DataError

BLOCK_SIZE = 256


@njit(cache=True, nogil=True)
def _bfs_block(indptr, indices, sources):
    """Geodesic distance sum and reach count (source included) per source."""
    n = indptr.shape[0] - 1
    out_sum = np.zeros(sources.shape[0], np.int64)
    out_reach = np.zeros(sources.shape[0], np.int64)
    dist = np.empty(n, np.int64)
    queue = np.empty(n, np.int64)
    for si in range(sources.shape[0]):
        s = sources[si]
        dist[:] = -1
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        dsum = 0
        while head < tail:
            x = queue[head]
            head += 1
            dx = dist[x]
            dsum += dx
            for k in range(indptr[x], indptr[x + 1]):
                y = indices[k]
                if dist[y] < 0:
                    dist[y] = dx + 1
                    queue[tail] = y
                    tail += 1
        out_sum[si] = dsum
        out_reach[si] = tail
    return out_sum, out_reach


@njit(cache=True, nogil=True)
def _brandes_block(indptr, indices, rindptr, rindices, sources):
    """Brandes dependency accumulation for a block of sources.

    Forward arcs drive the BFS; reverse arcs identify predecessors in the
    accumulation pass (pass the same arrays twice for undirected networks).
    Returns the block's partial betweenness vector.
    """
    n = indptr.shape[0] - 1
    part = np.zeros(n, np.float64)
    dist = np.empty(n, np.int64)
    sigma = np.empty(n, np.float64)
    delta = np.empty(n, np.float64)
    order = np.empty(n, np.int64)
    for si in range(sources.shape[0]):
        s = sources[si]
        dist[:] = -1
        sigma[:] = 0.0
        delta[:] = 0.0
        dist[s] = 0
        sigma[s] = 1.0
        order[0] = s
        head = 0
        tail = 1
        while head < tail:
            x = order[head]
            head += 1
            dx = dist[x]
            for k in range(indptr[x], indptr[x + 1]):
                y = indices[k]
                if dist[y] < 0:
                    dist[y] = dx + 1
                    order[tail] = y
                    tail += 1
                if dist[y] == dx + 1:
                    sigma[y] += sigma[x]
        for i in range(tail - 1, 0, -1):
            w = order[i]
            coeff = (1.0 + delta[w]) / sigma[w]
            for k in range(rindptr[w], rindptr[w + 1]):
                v = rindices[k]
                if dist[v] == dist[w] - 1:
                    delta[v] += sigma[v] * coeff
            part[w] += delta[w]
    return part


def _blocks(n: int) -> list[np.ndarray]:
    return [
        np.arange(i, min(i + BLOCK_SIZE, n), dtype=np.int64)
        for i in range(0, n, BLOCK_SIZE)
    ]


def _run_blocks(fn, blocks, workers: int):
    if workers <= 1 or len(blocks) <= 1:
        return [fn(b) for b in blocks]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, blocks))


def _length_adjacency(net) -> list[list[tuple[int, float]]]:
    indptr, indices, weights = net.adjacency()
    if weights.size and weights.min() <= 0:
        raise DataError("weighted distances require strictly positive edge weights")
    adj: list[list[tuple[int, float]]] = []
    for i in range(net.node_count):
        row = [
            (int(indices[k]), 1.0 / float(weights[k]))
            for k in range(indptr[i], indptr[i + 1])
        ]
        adj.append(row)
    return adj


def _dijkstra(adj, s, n):
    """Distances, visit order, path counts and predecessor lists from s."""
    dist: dict[int, float] = {}
    seen = {s: 0.0}
    sigma = [0.0] * n
    sigma[s] = 1.0
    preds: list[list[int]] = [[] for _ in range(n)]
    order: list[int] = []
    c = count()
    heap = [(0.0, next(c), s)]
    while heap:
        d, _, v = heapq.heappop(heap)
        if v in dist:
            continue
        dist[v] = d
        order.append(v)
        for w, lw in adj[v]:
            if w in dist:
                continue
            nd = d + lw
            old = seen.get(w)
            if old is None or nd < old:
                seen[w] = nd
                sigma[w] = sigma[v]
                preds[w] = [v]
                heapq.heappush(heap, (nd, next(c), w))
            elif nd == old:
                sigma[w] += sigma[v]
                preds[w].append(v)
    return dist, order, sigma, preds


def distance_stats(net, *, weighted: bool = False, workers: int = 1):
    """Per-source (distance sum, reach count) over every node as source."""
    n = net.node_count
    if n == 0:
        return np.zeros(0, np.float64), np.zeros(0, np.int64)
    if not weighted:
        indptr, indices, _ = net.adjacency()
        results = _run_blocks(
            lambda b: _bfs_block(indptr, indices, b), _blocks(n), workers
        )
        sums = np.concatenate([r[0] for r in results]).astype(np.float64)
        reach = np.concatenate([r[1] for r in results])
        return sums, reach
    adj = _length_adjacency(net)

    def block(sources):
        bs = np.zeros(sources.shape[0], np.float64)
        br = np.zeros(sources.shape[0], np.int64)
        for i, s in enumerate(sources):
            dist, _, _, _ = _dijkstra(adj, int(s), n)
            bs[i] = sum(dist.values())
            br[i] = len(dist)
        return bs, br

    results = _run_blocks(block, _blocks(n), workers)
    sums = np.concatenate([r[0] for r in results])
    reach = np.concatenate([r[1] for r in results])
    return sums, reach


def betweenness_raw(net, *, weighted: bool = False, workers: int = 1) -> np.ndarray:
    """Source-summed Brandes dependencies (caller halves undirected totals)."""
    n = net.node_count
    if n == 0:
        return np.zeros(0, np.float64)
    if not weighted:
        indptr, indices, _ = net.adjacency()
        rindptr, rindices, _ = net.in_adjacency()
        results = _run_blocks(
            lambda b: _brandes_block(indptr, indices, rindptr, rindices, b),
            _blocks(n),
            workers,
        )
    else:
        adj = _length_adjacency(net)

        def block(sources):
            part = np.zeros(n, np.float64)
            delta = [0.0] * n
            for s in sources:
                s = int(s)
                dist, order, sigma, preds = _dijkstra(adj, s, n)
                for i in range(n):
                    delta[i] = 0.0
                for w in reversed(order):
                    coeff = (1.0 + delta[w]) / sigma[w]
                    for v in preds[w]:
                        delta[v] += sigma[v] * coeff
                    if w != s:
                        part[w] += delta[w]
            return part

        results = _run_blocks(block, _blocks(n), workers)
    total = np.zeros(n, np.float64)
    for part in results:
        total += part
    return total
