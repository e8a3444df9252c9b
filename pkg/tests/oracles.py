"""Independent reference computations used only by the tests."""

from fractions import Fraction
from itertools import product

INF = float("inf")


def enumerate_separations(n, edges, weights, alpha=Fraction(2, 3)):
    """Best separation by labelling every vertex A-only / B-only / S (3^n labellings).

    Returns (|S|, heavier strict side weight, sorted S) minimized in that order.
    """
    total = sum(weights)
    best = None
    for labels in product((0, 1, 2), repeat=n):
        if any((labels[u], labels[v]) in ((0, 1), (1, 0)) for u, v in edges):
            continue
        wa = sum(w for w, l in zip(weights, labels) if l == 0)
        wb = sum(w for w, l in zip(weights, labels) if l == 1)
        if max(wa, wb) > alpha * total:
            continue
        S = tuple(v for v in range(n) if labels[v] == 2)
        key = (len(S), max(wa, wb), S)
        if best is None or key < best:
            best = key
    return best


def dag_shortest_paths(n, arcs, s):
    """Shortest distances in a DAG whose topological order is 0..n-1."""
    dist = [INF] * n
    dist[s] = 0
    by_tail = [[] for _ in range(n)]
    for u, v, w in arcs:
        assert u < v
        by_tail[u].append((v, w))
    for u in range(n):
        if dist[u] == INF:
            continue
        for v, w in by_tail[u]:
            dist[v] = min(dist[v], dist[u] + w)
    return dist


def floyd_warshall(n, arcs):
    d = [[INF] * n for _ in range(n)]
    for v in range(n):
        d[v][v] = 0
    for u, v, w in arcs:
        d[u][v] = min(d[u][v], w)
    for k in range(n):
        dk = d[k]
        for i in range(n):
            dik = d[i][k]
            if dik == INF:
                continue
            di = d[i]
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def region_memberships(regions):
    count = {}
    for reg in regions:
        for v in reg:
            count[v] = count.get(v, 0) + 1
    return count
