"""Shortest paths with negative integer weights.

Distances are exact Python integers checked against the signed 64-bit range;
leaving it raises :class:`DistanceOverflowError` instead of wrapping.
Unreachable vertices have distance ``math.inf``.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .graph import INT64_MAX, INT64_MIN, Graph, undirected_support

INF = math.inf


class DistanceOverflowError(ArithmeticError):
    pass


class NegativeCycleError(ValueError):
    """Raised when a negative cycle is reachable from the source; carries the witness."""

    def __init__(self, witness: "NegativeCycleWitness"):
        self.witness = witness
        super().__init__(f"negative cycle of weight {witness.total_weight}: {witness.cycle}")


@dataclass(frozen=True)
class NegativeCycleWitness:
    source: int
    cycle: tuple[int, ...]
    edges: tuple[int, ...]  # edges[i] goes from cycle[i] to cycle[(i + 1) % len]
    total_weight: int

    def verify(self, g: Graph) -> bool:
        """Arithmetic check: consecutive arcs exist, sum to total_weight < 0, reachable from source."""
        k = len(self.cycle)
        if k == 0 or len(self.edges) != k:
            return False
        total = 0
        for i, e in enumerate(self.edges):
            u, v, w = g.edges[e]
            if (u, v) != (self.cycle[i], self.cycle[(i + 1) % k]):
                return False
            total += w
        if total != self.total_weight or total >= 0:
            return False
        return self.cycle[0] in _reachable(g, self.source)

    def to_json(self) -> dict:
        return {"source": self.source, "cycle": list(self.cycle), "edges": list(self.edges),
                "total_weight": self.total_weight}


@dataclass(frozen=True)
class ShortestPathTree:
    source: int
    dist: tuple  # int or INF per vertex
    parent: tuple  # vertex or None
    parent_edge: tuple  # edge index or None
    passes: int = 0

    def validate(self, g: Graph) -> list[str]:
        """Tree invariants; returns the violated ones (empty when valid)."""
        errs = []
        s = self.source
        if self.dist[s] != 0 or self.parent[s] is not None:
            errs.append("source must have distance 0 and no parent")
        for v in range(g.n):
            if v == s or self.dist[v] == INF:
                continue
            e = self.parent_edge[v]
            if e is None:
                errs.append(f"reachable vertex {v} has no parent")
                continue
            u, x, w = g.edges[e]
            if x != v or u != self.parent[v] or self.dist[v] != self.dist[u] + w:
                errs.append(f"parent edge of {v} is not tight")
        for u, v, w in g.edges:
            if self.dist[u] != INF and self.dist[v] > self.dist[u] + w:
                errs.append(f"edge ({u}, {v}) is still relaxable")
                break
        return errs

    def to_json(self) -> dict:
        def fmt(d):
            return "inf" if d == INF else d

        return {
            "source": self.source,
            "dist": {str(v): fmt(d) for v, d in enumerate(self.dist)},
            "parent": {str(v): p for v, p in enumerate(self.parent)},
        }


def _reachable(g: Graph, s: int) -> set[int]:
    out = g.out_edges()
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for e in out[u]:
            v = g.edges[e][1]
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def _checked(d: int) -> int:
    if not INT64_MIN <= d <= INT64_MAX:
        raise DistanceOverflowError(f"distance {d} leaves the 64-bit range")
    return d


def _require_directed(g: Graph) -> None:
    if not g.directed:
        raise ValueError("shortest paths run on directed graphs")


def _cycle_in_parents(parent_edge: Sequence[int | None], edges, start: int, n: int):
    """Walk parent pointers from ``start``; return (cycle vertices, arcs) if they loop."""
    v = start
    for _ in range(n):
        e = parent_edge[v]
        if e is None:
            return None
        v = edges[e][0]
    # v is now on the cycle if one exists on this parent chain
    cycle = [v]
    u = v
    while True:
        e = parent_edge[u]
        if e is None:
            return None
        u = edges[e][0]
        if u == v:
            break
        cycle.append(u)
        if len(cycle) > n:
            return None
    cycle.reverse()
    k = len(cycle)
    arcs = [parent_edge[cycle[(i + 1) % k]] for i in range(k)]
    return cycle, arcs


def _witness(g: Graph, s: int, cycle: list[int], arcs: list[int]) -> NegativeCycleWitness:
    total = sum(g.edges[e][2] for e in arcs)
    return NegativeCycleWitness(s, tuple(cycle), tuple(arcs), total)


def _find_parent_cycle(parent_edge, edges, n):
    """Any cycle in the parent graph (colouring walk)."""
    state = [0] * n  # 0 new, 1 on current walk, 2 done
    for start in range(n):
        if state[start]:
            continue
        path = []
        v = start
        while v is not None and state[v] == 0:
            state[v] = 1
            path.append(v)
            e = parent_edge[v]
            v = edges[e][0] if e is not None else None
        if v is not None and state[v] == 1:
            found = _cycle_in_parents(parent_edge, edges, v, n)
            if found:
                return found
        for x in path:
            state[x] = 2
    return None


def bellman_ford(g: Graph, s: int) -> ShortestPathTree:
    """Pass-based Bellman-Ford with early exit.

    Raises :class:`NegativeCycleError` if a negative cycle is reachable from s.
    """
    _require_directed(g)
    n = g.n
    if not 0 <= s < n:
        raise ValueError(f"source {s} not in graph")
    dist = [INF] * n
    parent_edge: list[int | None] = [None] * n
    dist[s] = 0
    edges = g.edges
    last = None
    passes = 0
    for passes in range(1, n + 1):
        last = None
        for i, (u, v, w) in enumerate(edges):
            du = dist[u]
            if du != INF and du + w < dist[v]:
                dist[v] = _checked(du + w)
                parent_edge[v] = i
                last = v
        if last is None:
            break
    if last is not None:
        found = _cycle_in_parents(parent_edge, edges, last, n)
        if found is None:
            found = _find_parent_cycle(parent_edge, edges, n)
        raise NegativeCycleError(_witness(g, s, *found))
    parent = tuple(edges[e][0] if e is not None else None for e in parent_edge)
    return ShortestPathTree(s, tuple(dist), parent, tuple(parent_edge), passes)


def dijkstra(g: Graph, s: int) -> ShortestPathTree:
    """Binary-heap Dijkstra; every weight must be non-negative."""
    _require_directed(g)
    n = g.n
    if not 0 <= s < n:
        raise ValueError(f"source {s} not in graph")
    for i, (u, v, w) in enumerate(g.edges):
        if w < 0:
            raise ValueError(f"dijkstra needs non-negative weights; edge {i} ({u}->{v}) has {w}")
    out = g.out_edges()
    edges = g.edges
    dist = [INF] * n
    parent_edge: list[int | None] = [None] * n
    dist[s] = 0
    done = [False] * n
    heap = [(0, s)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for e in out[u]:
            _, v, w = edges[e]
            nd = d + w
            if nd < dist[v]:
                dist[v] = _checked(nd)
                parent_edge[v] = e
                heapq.heappush(heap, (nd, v))
    parent = tuple(edges[e][0] if e is not None else None for e in parent_edge)
    return ShortestPathTree(s, tuple(dist), parent, tuple(parent_edge))


def check_potentials(g: Graph, phi: Sequence[int]) -> None:
    if len(phi) != g.n:
        raise ValueError(f"need {g.n} potentials, got {len(phi)}")
    for i, (u, v, w) in enumerate(g.edges):
        if w + phi[u] - phi[v] < 0:
            raise ValueError(
                f"invalid potentials: edge {i} ({u}->{v}, w={w}) reduces to {w + phi[u] - phi[v]} < 0")


def reduce_weights(g: Graph, phi: Sequence[int]) -> Graph:
    """w'(u, v) = w(u, v) + phi[u] - phi[v], required to be >= 0 on every edge."""
    _require_directed(g)
    check_potentials(g, phi)
    edges = tuple((u, v, _checked(w + phi[u] - phi[v])) for u, v, w in g.edges)
    return Graph(g.n, edges, directed=True, c_sparse=g.c_sparse)


def potentials(g: Graph, first: ShortestPathTree | None = None) -> list[int]:
    """Feasible potentials for ``g``.

    The distances of ``first`` are used when they reach every vertex;
    otherwise Bellman-Ford runs from a virtual source joined to every vertex
    by a 0-weight arc.
    """
    if first is not None and all(d != INF for d in first.dist):
        return list(first.dist)
    n = g.n
    aug = Graph(n + 1, g.edges + tuple((n, v, 0) for v in range(n)), directed=True,
                c_sparse=math.inf)
    tree = bellman_ford(aug, n)
    return list(tree.dist[:n])


def multi_source_sssp(g: Graph, sources: Sequence[int],
                      division=None) -> list[ShortestPathTree]:
    """Trees for several sources: one negative-weight solve, then Dijkstra on reduced weights.

    The first source is solved with Bellman-Ford (or :func:`region_bellman_ford`
    when a division is given). Its distances, or super-source potentials if it
    does not reach everything, make every weight non-negative; later sources
    run Dijkstra there and their distances are shifted back.
    """
    if not sources:
        return []
    s0 = sources[0]
    first = region_bellman_ford(g, division, s0) if division is not None else bellman_ford(g, s0)
    try:
        phi = potentials(g, first)
    except NegativeCycleError:
        # a negative cycle unreachable from s0: no potentials exist, solve each source directly
        return [first] + [bellman_ford(g, s) for s in sources[1:]]
    reduced = reduce_weights(g, phi)
    trees = [first]
    for s in sources[1:]:
        t = dijkstra(reduced, s)
        dist = tuple(d if d == INF else _checked(d - phi[s] + phi[v]) for v, d in enumerate(t.dist))
        trees.append(ShortestPathTree(s, dist, t.parent, t.parent_edge))
    return trees


def region_bellman_ford(g: Graph, d, s: int) -> ShortestPathTree:
    """Bellman-Ford organised by a division of the undirected support.

    Each round relaxes the arcs of every region to convergence, then the arcs
    touching boundary vertices globally, until a round changes nothing. The
    result equals :func:`bellman_ford`; ``passes`` counts rounds.
    """
    _require_directed(g)
    n = g.n
    if not 0 <= s < n:
        raise ValueError(f"source {s} not in graph")
    support = undirected_support(g)
    region_of_support = {}
    for ri, reg in enumerate(d.regions):
        for e in reg.edge_ids:
            region_of_support[e] = ri
    region_arcs: list[list[int]] = [[] for _ in d.regions]
    for se, arcs in enumerate(support.origin):
        ri = region_of_support.get(se)
        if ri is None:
            raise ValueError(f"support edge {se} is in no region")
        region_arcs[ri].extend(arcs)
    for arcs in region_arcs:
        arcs.sort()
    boundary = set()
    for reg in d.regions:
        boundary |= reg.boundary
    boundary_arcs = [i for i, (u, v, _) in enumerate(g.edges) if u in boundary or v in boundary]
    limits = [max(len(reg.vertices), 1) for reg in d.regions]

    edges = g.edges
    dist = [INF] * n
    parent_edge: list[int | None] = [None] * n
    dist[s] = 0

    def relax(arcs) -> bool:
        changed = False
        for i in arcs:
            u, v, w = edges[i]
            du = dist[u]
            if du != INF and du + w < dist[v]:
                dist[v] = _checked(du + w)
                parent_edge[v] = i
                changed = True
        return changed

    def fail():
        found = _find_parent_cycle(parent_edge, edges, n)
        if found is not None:
            wit = _witness(g, s, *found)
            if wit.total_weight < 0:
                raise NegativeCycleError(wit)
        bellman_ford(g, s)  # raises with a witness
        raise AssertionError("round bound exceeded without a negative cycle")

    rounds = 0
    while True:
        rounds += 1
        if rounds > n:
            fail()
        changed = False
        for arcs, limit in zip(region_arcs, limits):
            inner = 0
            while relax(arcs):
                changed = True
                inner += 1
                if inner > limit:
                    fail()
        if relax(boundary_arcs):
            changed = True
        if not changed:
            break
    parent = tuple(edges[e][0] if e is not None else None for e in parent_edge)
    return ShortestPathTree(s, tuple(dist), parent, tuple(parent_edge), rounds)


def smallest_weight_magnitude(g: Graph) -> int:
    """L: absolute value of the smallest edge weight (0 for an edgeless graph)."""
    w = g.min_weight()
    return 0 if w is None else abs(w)
