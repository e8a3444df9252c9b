"""Graph data model with deterministic generators and DIMACS-style file I/O.

Vertices are dense 0-based integers internally. The on-disk format is the
DIMACS shortest-path layout with 1-based ids::

    c comment
    p sp <n> <m>        directed, followed by m lines  a <u> <v> <w>
    p ud <n> <m>        undirected, followed by m lines  e <u> <v>
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)

# Sparsity knob: m <= C_SPARSE * n, a validation default rather than a derived bound.
C_SPARSE = 4


class GraphError(ValueError):
    pass


class GraphParseError(GraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


Edge = tuple[int, int, int]


@dataclass(frozen=True)
class Graph:
    """Immutable integer-weighted graph.

    For undirected graphs each edge is stored once with ``u < v`` and no
    parallel edges. ``origin`` is only set on graphs produced by
    :func:`undirected_support` and maps each support edge to the indices of
    the directed edges it came from.
    """

    n: int
    edges: tuple[Edge, ...]
    directed: bool = True
    origin: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False, repr=False)
    c_sparse: float = field(default=C_SPARSE, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        edges = tuple((int(u), int(v), int(w)) for u, v, w in self.edges)
        object.__setattr__(self, "edges", edges)
        seen = set()
        for i, (u, v, w) in enumerate(edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {i} ({u}, {v}) references a vertex outside [0, {self.n})")
            if u == v:
                raise GraphError(f"edge {i} is a self-loop on vertex {u}")
            if not INT64_MIN <= w <= INT64_MAX:
                raise GraphError(f"edge {i} weight {w} does not fit in 64 bits")
            if not self.directed:
                if u > v:
                    raise GraphError(f"undirected edge {i} must be stored with u < v")
                if (u, v) in seen:
                    raise GraphError(f"parallel undirected edge {{{u}, {v}}}")
                seen.add((u, v))
        if len(edges) > self.c_sparse * max(self.n, 1):
            raise GraphError(
                f"{len(edges)} edges on {self.n} vertices exceeds the sparsity bound "
                f"m <= {self.c_sparse}*n"
            )

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[list[int]]:
        """Neighbour lists of the underlying undirected graph (sorted, deduplicated)."""
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return [sorted(a) for a in adj]

    def out_edges(self) -> list[list[int]]:
        """Per-vertex lists of outgoing edge indices (both directions if undirected)."""
        out: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v, _) in enumerate(self.edges):
            out[u].append(i)
            if not self.directed:
                out[v].append(i)
        return out

    def min_weight(self) -> int | None:
        return min((w for _, _, w in self.edges), default=None)


def make_undirected(n: int, pairs: Iterable[tuple[int, int]], weight: int = 0) -> Graph:
    """Undirected graph from arbitrary (u, v) pairs; orientation and duplicates are normalized."""
    canon = sorted({(min(u, v), max(u, v)) for u, v in pairs})
    return Graph(n, tuple((u, v, weight) for u, v in canon), directed=False)


@dataclass(frozen=True)
class VertexWeighting:
    """Non-negative exact vertex weights indexed by vertex id."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if any(w < 0 for w in ws):
            raise GraphError("vertex weights must be non-negative")
        if ws and sum(ws) <= 0:
            raise GraphError("total vertex weight must be positive")

    @classmethod
    def unit(cls, n: int) -> "VertexWeighting":
        return cls((Fraction(1),) * n)

    @classmethod
    def indicator(cls, n: int, support: Iterable[int]) -> "VertexWeighting":
        marked = set(support)
        return cls(tuple(Fraction(1 if v in marked else 0) for v in range(n)))

    @classmethod
    def from_mapping(cls, n: int, mapping: Mapping[int, object]) -> "VertexWeighting":
        return cls(tuple(Fraction(mapping.get(v, 0)) for v in range(n)))

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, v: int) -> Fraction:
        return self.weights[v]

    def total(self, vertices: Iterable[int] | None = None) -> Fraction:
        if vertices is None:
            return sum(self.weights, Fraction(0))
        return sum((self.weights[v] for v in vertices), Fraction(0))


def undirected_support(g: Graph) -> Graph:
    """One weightless undirected edge per adjacent unordered pair.

    Edge ids of the result are its positions in ``edges`` (sorted by pair);
    ``origin[i]`` lists the edges of ``g`` that collapse onto support edge i.
    """
    groups: dict[tuple[int, int], list[int]] = {}
    for i, (u, v, _) in enumerate(g.edges):
        groups.setdefault((min(u, v), max(u, v)), []).append(i)
    keys = sorted(groups)
    if g.origin is not None and not g.directed:
        # support of a support: keep pointing at the original directed edges
        origin = tuple(
            tuple(sorted(j for i in groups[k] for j in g.origin[i])) for k in keys
        )
    else:
        origin = tuple(tuple(groups[k]) for k in keys)
    return Graph(g.n, tuple((u, v, 0) for u, v in keys), directed=False,
                 origin=origin, c_sparse=g.c_sparse)


def support_edge_index(support: Graph) -> dict[tuple[int, int], int]:
    return {(u, v): i for i, (u, v, _) in enumerate(support.edges)}


# --------------------------------------------------------------------------
# generators


def _check_range(weight_range: Sequence[int]) -> tuple[int, int]:
    lo, hi = int(weight_range[0]), int(weight_range[1])
    if lo > hi:
        raise GraphError(f"empty weight range [{lo}, {hi}]")
    return lo, hi


def grid_pairs(width: int, height: int) -> list[tuple[int, int]]:
    pairs = []
    for y in range(height):
        for x in range(width):
            v = y * width + x
            if x + 1 < width:
                pairs.append((v, v + 1))
            if y + 1 < height:
                pairs.append((v, v + width))
    return pairs


def generate_grid(width: int, height: int, weight_range: Sequence[int] = (1, 1),
                  seed: int = 0, directed: bool = True) -> Graph:
    """width x height grid, vertex ``y*width + x``.

    The directed version carries both orientations of every grid edge, each
    with its own weight drawn from ``weight_range`` (inclusive).
    """
    if width < 1 or height < 1:
        raise GraphError("grid dimensions must be positive")
    lo, hi = _check_range(weight_range)
    rng = random.Random(seed)
    edges = []
    for u, v in grid_pairs(width, height):
        if directed:
            edges.append((u, v, rng.randint(lo, hi)))
            edges.append((v, u, rng.randint(lo, hi)))
        else:
            edges.append((u, v, rng.randint(lo, hi)))
    return Graph(width * height, tuple(edges), directed=directed)


def shift_by_potentials(g: Graph, phi: Sequence[int]) -> Graph:
    """w(u,v) -> w(u,v) - phi[u] + phi[v].

    Cycle weights are unchanged, so a graph with non-negative weights stays
    free of negative cycles while individual weights become mixed-sign.
    """
    edges = tuple((u, v, w - phi[u] + phi[v]) for u, v, w in g.edges)
    return Graph(g.n, edges, directed=g.directed, c_sparse=g.c_sparse)


def generate_mixed_sign_grid(width: int, height: int, weight_range: Sequence[int] = (0, 10),
                             potential_range: Sequence[int] = (0, 5), seed: int = 0) -> Graph:
    """Directed grid with mixed-sign weights and no negative cycles.

    Non-negative base weights are shifted by random vertex potentials.
    """
    lo, _ = _check_range(weight_range)
    if lo < 0:
        raise GraphError("base weight range must be non-negative")
    base = generate_grid(width, height, weight_range, seed, directed=True)
    plo, phi_hi = _check_range(potential_range)
    rng = random.Random(seed ^ 0x5EED)
    phi = [rng.randint(plo, phi_hi) for _ in range(base.n)]
    return shift_by_potentials(base, phi)


def generate_path(n: int) -> Graph:
    return make_undirected(n, [(i, i + 1) for i in range(n - 1)])


def generate_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return make_undirected(n, [(i, (i + 1) % n) for i in range(n)])


def generate_complete(n: int) -> Graph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph(n, tuple((u, v, 0) for u, v in pairs), directed=False,
                 c_sparse=max(C_SPARSE, n))


def generate_star(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return make_undirected(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def generate_random_connected(n: int, extra_edges: int, seed: int) -> Graph:
    """Random spanning tree plus up to ``extra_edges`` extra edges (undirected)."""
    rng = random.Random(seed)
    pairs = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u, v = order[i], order[rng.randrange(i)]
        pairs.add((min(u, v), max(u, v)))
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in pairs]
    rng.shuffle(all_pairs)
    pairs.update(all_pairs[:extra_edges])
    return Graph(n, tuple((u, v, 0) for u, v in sorted(pairs)), directed=False,
                 c_sparse=max(C_SPARSE, n))


def generate_random_digraph(n: int, m: int, weight_range: Sequence[int] = (0, 100),
                            seed: int = 0, potential_range: Sequence[int] | None = None,
                            root: int = 0) -> Graph:
    """Random sparse digraph in which every vertex is reachable from ``root``.

    A random arborescence rooted at ``root`` is laid down first, then random
    arcs until there are ``m`` arcs. With ``potential_range`` the weights are
    shifted by vertex potentials (see :func:`shift_by_potentials`).
    """
    lo, hi = _check_range(weight_range)
    if n < 1:
        raise GraphError("need at least one vertex")
    m = max(m, n - 1)
    rng = random.Random(seed)
    order = [root] + [v for v in range(n) if v != root]
    rest = order[1:]
    rng.shuffle(rest)
    order = [root] + rest
    edges = []
    for i in range(1, n):
        edges.append((order[rng.randrange(i)], order[i], rng.randint(lo, hi)))
    if n > 1:
        while len(edges) < m:
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                edges.append((u, v, rng.randint(lo, hi)))
    g = Graph(n, tuple(edges), directed=True)
    if potential_range is not None:
        plo, phi_hi = _check_range(potential_range)
        phi = [rng.randint(plo, phi_hi) for _ in range(n)]
        g = shift_by_potentials(g, phi)
    return g


def generate_random_dag(n: int, m: int, weight_range: Sequence[int] = (-10, 10),
                        seed: int = 0) -> Graph:
    """Random DAG over topological order 0..n-1 containing the path 0->1->...->n-1."""
    lo, hi = _check_range(weight_range)
    rng = random.Random(seed)
    edges = [(i, i + 1, rng.randint(lo, hi)) for i in range(n - 1)]
    while len(edges) < m and n > 2:
        u, v = sorted(rng.sample(range(n), 2))
        edges.append((u, v, rng.randint(lo, hi)))
    return Graph(n, tuple(edges), directed=True)


def plant_negative_cycle(g: Graph, length: int, seed: int, weight: int = -10) -> Graph:
    """Append a directed cycle of ``length`` arcs of weight ``weight`` (< 0) on random vertices."""
    if weight >= 0:
        raise GraphError("planted cycle weight must be negative")
    rng = random.Random(seed)
    length = max(2, min(length, g.n))
    verts = rng.sample(range(g.n), length)
    extra = tuple((verts[i], verts[(i + 1) % length], weight) for i in range(length))
    return Graph(g.n, g.edges + extra, directed=True,
                 c_sparse=max(g.c_sparse, (g.m + length) / max(g.n, 1)))


# --------------------------------------------------------------------------
# file I/O


class GraphFormat(enum.Enum):
    AUTO = "auto"
    SP = "sp"
    UD = "ud"


def save_graph(g: Graph, comments: Sequence[str] = ()) -> bytes:
    """Serialize in canonical form: comments, header, one line per edge in stored order."""
    lines = [f"c {c}" for c in comments]
    if g.directed:
        lines.append(f"p sp {g.n} {g.m}")
        lines.extend(f"a {u + 1} {v + 1} {w}" for u, v, w in g.edges)
    else:
        lines.append(f"p ud {g.n} {g.m}")
        lines.extend(f"e {u + 1} {v + 1}" for u, v, _ in g.edges)
    return ("\n".join(lines) + "\n").encode("ascii")


def _parse_int(tok: str, lineno: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphParseError(f"{what} {tok!r} is not an integer", lineno) from None


def load_graph(data: bytes | str, format: GraphFormat | str = GraphFormat.AUTO) -> Graph:
    text = data.decode("ascii", errors="strict") if isinstance(data, bytes) else data
    format = GraphFormat(format)
    header = None
    pairs: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        toks = line.split()
        tag = toks[0]
        if tag == "p":
            if header is not None:
                raise GraphParseError("duplicate header", lineno)
            if len(toks) != 4 or toks[1] not in ("sp", "ud"):
                raise GraphParseError("header must be 'p sp <n> <m>' or 'p ud <n> <m>'", lineno)
            kind = toks[1]
            if format is not GraphFormat.AUTO and format.value != kind:
                raise GraphParseError(f"expected '{format.value}' file, found '{kind}'", lineno)
            n = _parse_int(toks[2], lineno, "vertex count")
            m = _parse_int(toks[3], lineno, "edge count")
            if n < 0 or m < 0:
                raise GraphParseError("negative counts in header", lineno)
            header = (kind, n, m)
            continue
        if header is None:
            raise GraphParseError("edge line before header", lineno)
        kind, n, _ = header
        if kind == "sp":
            if tag != "a" or len(toks) != 4:
                raise GraphParseError("arc line must be 'a <u> <v> <w>'", lineno)
            w = _parse_int(toks[3], lineno, "weight")
        else:
            if tag != "e" or len(toks) != 3:
                raise GraphParseError("edge line must be 'e <u> <v>'", lineno)
            w = 0
        u = _parse_int(toks[1], lineno, "vertex")
        v = _parse_int(toks[2], lineno, "vertex")
        for x in (u, v):
            if not 1 <= x <= n:
                raise GraphParseError(f"vertex {x} outside 1..{n} (ids are 1-based)", lineno)
        if u == v:
            raise GraphParseError(f"self-loop on vertex {u}", lineno)
        if not INT64_MIN <= w <= INT64_MAX:
            raise GraphParseError(f"weight {w} does not fit in 64 bits", lineno)
        pairs.append((u - 1, v - 1, w))
    if header is None:
        raise GraphParseError("missing 'p' header line")
    kind, n, m = header
    if len(pairs) != m:
        raise GraphParseError(f"header declares {m} edges but {len(pairs)} were read")
    try:
        if kind == "sp":
            return Graph(n, tuple(pairs), directed=True)
        canon = sorted((min(u, v), max(u, v)) for u, v, _ in pairs)
        if len(set(canon)) != len(canon):
            raise GraphParseError("duplicate undirected edge")
        return Graph(n, tuple((u, v, 0) for u, v in canon), directed=False)
    except GraphParseError:
        raise
    except GraphError as exc:
        raise GraphParseError(str(exc)) from exc


def canonicalize(data: bytes | str) -> bytes:
    """Canonical byte form of a graph file (what ``save_graph(load_graph(x))`` yields)."""
    return save_graph(load_graph(data))
