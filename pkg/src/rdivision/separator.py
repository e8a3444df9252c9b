"""Balanced vertex separators.

A separation (A, B) covers V, has no edge between A\\B and B\\A, and keeps
each strict side at weight <= alpha * w(V). Two backends share one contract:

* :func:`brute_force_separator` -- exhaustive, minimum |S|, small graphs only.
* :func:`bfs_layer_separator` -- BFS level cuts from a few roots.

Given a candidate separator S, the components of G - S are distributed over
the two strict sides by an exact subset-sum so the heavier side is as light as
possible; that step is shared by both backends.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterable, Sequence

from .graph import Graph, VertexWeighting

log = logging.getLogger(__name__)

N_BRUTE = 18
C_SEP = 4
DEFAULT_ALPHA = Fraction(2, 3)


class SeparatorError(RuntimeError):
    pass


@dataclass(frozen=True)
class SeparatorContract:
    """(f(n), alpha) budget for one separator call; f(n) = floor(c_sep * n^((2-gamma')/3))."""

    gamma_prime: float = 0.5
    alpha: Fraction = DEFAULT_ALPHA
    c_sep: float = C_SEP

    def __post_init__(self):
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if not 0 <= self.gamma_prime <= 0.5:
            raise ValueError(f"gamma' = {self.gamma_prime} outside [0, 1/2]")
        if not Fraction(1, 2) <= self.alpha <= Fraction(2, 3):
            raise ValueError(f"alpha = {self.alpha} outside [1/2, 2/3]")

    def size_bound(self, n: int) -> int:
        return math.floor(self.c_sep * n ** ((2 - self.gamma_prime) / 3))

    def effort(self, n: int) -> int:
        """Search effort matching the T(n) = n^(1+gamma') cost model: n^gamma' BFS sweeps."""
        return max(1, min(n, math.ceil(n ** self.gamma_prime)))


@dataclass(frozen=True)
class Separation:
    A: frozenset
    B: frozenset
    alpha_achieved: Fraction
    backend: str = ""
    within_budget: bool | None = None
    S: frozenset = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "S", self.A & self.B)

    @property
    def a_only(self) -> frozenset:
        return self.A - self.B

    @property
    def b_only(self) -> frozenset:
        return self.B - self.A

    @property
    def proper(self) -> bool:
        """Both strict sides non-empty."""
        return bool(self.A - self.B) and bool(self.B - self.A)

    def to_json(self) -> dict:
        return {
            "A": sorted(self.A),
            "B": sorted(self.B),
            "S": sorted(self.S),
            "alpha_achieved": f"{self.alpha_achieved.numerator}/{self.alpha_achieved.denominator}",
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Separation":
        return cls(frozenset(obj["A"]), frozenset(obj["B"]), Fraction(obj["alpha_achieved"]))


# --------------------------------------------------------------------------
# shared machinery


def _integer_weights(vw: VertexWeighting) -> list[int]:
    den = 1
    for w in vw.weights:
        den = den * w.denominator // math.gcd(den, w.denominator)
    return [int(w * den) for w in vw.weights]


def components(n: int, adj: Sequence[Sequence[int]], removed: Iterable[int] = (),
               vertices: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of G - removed, each sorted, ordered by smallest vertex."""
    blocked = bytearray(n)
    for v in removed:
        blocked[v] = 1
    out = []
    for s in (range(n) if vertices is None else sorted(vertices)):
        if blocked[s]:
            continue
        blocked[s] = 1
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for x in adj[u]:
                if not blocked[x]:
                    blocked[x] = 1
                    comp.append(x)
                    queue.append(x)
        comp.sort()
        out.append(comp)
    return out


def balance_components(weights: Sequence[int]) -> tuple[int, list[bool]]:
    """Split items of the given weights into two groups minimizing the heavier group.

    Returns (heavier group weight, membership of each item in the first group).
    Among optimal splits the lexicographically greatest membership vector is
    chosen (earlier items prefer the first group).
    """
    c = len(weights)
    total = sum(weights)
    suffix = [0] * (c + 1)
    suffix[c] = 1
    for i in range(c - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (suffix[i + 1] << weights[i])
    reach = suffix[0]
    best = None
    for s in range((total + 1) // 2, total + 1) if total else [0]:
        if reach >> s & 1 or reach >> (total - s) & 1:
            best = s
            break
    targets = {best, total - best}
    take = []
    cur = 0
    for i, w in enumerate(weights):
        nxt = suffix[i + 1]
        if any(t - cur - w >= 0 and nxt >> (t - cur - w) & 1 for t in targets):
            take.append(True)
            cur += w
        else:
            take.append(False)
    return best, take


def _assemble(S: Iterable[int], comps: Sequence[Sequence[int]], take: Sequence[bool],
              heavy: int, total: int, backend: str) -> Separation:
    S = frozenset(S)
    a_only = [v for comp, t in zip(comps, take) if t for v in comp]
    b_only = [v for comp, t in zip(comps, take) if not t for v in comp]
    alpha = Fraction(heavy, total) if total else Fraction(0)
    return Separation(S | frozenset(a_only), S | frozenset(b_only), alpha, backend)


def _fits(heavy: int, total: int, alpha: Fraction) -> bool:
    return heavy * alpha.denominator <= alpha.numerator * total


def _require_undirected(g: Graph) -> None:
    if g.directed:
        raise ValueError("separators operate on the undirected support")


# --------------------------------------------------------------------------
# backends


def brute_force_separator(g: Graph, vw: VertexWeighting, alpha: Fraction = DEFAULT_ALPHA,
                          n_brute: int = N_BRUTE) -> Separation:
    """Minimum-|S| alpha-balanced separation by exhaustive search.

    Ties on |S| go to the better balance, then to the lexicographically
    smallest S.
    """
    _require_undirected(g)
    if g.n > n_brute:
        raise SeparatorError(f"brute force refuses n = {g.n} > {n_brute}")
    alpha = Fraction(alpha)
    n = g.n
    adj = g.adjacency()
    w = _integer_weights(vw)
    total = sum(w)
    for k in range(n + 1):
        best = None
        for S in combinations(range(n), k):
            comps = components(n, adj, S)
            heavy, take = balance_components([sum(w[v] for v in c) for c in comps])
            if not _fits(heavy, total, alpha):
                continue
            if best is None or heavy < best[0]:
                best = (heavy, S, comps, take)
        if best is not None:
            heavy, S, comps, take = best
            return _assemble(S, comps, take, heavy, total, "brute")
    raise AssertionError("S = V is always balanced")


def _bfs_layers(adj: Sequence[Sequence[int]], root: int) -> list[list[int]]:
    seen = {root}
    layers = [[root]]
    while True:
        nxt = []
        for u in layers[-1]:
            for x in adj[u]:
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
        if not nxt:
            return layers
        nxt.sort()
        layers.append(nxt)


def _pick_roots(adj, comp: list[int], k: int) -> list[int]:
    roots = [comp[0]]
    if k > 1 and len(comp) > 1:
        far = _bfs_layers(adj, comp[0])[-1][0]
        if far != comp[0]:
            roots.append(far)
    i = 0
    while len(roots) < min(k, len(comp)):
        v = comp[(i * len(comp)) // k]
        if v not in roots:
            roots.append(v)
        i += 1
        if i > 2 * k:
            for v in comp:
                if len(roots) >= k:
                    break
                if v not in roots:
                    roots.append(v)
            break
    return roots


def bfs_layer_separator(g: Graph, vw: VertexWeighting, alpha: Fraction = DEFAULT_ALPHA,
                        roots: int = 1, max_full_evals: int = 4,
                        objective: str = "size") -> Separation:
    """Separator made of one BFS layer, or no vertex at all if components already balance.

    BFS runs from ``roots`` start vertices in the heaviest component (its
    smallest vertex, a far vertex, then evenly spaced ones). Every layer is a
    candidate; sides are first taken as "before" vs "after" the layer, and for
    a few of the smallest candidates failing that test (``max_full_evals`` per
    call) the components of G - layer are rebalanced exactly. Candidates with both strict sides non-empty are
    preferred, then smaller |S|, then better balance.
    """
    _require_undirected(g)
    alpha = Fraction(alpha)
    n = g.n
    if n == 0:
        raise SeparatorError("empty graph")
    adj = g.adjacency()
    w = _integer_weights(vw)
    total = sum(w)
    unit = max(w) if objective == "progress" and any(w) else 1

    best_key = None
    best_sep = None

    def offer(key, build):
        nonlocal best_key, best_sep
        if best_key is None or key < best_key:
            best_key, best_sep = key, build

    def rank(size, heavy):
        return size if objective == "size" else size * unit + heavy

    def full_eval(S):
        comps = components(n, adj, S)
        heavy, take = balance_components([sum(w[v] for v in c) for c in comps])
        if not _fits(heavy, total, alpha):
            return None
        degenerate = all(take) or not any(take)
        return (degenerate, rank(len(S), heavy), heavy, tuple(sorted(S))), (S, comps, take, heavy)

    comps0 = components(n, adj)
    res = full_eval(())
    if res:
        offer(*res)
    # S = V is balanced trivially and keeps the search total
    offer((True, rank(n, 0), 0, tuple(range(n))), (tuple(range(n)), [], [], 0))

    comp_w = [sum(w[v] for v in c) for c in comps0]
    main = max(range(len(comps0)), key=lambda i: (comp_w[i], -comps0[i][0]))
    comp = comps0[main]
    others_w = total - comp_w[main]
    others = [c for i, c in enumerate(comps0) if i != main]

    full_evals = 0
    for root in _pick_roots(adj, comp, roots):
        layers = _bfs_layers(adj, root)
        lw = [sum(w[v] for v in L) for L in layers]
        before = 0
        pending = []
        for i, L in enumerate(layers):
            after = comp_w[main] - before - lw[i]
            heavy = max(before, after + others_w)
            if _fits(heavy, total, alpha):
                degenerate = i == 0 or (i == len(layers) - 1 and not others)
                key = (degenerate, rank(len(L), heavy), heavy, tuple(L))
                if best_key is None or key < best_key:
                    offer(key, ("layers", layers, i, others, heavy))
            elif _fits(before, total, alpha):
                # the part before the layer is connected, so only a heavy
                # "after" part can be rebalanced by splitting its components
                pending.append(i)
            before += lw[i]
        pending.sort(key=lambda i: (len(layers[i]), i))
        for i in pending:
            if full_evals >= max_full_evals:
                break
            if not best_key[0] and rank(len(layers[i]), 0) >= best_key[1]:
                break
            full_evals += 1
            res = full_eval(layers[i])
            if res:
                offer(*res)

    if best_sep[0] == "layers":
        _, layers, i, others, heavy = best_sep
        a = frozenset(v for L in layers[: i + 1] for v in L)
        b = frozenset(v for L in layers[i:] for v in L) | frozenset(v for c in others for v in c)
        alpha_ach = Fraction(heavy, total) if total else Fraction(0)
        return Separation(a, b, alpha_ach, "bfs-layer")
    S, comps, take, heavy = best_sep
    return _assemble(S, comps, take, heavy, total, "bfs-layer")


BACKENDS: dict[str, Callable] = {"brute": brute_force_separator, "bfs-layer": bfs_layer_separator}


def separate(g: Graph, vw: VertexWeighting, contract: SeparatorContract = SeparatorContract(),
             backend: str = "auto", n_brute: int = N_BRUTE, objective: str = "size") -> Separation:
    """Contract-level entry point.

    ``backend='auto'`` uses brute force up to ``n_brute`` vertices and the
    BFS-layer heuristic above. The returned separation is always valid; an
    over-budget |S| is flagged via ``within_budget`` and logged, not raised.
    """
    if backend == "auto":
        backend = "brute" if g.n <= n_brute else "bfs-layer"
    if backend == "brute":
        sep = brute_force_separator(g, vw, contract.alpha, n_brute=max(n_brute, g.n))
    elif backend == "bfs-layer":
        sep = bfs_layer_separator(g, vw, contract.alpha, roots=contract.effort(g.n),
                                  objective=objective)
    else:
        raise ValueError(f"unknown separator backend {backend!r}")
    ok = len(sep.S) <= contract.size_bound(g.n)
    if not ok:
        log.warning("separator of size %d exceeds budget %d on n=%d",
                    len(sep.S), contract.size_bound(g.n), g.n)
    return Separation(sep.A, sep.B, sep.alpha_achieved, sep.backend, ok)


@dataclass
class SeparationReport:
    passed: bool
    failures: list[str]

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": self.failures}


def validate_separation(g: Graph, vw: VertexWeighting, sep: Separation,
                        contract: SeparatorContract | None = None) -> SeparationReport:
    """Check every separation clause; report each violated one."""
    fails = []
    V = frozenset(range(g.n))
    if sep.A | sep.B != V:
        fails.append("cover: A u B != V")
    if sep.S != sep.A & sep.B:
        fails.append("separator: S != A n B")
    a_only, b_only = sep.A - sep.B, sep.B - sep.A
    for u, v, _ in g.edges:
        if (u in a_only and v in b_only) or (u in b_only and v in a_only):
            fails.append(f"edge: {{{u}, {v}}} joins A\\B and B\\A")
            break
    alpha = contract.alpha if contract is not None else DEFAULT_ALPHA
    total = vw.total()
    for name, side in (("A\\B", a_only), ("B\\A", b_only)):
        if vw.total(side) > alpha * total:
            fails.append(f"balance: w({name}) = {vw.total(side)} > {alpha} * {total}")
    if contract is not None and len(sep.S) > contract.size_bound(g.n):
        fails.append(f"budget: |S| = {len(sep.S)} > f(n) = {contract.size_bound(g.n)}")
    return SeparationReport(not fails, fails)
