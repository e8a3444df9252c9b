"""Weak and full (r, p)-divisions with an adaptive separator-quality schedule.

A division partitions the edge ids of the undirected support into regions;
a region's vertices are the endpoints of its edges and its boundary is the
set of those vertices that also lie in another region.

The weak division recursively separates every region with more than ``r``
vertices. The separator quality exponent gamma' used for a region of size N
depends on the schedule:

* ``fixed`` -- gamma' = gamma_target everywhere;
* ``adaptive`` -- gamma' = (2 log r - 3 log p) / log N;
* ``adaptive_eps`` -- gamma' = (2 log r - 3 log p - 3 eps log(N/r)) / log N,

where p = r^((2 - gamma_target)/3). Refinement then splits every region with
more than ``c_bnd * p`` boundary vertices using separators weighted on those
boundary vertices.
"""

from __future__ import annotations

import enum
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import Graph, VertexWeighting, undirected_support
from .separator import (
    DEFAULT_ALPHA,
    Separation,
    SeparatorContract,
    components,
    separate,
)

log = logging.getLogger(__name__)

# Validator constants, measured on the grid suite with the BFS-layer backend
# (scripts/calibrate_constants.py) and frozen.
C_BND = 4.0
C_CNT = 4.0
C_B = 8.0

GAMMA_TOL = 1e-12


class ScheduleDomainError(ValueError):
    pass


class RefinementError(RuntimeError):
    pass


class ScheduleMode(str, enum.Enum):
    FIXED = "fixed"
    ADAPTIVE = "adaptive"
    ADAPTIVE_EPS = "adaptive_eps"


@dataclass
class ClampLog:
    count: int = 0
    events: list = field(default_factory=list)

    def record(self, raw: float, clamped: float, where: tuple) -> None:
        self.count += 1
        self.events.append((where, raw, clamped))
        log.warning("gamma %r clamped to %r at %r", raw, clamped, where)


def _settle(raw: float, hi: float, clamp_log: ClampLog | None, where: tuple) -> float:
    # round-off within GAMMA_TOL is snapped silently; anything further is a clamp event
    if -GAMMA_TOL <= raw < 0:
        return 0.0
    if hi < raw <= hi + GAMMA_TOL:
        return hi
    if raw < 0 or raw > hi:
        clamped = min(max(raw, 0.0), hi)
        if clamp_log is not None:
            clamp_log.record(raw, clamped, where)
        return clamped
    return raw


def p_for(r: int, gamma_target: float) -> float:
    return r ** ((2 - gamma_target) / 3)


def target_of(r: int, p: float) -> float:
    """gamma_target implied by p = r^((2 - gamma_target)/3)."""
    return 2 - 3 * math.log(p) / math.log(r)


def _check_p(r: int, p: float) -> None:
    if r < 2:
        raise ScheduleDomainError(f"r = {r} must be at least 2")
    lr, lp = math.log(r), math.log(p)
    if lp < 0.5 * lr - GAMMA_TOL * lr:
        raise ScheduleDomainError(f"p = {p} < sqrt(r) = {math.sqrt(r)}")
    if lp > (2 / 3) * lr + GAMMA_TOL * lr:
        raise ScheduleDomainError(f"p = {p} > r^(2/3) = {r ** (2 / 3)}")


def gamma_for(N: int, r: int, p: float, clamp_log: ClampLog | None = None) -> float:
    """Separator exponent for a region of N > r vertices: (2 log r - 3 log p) / log N."""
    if not N > r:
        raise ScheduleDomainError(f"gamma_for needs N > r (N = {N}, r = {r})")
    _check_p(r, p)
    raw = (2 * math.log(r) - 3 * math.log(p)) / math.log(N)
    return _settle(raw, 0.5, clamp_log, ("gamma_for", N, r, p))


def gamma_eps_for(N: int, r: int, p: float, epsilon: float, n: int,
                  r_exponent: float | None = None, clamp_log: ClampLog | None = None) -> float:
    """Exponent under the eps-shifted schedule p (N/r)^(2/3+eps) = N^((2-gamma)/3).

    ``r_exponent`` is the c with r >= n^c; by default the largest such c,
    log r / log n. Legal only when eps < 1/12, gamma_target > 0 and
    c >= eps / (eps + gamma_target/3).
    """
    if not N > r:
        raise ScheduleDomainError(f"gamma_eps_for needs N > r (N = {N}, r = {r})")
    if N > n:
        raise ScheduleDomainError(f"region size N = {N} exceeds graph size n = {n}")
    _check_p(r, p)
    if not 0 <= epsilon < 1 / 12:
        raise ScheduleDomainError(f"epsilon = {epsilon} violates 0 <= eps < 1/12 (2/3 + eps < 3/4)")
    gt = target_of(r, p)
    if epsilon > 0 and gt <= GAMMA_TOL:
        raise ScheduleDomainError("the epsilon schedule needs gamma_target > 0")
    c = math.log(r) / math.log(n) if r_exponent is None else r_exponent
    if r < n ** c * (1 - 1e-12):
        raise ScheduleDomainError(f"r = {r} < n^c = {n ** c}")
    if epsilon > 0 and c < epsilon / (epsilon + gt / 3) - GAMMA_TOL:
        raise ScheduleDomainError(
            f"c = {c} < eps/(eps + gamma_target/3) = {epsilon / (epsilon + gt / 3)}")
    raw = (2 * math.log(r) - 3 * math.log(p) - 3 * epsilon * math.log(N / r)) / math.log(N)
    return _settle(raw, 0.5, clamp_log, ("gamma_eps_for", N, r, p, epsilon))


def max_epsilon(r: int, n: int, gamma_target: float) -> float:
    """Largest eps allowed at (r, n): eps < 1/12 and eps/(eps + gamma_target/3) <= log r/log n."""
    if n <= r or gamma_target <= 0:
        return 0.0
    c = math.log(r) / math.log(n)
    bound = c * gamma_target / (3 * (1 - c))
    return min(bound, 1 / 12)


@dataclass
class ScheduleConfig:
    mode: ScheduleMode = ScheduleMode.ADAPTIVE
    gamma_target: float = 0.5
    epsilon: float = 0.0
    r_polynomial: bool = False
    r_exponent: float | None = None

    def __post_init__(self):
        self.mode = ScheduleMode(self.mode)
        if not 0 <= self.gamma_target <= 0.5:
            raise ScheduleDomainError(f"gamma_target = {self.gamma_target} outside [0, 1/2]")
        if self.mode is ScheduleMode.ADAPTIVE_EPS:
            if self.gamma_target <= 0:
                raise ScheduleDomainError("adaptive_eps needs gamma_target > 0")
            if not self.r_polynomial:
                raise ScheduleDomainError("adaptive_eps is only legal when r = n^Omega(1) is asserted")
            if not 0 <= self.epsilon < 1 / 12:
                raise ScheduleDomainError(f"epsilon = {self.epsilon} violates 0 <= eps < 1/12")

    def gamma(self, N: int, r: int, p: float, n: int, clamp_log: ClampLog) -> float:
        if self.mode is ScheduleMode.FIXED:
            return self.gamma_target
        if self.mode is ScheduleMode.ADAPTIVE:
            return gamma_for(N, r, p, clamp_log)
        return gamma_eps_for(N, r, p, self.epsilon, n, self.r_exponent, clamp_log)


# --------------------------------------------------------------------------
# work accounting


@dataclass(frozen=True)
class SeparationRecord:
    size: int
    gamma_prime: float
    cost: float
    separator_size: int
    within_budget: bool
    phase: str = "weak"
    forced: bool = False

    def to_json(self) -> dict:
        return {
            "size": self.size,
            "gamma_prime": self.gamma_prime,
            "cost": self.cost,
            "separator_size": self.separator_size,
            "within_budget": self.within_budget,
            "phase": self.phase,
            "forced": self.forced,
        }


@dataclass
class WorkLog:
    """Per-separation records under the cost model N^(1 + gamma')."""

    records: list[SeparationRecord] = field(default_factory=list)
    clamps: int = 0

    @property
    def total_cost(self) -> float:
        return math.fsum(rec.cost for rec in self.records)

    @property
    def separations(self) -> int:
        return len(self.records)

    @property
    def forced_splits(self) -> int:
        return sum(rec.forced for rec in self.records)

    def merge(self, other: "WorkLog") -> "WorkLog":
        return WorkLog(self.records + other.records, self.clamps + other.clamps)

    def totals(self) -> dict:
        return {
            "cost": self.total_cost,
            "separations": self.separations,
            "clamps": self.clamps,
            "forced_splits": self.forced_splits,
        }

    def to_json(self) -> dict:
        return {"totals": self.totals(), "records": [rec.to_json() for rec in self.records]}

    @classmethod
    def from_json(cls, obj: dict) -> "WorkLog":
        return cls([SeparationRecord(**rec) for rec in obj.get("records", [])],
                   obj.get("totals", {}).get("clamps", 0))


# --------------------------------------------------------------------------
# divisions


@dataclass(frozen=True)
class Region:
    edge_ids: tuple[int, ...]
    vertices: frozenset
    boundary: frozenset

    def to_json(self) -> dict:
        return {"edges": list(self.edge_ids), "vertices": sorted(self.vertices),
                "boundary": sorted(self.boundary)}


@dataclass
class Division:
    regions: list[Region]
    r: int
    p: float
    gamma_target: float
    kind: str = "weak"
    work_log: WorkLog = field(default_factory=WorkLog)

    def to_json(self) -> dict:
        stats = boundary_stats(self)
        return {
            "r": self.r,
            "p": self.p,
            "gamma_target": self.gamma_target,
            "kind": self.kind,
            "regions": [reg.to_json() for reg in self.regions],
            "stats": {"B": stats.B, "clamps": self.work_log.clamps,
                      "worklog": self.work_log.to_json()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Division":
        regions = [Region(tuple(reg["edges"]), frozenset(reg["vertices"]),
                          frozenset(reg["boundary"])) for reg in obj["regions"]]
        wl = WorkLog.from_json(obj.get("stats", {}).get("worklog", {}))
        return cls(regions, obj["r"], obj["p"], obj["gamma_target"], obj["kind"], wl)


def _endpoints(support: Graph, edge_ids: Iterable[int]) -> set[int]:
    out = set()
    E = support.edges
    for e in edge_ids:
        u, v, _ = E[e]
        out.add(u)
        out.add(v)
    return out


def build_regions(support: Graph, edge_sets: Sequence[Sequence[int]]) -> list[Region]:
    """Regions with vertex sets and boundaries derived from their edge sets."""
    vsets = [_endpoints(support, es) for es in edge_sets]
    count: dict[int, int] = {}
    for vs in vsets:
        for v in vs:
            count[v] = count.get(v, 0) + 1
    return [
        Region(tuple(sorted(es)), frozenset(vs), frozenset(v for v in vs if count[v] > 1))
        for es, vs in zip(edge_sets, vsets)
    ]


@dataclass
class BoundaryStats:
    b: dict[int, int]
    B: int
    per_region_boundary: list[int]
    covered: int
    total_region_size: int

    def to_json(self) -> dict:
        return {"B": self.B, "per_region_boundary": self.per_region_boundary,
                "covered": self.covered, "total_region_size": self.total_region_size}


def boundary_stats(d: Division) -> BoundaryStats:
    """b(v) = regions containing v minus one; B = sum of b(v).

    ``covered`` counts vertices lying in at least one region, so
    ``total_region_size == covered + B`` (``n + B`` when no vertex is isolated).
    """
    count: dict[int, int] = {}
    for reg in d.regions:
        for v in reg.vertices:
            count[v] = count.get(v, 0) + 1
    b = {v: c - 1 for v, c in count.items() if c > 1}
    per_region = [sum(1 for v in reg.vertices if count[v] > 1) for reg in d.regions]
    return BoundaryStats(b, sum(b.values()), per_region, len(count),
                         sum(len(reg.vertices) for reg in d.regions))


class _LocalGraph:
    """Subgraph induced by an edge set, relabelled to dense ids."""

    def __init__(self, support: Graph, edge_ids: Sequence[int]):
        E = support.edges
        verts = sorted(_endpoints(support, edge_ids))
        index = {v: i for i, v in enumerate(verts)}
        self.verts = verts
        self.edge_ids = list(edge_ids)
        self.pairs = [(index[E[e][0]], index[E[e][1]]) for e in edge_ids]
        self.graph = Graph(len(verts), tuple(sorted((u, v, 0) for u, v in self.pairs)),
                           directed=False, c_sparse=math.inf)

    def split(self, a_side: frozenset) -> tuple[list[int], list[int]]:
        """Edge ids with both endpoints in ``a_side`` (local ids), and the rest."""
        ea, eb = [], []
        for e, (u, v) in zip(self.edge_ids, self.pairs):
            (ea if u in a_side and v in a_side else eb).append(e)
        return ea, eb


def _forced_separation(lg: _LocalGraph) -> Separation | None:
    """A proper (possibly unbalanced) separation: {x} vs {y} for the first non-adjacent pair."""
    n = lg.graph.n
    adj = lg.graph.adjacency()
    for x in range(n):
        if len(adj[x]) < n - 1:
            nbr = set(adj[x])
            y = next(v for v in range(n) if v != x and v not in nbr)
            everything = frozenset(range(n))
            return Separation(everything - {y}, everything - {x}, DEFAULT_ALPHA, "forced")
    return None


def _star_split(lg: _LocalGraph) -> list[list[int]]:
    """Split the edges of a complete graph: edges avoiding vertex 0, then its star in two halves."""
    rest, star = [], []
    for e, (u, v) in zip(lg.edge_ids, lg.pairs):
        (star if 0 in (u, v) else rest).append(e)
    half = (len(star) + 1) // 2
    return [part for part in (rest, star[:half], star[half:]) if part]


def _pack_components(lg: _LocalGraph, comps: list[list[int]], r: int):
    """Components larger than r come back alone; the others are packed first-fit into bins of r vertices."""
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    comp_edges: list[list[int]] = [[] for _ in comps]
    for e, (u, _) in zip(lg.edge_ids, lg.pairs):
        comp_edges[comp_of[u]].append(e)
    big, bins, loads = [], [], []
    for ci, comp in enumerate(comps):
        if len(comp) > r:
            big.append(comp_edges[ci])
            continue
        for bi, load in enumerate(loads):
            if load + len(comp) <= r:
                bins[bi].extend(comp_edges[ci])
                loads[bi] += len(comp)
                break
        else:
            bins.append(list(comp_edges[ci]))
            loads.append(len(comp))
    return big, bins


def _as_support(g: Graph) -> Graph:
    if g.directed or g.origin is None:
        return undirected_support(g)
    return g


def weak_division(g: Graph, r: int, schedule: ScheduleConfig | None = None,
                  sep: str = "bfs-layer", c_sep: float = 4.0) -> tuple[Division, BoundaryStats, WorkLog]:
    """Recursively separate regions with more than r vertices.

    Each split calls the separator with unit vertex weights and alpha = 2/3;
    edges with both endpoints in A (including those inside S) go to the
    A-side subregion, all others to the B-side. Disconnected regions are cut
    into components first at no cost.
    """
    schedule = schedule or ScheduleConfig()
    support = _as_support(g)
    n = support.n
    if r < 1 or (support.m and r < 2):
        raise ValueError(f"r = {r} is too small: a region with an edge has two vertices")
    p = p_for(r, schedule.gamma_target)
    clamps = ClampLog()
    work = WorkLog()
    done: list[list[int]] = []

    stack = [list(range(support.m))] if support.m else []
    while stack:
        edge_ids = stack.pop()
        lg = _LocalGraph(support, edge_ids)
        N = lg.graph.n
        if N <= r:
            done.append(edge_ids)
            continue
        comps = components(N, lg.graph.adjacency())
        if len(comps) > 1:
            big, bins = _pack_components(lg, comps, r)
            done.extend(bins)
            stack.extend(reversed(big))
            continue
        gamma = schedule.gamma(N, r, p, n, clamps)
        contract = SeparatorContract(gamma_prime=gamma, c_sep=c_sep)
        s = separate(lg.graph, VertexWeighting.unit(N), contract, backend=sep)
        forced = False
        if s.proper:
            parts = list(lg.split(s.A))
        else:
            forced = True
            fs = _forced_separation(lg)
            parts = list(lg.split(fs.A)) if fs is not None else _star_split(lg)
        work.records.append(SeparationRecord(N, gamma, N ** (1 + gamma), len(s.S),
                                             bool(s.within_budget), "weak", forced))
        for part in parts:
            if len(part) >= len(edge_ids):
                raise AssertionError("split made no progress")
        stack.extend(reversed([pt for pt in parts if pt]))

    work.clamps = clamps.count
    d = Division(build_regions(support, done), r, p, schedule.gamma_target, "weak", work)
    return d, boundary_stats(d), work


# balance thresholds tried in turn when a refinement split makes no progress
REFINE_ALPHAS = (Fraction(2, 3), Fraction(1, 2))


def _split_boundaries(support: Graph, count: dict[int, int], old: set[int],
                      ea: list[int], eb: list[int]) -> tuple[int, int]:
    """Boundary sizes of the two parts if the region with vertices ``old`` were replaced by them."""
    va, vb = _endpoints(support, ea), _endpoints(support, eb)

    def after(v):
        return count[v] - (v in old) + (v in va) + (v in vb)

    return sum(after(v) > 1 for v in va), sum(after(v) > 1 for v in vb)


@dataclass
class RefinementInfo:
    splits: list[tuple[int, int]]  # (initial boundary count, splits spent) per refined weak region
    new_boundary: int  # boundary vertices (with multiplicity) added by refinement


def refine_division(g: Graph, d: Division, c_bnd: float = C_BND, sep: str = "bfs-layer",
                    c_sep: float = 4.0, info: RefinementInfo | None = None) -> Division:
    """Split every region with more than c_bnd * p boundary vertices until none remain.

    The separator sees weight 1 on the region's current boundary vertices and
    0 elsewhere. If the 2/3-balanced split leaves a part with as many boundary
    vertices as the region had, a 1/2-balanced split is tried; if that fails
    too, :class:`RefinementError` is raised.
    """
    support = _as_support(g)
    limit = c_bnd * d.p
    edge_sets = [list(reg.edge_ids) for reg in d.regions]
    vsets = [set(reg.vertices) for reg in d.regions]
    count: dict[int, int] = {}
    for vs in vsets:
        for v in vs:
            count[v] = count.get(v, 0) + 1
    before_B = sum(c - 1 for c in count.values())

    def bcount(i):
        return sum(1 for v in vsets[i] if count[v] > 1)

    work = WorkLog()
    lineage = list(range(len(edge_sets)))
    initial = {i: bcount(i) for i in range(len(edge_sets))}
    spent: dict[int, int] = {}
    alive = [True] * len(edge_sets)
    queue = deque(i for i in range(len(edge_sets)) if initial[i] > limit)
    while queue:
        i = queue.popleft()
        nb = bcount(i)
        if nb <= limit:
            continue
        lg = _LocalGraph(support, edge_sets[i])
        N = lg.graph.n
        bnd_local = [k for k, v in enumerate(lg.verts) if count[v] > 1]
        vw = VertexWeighting.indicator(lg.graph.n, bnd_local)
        chosen = None
        tried = []
        for alpha in REFINE_ALPHAS:
            contract = SeparatorContract(gamma_prime=d.gamma_target, alpha=alpha, c_sep=c_sep)
            s = separate(lg.graph, vw, contract, backend=sep, objective="progress")
            work.records.append(SeparationRecord(N, d.gamma_target, N ** (1 + d.gamma_target),
                                                 len(s.S), bool(s.within_budget), "refine"))
            ea, eb = lg.split(s.A)
            after = _split_boundaries(support, count, vsets[i], ea, eb) if ea and eb else None
            tried.append(f"alpha<={alpha}: |S|={len(s.S)}, sub-boundaries={after}")
            if after is not None and max(after) < nb:
                chosen = (ea, eb)
                break
        if chosen is None:
            raise RefinementError(
                f"region {i} ({N} vertices, {nb} boundary) cannot be split with progress; "
                + "; ".join(tried))
        ea, eb = chosen
        for v in vsets[i]:
            count[v] -= 1
        alive[i] = False
        new = []
        for part in (ea, eb):
            vs = _endpoints(support, part)
            for v in vs:
                count[v] = count.get(v, 0) + 1
            edge_sets.append(part)
            vsets.append(vs)
            alive.append(True)
            lineage.append(lineage[i])
            new.append(len(edge_sets) - 1)
        spent[lineage[i]] = spent.get(lineage[i], 0) + 1
        for j in new:
            if bcount(j) > limit:
                queue.append(j)

    kept = [edge_sets[i] for i in range(len(edge_sets)) if alive[i]]
    regions = build_regions(support, kept)
    if info is not None:
        after_B = sum(c - 1 for c in count.values() if c > 0)
        info.splits = [(initial[k], spent[k]) for k in sorted(spent)]
        info.new_boundary = after_B - before_B
    wl = d.work_log.merge(work)
    return Division(regions, d.r, d.p, d.gamma_target, "full", wl)


def compute_division(g: Graph, r: int, schedule: ScheduleConfig | None = None,
                     sep: str = "bfs-layer", c_bnd: float = C_BND, c_sep: float = 4.0,
                     info: RefinementInfo | None = None) -> Division:
    """Weak division followed by refinement to a full division."""
    weak, _, _ = weak_division(g, r, schedule, sep, c_sep)
    return refine_division(g, weak, c_bnd, sep, c_sep, info)


# --------------------------------------------------------------------------
# validation and comparison


@dataclass(frozen=True)
class Constants:
    c_bnd: float = C_BND
    c_cnt: float = C_CNT
    c_B: float = C_B


@dataclass
class DivisionReport:
    passed: bool
    failures: list[str]
    metrics: dict

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": self.failures, "metrics": self.metrics}


def validate_division(g: Graph, d: Division, r: int | None = None, p: float | None = None,
                      constants: Constants = Constants()) -> DivisionReport:
    """Check every division clause and report the violated ones by name."""
    support = _as_support(g)
    r = d.r if r is None else r
    p = d.p if p is None else p
    fails = []

    owner: dict[int, int] = {}
    dup = bad_id = 0
    for ri, reg in enumerate(d.regions):
        for e in reg.edge_ids:
            if not 0 <= e < support.m:
                bad_id += 1
            elif e in owner:
                dup += 1
            else:
                owner[e] = ri
    missing = support.m - len(owner)
    if dup or missing or bad_id:
        fails.append(f"partition: {dup} duplicated, {missing} missing, {bad_id} unknown edge ids")

    count: dict[int, int] = {}
    for reg in d.regions:
        for v in reg.vertices:
            count[v] = count.get(v, 0) + 1
    for ri, reg in enumerate(d.regions):
        if len(reg.vertices) > r:
            fails.append(f"size: region {ri} has {len(reg.vertices)} > r = {r} vertices")
            break
    for ri, reg in enumerate(d.regions):
        ends = _endpoints(support, (e for e in reg.edge_ids if 0 <= e < support.m))
        if ends != set(reg.vertices):
            fails.append(f"vertices: region {ri} vertex set differs from its edge endpoints")
            break
    for ri, reg in enumerate(d.regions):
        expect = {v for v in reg.vertices if count[v] > 1}
        if expect != set(reg.boundary):
            fails.append(f"boundary: region {ri} boundary differs from multi-membership")
            break

    per_region = [sum(1 for v in reg.vertices if count[v] > 1) for reg in d.regions]
    max_bnd = max(per_region, default=0)
    if d.kind == "full" and max_bnd > constants.c_bnd * p:
        fails.append(f"full-boundary: max region boundary {max_bnd} > c_bnd*p = {constants.c_bnd * p:.3f}")
    n = support.n
    count_limit = max(1.0, constants.c_cnt * n / r)
    if len(d.regions) > count_limit:
        fails.append(f"count: {len(d.regions)} regions > c_cnt*n/r = {count_limit:.3f}")
    B = sum(c - 1 for c in count.values())
    if B > constants.c_B * p * n / r:
        fails.append(f"boundary-sum: B = {B} > c_B*p*n/r = {constants.c_B * p * n / r:.3f}")

    metrics = {
        "n": n,
        "m": support.m,
        "regions": len(d.regions),
        "max_region_size": max((len(reg.vertices) for reg in d.regions), default=0),
        "max_region_boundary": max_bnd,
        "B": B,
        "B_ratio": B / (p * n / r) if n else 0.0,
        "count_ratio": len(d.regions) / (n / r) if n else 0.0,
        "boundary_ratio": max_bnd / p,
    }
    return DivisionReport(not fails, fails, metrics)


def compare_schedules(g: Graph, r: int, gamma_target: float, sep: str = "bfs-layer",
                      epsilon: float | None = None, r_polynomial: bool = False,
                      c_sep: float = 4.0) -> dict:
    """Weak divisions under fixed, adaptive and (if r = n^Omega(1)) adaptive_eps schedules.

    Reports work totals in cost units sum(N^(1+gamma')) and division quality.
    """
    support = _as_support(g)
    n = support.n
    modes = [ScheduleConfig(ScheduleMode.FIXED, gamma_target),
             ScheduleConfig(ScheduleMode.ADAPTIVE, gamma_target)]
    if r_polynomial and gamma_target > 0 and n > r:
        eps = max_epsilon(r, n, gamma_target) / 2 if epsilon is None else epsilon
        modes.append(ScheduleConfig(ScheduleMode.ADAPTIVE_EPS, gamma_target, eps, True))
    rows = {}
    for cfg in modes:
        d, stats, work = weak_division(support, r, cfg, sep, c_sep)
        rep = validate_division(support, d)
        rows[cfg.mode.value] = {
            "epsilon": cfg.epsilon,
            "work": work.totals(),
            "B": stats.B,
            "regions": len(d.regions),
            "max_region_boundary": max(stats.per_region_boundary, default=0),
            "valid": rep.passed,
            "records": [rec.to_json() for rec in work.records],
        }
    return {"n": n, "r": r, "gamma_target": gamma_target, "p": p_for(r, gamma_target),
            "schedules": rows}
