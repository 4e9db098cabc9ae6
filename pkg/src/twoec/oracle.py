"""Brute-force ground truth at desk scale.

Exhaustive 2-edge-connected spanning multi-subgraphs (copies capped at 2),
exact OPT(2EC) over a fixed support, and exact convex-combination
feasibility through a rational phase-one simplex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, Mapping, Sequence

from .combo import ConvexCombination, Term
from .errors import InternalInvariantFailure, PreconditionViolation, SizeCapExceeded
from .graph import EdgeId, FractionalSolution, MultiGraph
from .halftri import cut_feasibility
from .simplex import phase_one

DEFAULT_EDGE_CAP = 16
DEFAULT_POOL_CAP = 2_000_000
DEFAULT_COLUMN_CAP = 5000

Bounds = Mapping[EdgeId, tuple[int, int]]


@dataclass(frozen=True)
class SubgraphPool:
    graph: MultiGraph
    terms: tuple[Term, ...]
    max_copies: int

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def __contains__(self, term: object) -> bool:
        if not hasattr(self, "_members"):
            object.__setattr__(self, "_members", frozenset(self.terms))
        return term in self._members


class _Support:
    """Index-based view of a graph for fast support enumeration."""

    def __init__(self, g: MultiGraph):
        self.g = g
        self.ids = list(g.edge_ids)
        index = {w: i for i, w in enumerate(g.vertices)}
        self.n = g.n
        self.ends = [(index[g.edge(e).u], index[g.edge(e).v]) for e in self.ids]

    def analyse(self, chosen: list[int]) -> list[int] | None:
        """Bridges (positions in ``chosen``) if the support spans connectedly."""
        n = self.n
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for pos, k in enumerate(chosen):
            u, v = self.ends[k]
            adj[u].append((v, pos))
            adj[v].append((u, pos))
        if n == 1:
            return []
        disc = [-1] * n
        low = [0] * n
        disc[0] = low[0] = 0
        counter = 1
        found = []
        stack = [(0, -1, 0)]
        while stack:
            w, via, i = stack[-1]
            if i < len(adj[w]):
                stack[-1] = (w, via, i + 1)
                x, pos = adj[w][i]
                if pos == via:
                    continue
                if disc[x] < 0:
                    disc[x] = low[x] = counter
                    counter += 1
                    stack.append((x, pos, 0))
                else:
                    low[w] = min(low[w], disc[x])
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[w])
                if low[w] > disc[parent]:
                    found.append(via)
        if counter != n:
            return None
        return found


def _bounds_for(g: MultiGraph, max_copies: int, bounds: Bounds | None) -> list[tuple[int, int]]:
    out = []
    for e in g.edge_ids:
        lo, hi = (0, max_copies) if bounds is None or e not in bounds else bounds[e]
        out.append((max(lo, 0), min(hi, max_copies)))
    return out


def _supports(g: MultiGraph, limits: list[tuple[int, int]]) -> Iterator[tuple[list[int], list[int]]]:
    """Yield ``(chosen positions, bridge positions)`` for every connected
    spanning support that respects the lower and upper bounds."""
    view = _Support(g)
    forced = [k for k, (lo, hi) in enumerate(limits) if lo >= 1]
    free = [k for k, (lo, hi) in enumerate(limits) if lo == 0 and hi >= 1]
    if any(hi < lo for lo, hi in limits):
        return
    for mask in range(1 << len(free)):
        chosen = forced + [free[i] for i in range(len(free)) if mask >> i & 1]
        chosen.sort()
        found = view.analyse(chosen)
        if found is None:
            continue
        yield chosen, [chosen[pos] for pos in found]


def enumerate_2ecss(
    g: MultiGraph,
    max_copies: int = 2,
    bounds: Bounds | None = None,
    edge_cap: int = DEFAULT_EDGE_CAP,
    pool_cap: int = DEFAULT_POOL_CAP,
) -> SubgraphPool:
    """Every 2-edge-connected spanning multi-subgraph with copies in the bounds.

    A multi-subgraph qualifies exactly when its support is connected and
    spanning and every bridge of the support carries at least two copies, so
    supports are enumerated and copy counts expanded from their bridges.
    """
    if g.m > edge_cap:
        raise SizeCapExceeded(f"pool enumeration is capped at {edge_cap} edges, graph has {g.m}")
    ids = g.edge_ids
    limits = _bounds_for(g, max_copies, bounds)
    terms = []
    for chosen, bridge_pos in _supports(g, limits):
        bridge_set = set(bridge_pos)
        options = []
        for k in chosen:
            lo, hi = limits[k]
            low = max(lo, 2 if k in bridge_set else 1)
            options.append(range(low, hi + 1))
        if any(len(r) == 0 for r in options):
            continue
        for counts in product(*options):
            terms.append(tuple((ids[k], c) for k, c in zip(chosen, counts)))
            if len(terms) > pool_cap:
                raise SizeCapExceeded(f"pool exceeds {pool_cap} subgraphs")
    terms.sort()
    return SubgraphPool(g, tuple(terms), max_copies)


def opt_2ec_witness(
    g: MultiGraph, c: Mapping[EdgeId, Fraction], max_copies: int = 2, edge_cap: int = DEFAULT_EDGE_CAP
) -> tuple[Fraction, Term]:
    """Cheapest pool member and its cost.

    With nonnegative costs an optimal member uses one copy of every non-bridge
    and two of every bridge, so only supports need to be scanned.
    """
    if g.m > edge_cap:
        raise SizeCapExceeded(f"OPT enumeration is capped at {edge_cap} edges, graph has {g.m}")
    if any(Fraction(c[e]) < 0 for e in g.edge_ids):
        raise PreconditionViolation("costs must be nonnegative")
    ids = g.edge_ids
    cost = [Fraction(c[e]) for e in ids]
    limits = _bounds_for(g, max_copies, None)
    best: tuple[Fraction, Term] | None = None
    for chosen, bridge_pos in _supports(g, limits):
        if bridge_pos and max_copies < 2:
            continue
        value = sum((cost[k] for k in chosen), Fraction(0)) + sum((cost[k] for k in bridge_pos), Fraction(0))
        if best is None or value < best[0]:
            bset = set(bridge_pos)
            best = (value, tuple((ids[k], 2 if k in bset else 1) for k in chosen))
    if best is None:
        raise PreconditionViolation("graph has no 2-edge-connected spanning multi-subgraph")
    return best


def opt_2ec(g: MultiGraph, c: Mapping[EdgeId, Fraction], max_copies: int = 2, edge_cap: int = DEFAULT_EDGE_CAP) -> Fraction:
    return opt_2ec_witness(g, c, max_copies, edge_cap)[0]


def opt_2ec_many(
    g: MultiGraph, costs: Sequence[Mapping[EdgeId, Fraction]], max_copies: int = 2, edge_cap: int = DEFAULT_EDGE_CAP
) -> list[Fraction]:
    """OPT for several cost vectors, enumerating supports only once."""
    if g.m > edge_cap:
        raise SizeCapExceeded(f"OPT enumeration is capped at {edge_cap} edges, graph has {g.m}")
    ids = g.edge_ids
    vectors = []
    for c in costs:
        row = [Fraction(c[e]) for e in ids]
        if any(v < 0 for v in row):
            raise PreconditionViolation("costs must be nonnegative")
        vectors.append(row)
    # per support: how many copies of each edge the cheapest member uses
    usage = []
    for chosen, bridge_pos in _supports(g, _bounds_for(g, max_copies, None)):
        if bridge_pos and max_copies < 2:
            continue
        bset = set(bridge_pos)
        usage.append([(k, 2 if k in bset else 1) for k in chosen])
    if not usage:
        raise PreconditionViolation("graph has no 2-edge-connected spanning multi-subgraph")
    return [min(sum((row[k] * m for k, m in use), Fraction(0)) for use in usage) for row in vectors]


def find_convex_combination(
    pool: SubgraphPool, target: Mapping[EdgeId, Fraction], column_cap: int = DEFAULT_COLUMN_CAP
) -> ConvexCombination | None:
    """Multipliers on pool members hitting ``target`` exactly, or ``None``.

    ``None`` means phase one ended with a positive artificial sum, which is an
    exact proof that no such combination exists.
    """
    if len(pool) == 0:
        raise PreconditionViolation("empty pool")
    if len(pool) > column_cap:
        raise SizeCapExceeded(f"pool has {len(pool)} columns, cap is {column_cap}")
    ids = pool.graph.edge_ids
    row_of = {e: i for i, e in enumerate(ids)}
    zero, one = Fraction(0), Fraction(1)
    a = [[zero] * len(pool) for _ in range(len(ids) + 1)]
    for j, term in enumerate(pool):
        for e, k in term:
            a[row_of[e]][j] = Fraction(k)
        a[-1][j] = one
    b = [Fraction(target[e]) for e in ids] + [one]
    x = phase_one(a, b)
    if x is None:
        return None
    terms = tuple((lam, t) for lam, t in zip(x, pool) if lam > 0)
    combo = ConvexCombination(terms, pool.graph, dict((e, Fraction(target[e])) for e in ids))
    if not combo.is_finalized():
        raise InternalInvariantFailure("simplex returned a point off the target")
    return combo


SIX_FIFTHS = Fraction(6, 5)


@dataclass(frozen=True)
class RatioReport:
    instance_id: str
    lp_value: Fraction
    opt: Fraction
    ratio: Fraction | None
    opt_witness: Term
    note: str = ""


def ratio_experiment(
    x: FractionalSolution,
    c: Mapping[EdgeId, Fraction],
    instance_id: str = "",
    certified: bool = False,
    edge_cap: int = DEFAULT_EDGE_CAP,
) -> RatioReport:
    """OPT over the support of ``x`` against ``c . x``.

    ``c . x`` stands in for the LP optimum only when ``c`` is optimised at
    ``x``, which is not checked here.  With ``certified`` set (a 6/5
    certificate exists for ``x``) a ratio above 6/5 raises.
    """
    if not cut_feasibility(x):
        raise PreconditionViolation("x violates a cut constraint")
    lp_value = x.cost(c)
    opt, witness = opt_2ec_witness(x.graph, c, edge_cap=edge_cap)
    notes = ["OPT is taken over the support graph only (no metric completion)"]
    ratio = None
    if lp_value > 0:
        ratio = opt / lp_value
    else:
        notes.append("c.x = 0, ratio undefined")
    if certified and opt > SIX_FIFTHS * lp_value:
        raise InternalInvariantFailure(f"OPT {opt} exceeds 6/5 of c.x = {lp_value}")
    return RatioReport(instance_id, lp_value, opt, ratio, witness, "; ".join(notes))
