"""Independent certificate checker.

Nothing here calls the decomposers or the combination algebra.  Below 16
edges 2-edge-connectivity is tested straight from the definition (delete each
single-copy edge and look for disconnection); larger terms fall back to the
bridge finder in :mod:`twoec.graph`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .certificate import Certificate, TargetKind, certificate_from_json
from .errors import PreconditionViolation
from .graph import EdgeId, MultiGraph, bridges

BRUTE_FORCE_EDGE_LIMIT = 16

Where = Union[int, str]


@dataclass(frozen=True)
class Failure:
    where: Where  # term index or "global"
    clause: str
    detail: str

    def __str__(self) -> str:
        return f"{self.clause}\t{self.where}\t{self.detail}"


@dataclass(frozen=True)
class Verdict:
    failures: tuple[Failure, ...] = field(default_factory=tuple)

    @property
    def accepted(self) -> bool:
        return not self.failures

    @property
    def clauses(self) -> set[str]:
        return {f.clause for f in self.failures}


def _reachable(n_vertices: list[int], adj: dict[int, list[tuple[int, int]]], skip: int | None = None) -> int:
    start = n_vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        w = stack.pop()
        for x, eid in adj[w]:
            if eid == skip or x in seen:
                continue
            seen.add(x)
            stack.append(x)
    return len(seen)


def term_is_2ec(universe: MultiGraph, copies: Mapping[EdgeId, int]) -> tuple[bool, str]:
    """(ok, reason) for one multi-subgraph: spanning, connected, bridgeless."""
    verts = list(universe.vertices)
    if len(verts) == 1:
        return True, ""
    adj: dict[int, list[tuple[int, int]]] = {w: [] for w in verts}
    used = [(e, k) for e, k in copies.items() if k > 0]
    for e, k in used:
        edge = universe.edge(e)
        adj[edge.u].append((edge.v, e))
        adj[edge.v].append((edge.u, e))
    isolated = [w for w in verts if not adj[w]]
    if isolated:
        return False, f"vertex {isolated[0]} not covered"
    if _reachable(verts, adj) != len(verts):
        return False, "disconnected"
    if len(used) < BRUTE_FORCE_EDGE_LIMIT:
        for e, k in used:
            if k == 1 and _reachable(verts, adj, skip=e) != len(verts):
                return False, f"edge {e} is a bridge"
        return True, ""
    found = bridges(universe.restrict(dict(used)))
    if found:
        return False, f"edge {found[0]} is a bridge"
    return True, ""


def expected_target(cert: Certificate) -> dict[EdgeId, Fraction]:
    half, one = Fraction(1, 2), Fraction(1)
    out = {}
    for e in cert.universe.edge_ids:
        x = cert.values[e]
        if cert.kind is TargetKind.P:
            out[e] = Fraction(4, 5)
        elif cert.kind is TargetKind.SIXFIFTH:
            out[e] = Fraction(6, 5) * x
        elif x == half:
            out[e] = Fraction(3, 5)
        elif x == one:
            out[e] = Fraction(4, 5) if e == cert.p_edge else Fraction(6, 5)
        else:
            out[e] = None
    return out


def copy_range(cert: Certificate, e: EdgeId) -> tuple[int, int]:
    if cert.kind is TargetKind.P:
        return 0, 1
    x = cert.values[e]
    if x == Fraction(1, 2):
        return 0, 1
    if cert.kind is TargetKind.Q and e == cert.p_edge:
        return 0, 1
    return 1, 2


def verify(cert: Certificate | str) -> Verdict:
    """Check multipliers, connectivity, exact occurrences and copy bounds."""
    if isinstance(cert, str):
        cert = certificate_from_json(cert)
    failures: list[Failure] = []
    g = cert.universe
    ids = set(g.edge_ids)

    if cert.kind in (TargetKind.Q, TargetKind.SIXFIFTH):
        bad_vals = [e for e in g.edge_ids if cert.values[e] not in (Fraction(1, 2), Fraction(1))]
        if bad_vals:
            failures.append(Failure("global", "universe-values", f"edge {bad_vals[0]} is neither 1/2 nor 1"))
    if cert.kind is TargetKind.Q:
        if cert.p_edge not in ids or cert.values.get(cert.p_edge) != 1:
            failures.append(Failure("global", "p-edge", f"p_edge {cert.p_edge} is not a 1-edge of the universe"))
    if not cert.terms:
        failures.append(Failure("global", "multiplier-sum", "no terms"))

    total = Fraction(0)
    occ = {e: Fraction(0) for e in g.edge_ids}
    for i, (lam, term) in enumerate(cert.terms):
        total += lam
        if lam <= 0:
            failures.append(Failure(i, "multiplier-positive", f"multiplier {lam}"))
        copies: dict[EdgeId, int] = {}
        well_formed = True
        for e, k in term:
            if e not in ids:
                failures.append(Failure(i, "unknown-edge", f"edge id {e}"))
                well_formed = False
            elif e in copies:
                failures.append(Failure(i, "duplicate-edge", f"edge id {e} listed twice"))
                well_formed = False
            elif k < 1:
                failures.append(Failure(i, "copies-invalid", f"edge {e} with {k} copies"))
                well_formed = False
            else:
                copies[e] = k
        if not well_formed:
            continue
        for e, k in copies.items():
            occ[e] += lam * k
        ok, why = term_is_2ec(g, copies)
        if not ok:
            failures.append(Failure(i, "two-edge-connectivity", why))
        for e in g.edge_ids:
            lo, hi = copy_range(cert, e)
            k = copies.get(e, 0)
            if not lo <= k <= hi:
                failures.append(Failure(i, "copy-bound", f"edge {e} has {k} copies, allowed {lo}..{hi}"))

    if total != 1:
        failures.append(Failure("global", "multiplier-sum", f"multipliers sum to {total}"))
    target = expected_target(cert)
    for e in g.edge_ids:
        if target[e] is not None and occ[e] != target[e]:
            failures.append(Failure("global", "occurrence", f"edge {e}: {occ[e]} != {target[e]}"))
    return Verdict(tuple(failures))


def term_cost(term, c: Mapping[EdgeId, Fraction]) -> Fraction:
    return sum((Fraction(c[e]) * k for e, k in term), Fraction(0))


def verify_cost_bound(cert: Certificate, c: Mapping[EdgeId, Fraction]) -> tuple[bool, int]:
    """Does some term cost at most 6/5 of ``c . x``?  Returns the cheapest term."""
    if cert.kind is not TargetKind.SIXFIFTH:
        raise PreconditionViolation("cost bound needs a sixfifth certificate")
    if any(Fraction(c[e]) < 0 for e in cert.universe.edge_ids):
        raise PreconditionViolation("costs must be nonnegative")
    lp = sum((Fraction(c[e]) * cert.values[e] for e in cert.universe.edge_ids), Fraction(0))
    costs = [term_cost(t, c) for _, t in cert.terms]
    best = min(range(len(costs)), key=lambda i: (costs[i], i))
    return costs[best] <= Fraction(6, 5) * lp, best
