"""Every edge at 4/5: simple 2-edge-connected subgraphs of cubic graphs.

For a cubic 3-edge-connected graph the uniform vector 4/5 is written as a
convex combination of simple 2-edge-connected spanning subgraphs.  The
recursion has three branches:

* ``|V| = 4``: the fixed K4 combination;
* a proper 3-edge cut exists: shrink each shore, solve both sides and glue
  terms with matching boundary patterns;
* otherwise: for every edge ``uv`` reduce the graph at ``uv``, solve, lift
  the terms back, and average the ``m`` resulting combinations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .combo import (
    ConvexCombination,
    Presence,
    Term,
    average,
    dedupe,
    pad_edge,
    pattern_key,
    refine_match,
    simple_term,
)
from .errors import InternalInvariantFailure, PatternMassMismatch, PreconditionViolation, SizeCapExceeded
from .graph import (
    CutKind,
    CutReport,
    EdgeId,
    MultiGraph,
    ReductionContext,
    contract_shore,
    find_cuts,
    is_three_edge_connected,
    is_two_edge_connected,
    reduce_edge,
)

FOUR_FIFTHS = Fraction(4, 5)
NINE_TENTHS = Fraction(9, 10)
TWO_FIFTHS = Fraction(2, 5)
ONE_FIFTH = Fraction(1, 5)
HALF = Fraction(1, 2)

DEFAULT_SIZE_CAP = 12


@dataclass
class CubicTrace:
    """Counters of the branches taken, plus an optional hook that sees every
    per-edge combination built in the reduction branch."""

    branches: Counter = field(default_factory=Counter)
    on_edge_combination: Callable[[int, MultiGraph, ReductionContext, ConvexCombination], None] | None = None
    check_terms: bool = True


def p_goal(g: MultiGraph) -> dict[EdgeId, Fraction]:
    return {e: FOUR_FIFTHS for e in g.edge_ids}


def decompose_cubic(
    g: MultiGraph, size_cap: int = DEFAULT_SIZE_CAP, trace: CubicTrace | None = None
) -> ConvexCombination:
    """Convex combination of simple 2EC spanning subgraphs, every edge at 4/5."""
    if g.n > size_cap:
        raise SizeCapExceeded(f"cubic decomposition is capped at {size_cap} vertices, got {g.n}")
    if g.n < 4 or not g.is_simple() or not g.is_cubic():
        raise PreconditionViolation("need a simple cubic graph on at least 4 vertices")
    if not is_three_edge_connected(g):
        raise PreconditionViolation("graph is not 3-edge-connected")
    trace = CubicTrace() if trace is None else trace
    return _decompose(g, trace, depth=0)


def _decompose(g: MultiGraph, trace: CubicTrace, depth: int) -> ConvexCombination:
    if g.n == 4:
        trace.branches["base_k4"] += 1
        return base_k4(g)
    cuts = find_cuts(g, CutKind.PROPER_THREE_EDGE)
    if cuts:
        trace.branches["split_glue"] += 1
        return _split_glue(g, cuts[0], trace, depth)
    trace.branches["reduce_average"] += 1
    return _reduce_average(g, trace, depth)


def base_k4(g: MultiGraph) -> ConvexCombination:
    """Whole K4 at 2/5 and each Hamiltonian 4-cycle at 1/5."""
    if g.n != 4 or g.m != 6 or not g.is_simple():
        raise PreconditionViolation("base case needs K4")
    terms = [(TWO_FIFTHS, simple_term(g.edge_ids))]
    # a Hamiltonian cycle of K4 is the complement of a perfect matching
    matchings = set()
    for e in g.edges:
        (f,) = [h.id for h in g.edges if not ({h.u, h.v} & {e.u, e.v})]
        matchings.add(tuple(sorted((e.id, f))))
    for pair in sorted(matchings):
        terms.append((ONE_FIFTH, simple_term(set(g.edge_ids) - set(pair))))
    return ConvexCombination(tuple(terms), g, p_goal(g))


# -- reduction branch --------------------------------------------------------------


def lift_term(term: Term, ctx: ReductionContext) -> list[tuple[Fraction, Term]]:
    """Terms of G (with multiplier shares) replacing one term of the reduced graph."""
    edges = {e for e, _ in term}
    has_ab, has_cd = ctx.ab in edges, ctx.cd in edges
    base = edges - {ctx.ab, ctx.cd}
    if has_ab and has_cd:
        lifts = [(Fraction(1), {ctx.au, ctx.ub, ctx.vc, ctx.vd})]
    elif has_ab:
        lifts = [(HALF, {ctx.au, ctx.ub, ctx.uv, ctx.vc}), (HALF, {ctx.au, ctx.ub, ctx.uv, ctx.vd})]
    elif has_cd:
        lifts = [(HALF, {ctx.au, ctx.uv, ctx.vc, ctx.vd}), (HALF, {ctx.ub, ctx.uv, ctx.vc, ctx.vd})]
    else:
        lifts = [(HALF, {ctx.au, ctx.uv, ctx.vc}), (HALF, {ctx.ub, ctx.uv, ctx.vd})]
    return [(share, simple_term(base | extra)) for share, extra in lifts]


def edge_combination(g: MultiGraph, uv: EdgeId, trace: CubicTrace, depth: int) -> ConvexCombination:
    """The per-edge combination: ``uv`` at 2/5, its four neighbours at 9/10,
    everything else at 4/5."""
    reduced, ctx = reduce_edge(g, uv)
    sub = _decompose(reduced, trace, depth + 1)
    occ = sub.occurrences()
    if occ[ctx.ab] != FOUR_FIFTHS or occ[ctx.cd] != FOUR_FIFTHS:
        raise InternalInvariantFailure("reduced combination does not have ab and cd at 4/5")

    lifted = []
    for lam, term in sub.terms:
        for share, t in lift_term(term, ctx):
            lifted.append((lam * share, t))
    target = {e: FOUR_FIFTHS for e in g.edge_ids}
    target[uv] = TWO_FIFTHS
    for e in (ctx.au, ctx.ub, ctx.vc, ctx.vd):
        target[e] = NINE_TENTHS
    combo = dedupe(ConvexCombination(tuple(lifted), g, target))
    if trace.check_terms:
        _check_terms(combo, f"lift at edge {uv}")
    combo = dedupe(pad_edge(combo, uv, TWO_FIFTHS, max_copies=1))
    bad = combo.mismatches()
    if bad or combo.mass != 1:
        raise InternalInvariantFailure(f"per-edge combination for {uv} is off target: {bad}")
    if trace.on_edge_combination is not None:
        trace.on_edge_combination(depth, g, ctx, combo)
    return combo


def _reduce_average(g: MultiGraph, trace: CubicTrace, depth: int) -> ConvexCombination:
    per_edge = [edge_combination(g, uv, trace, depth) for uv in g.edge_ids]
    m = len(per_edge)
    combo = dedupe(average(per_edge, [Fraction(1, m)] * m))
    return _finish(combo, g, "reduce_average")


def reduce_average(g: MultiGraph, trace: CubicTrace | None = None) -> ConvexCombination:
    """Reduction branch on its own; ``g`` must have no proper 3-edge cut."""
    if g.n <= 4:
        raise PreconditionViolation("reduce_average needs more than 4 vertices")
    if find_cuts(g, CutKind.PROPER_THREE_EDGE):
        raise PreconditionViolation("graph has a proper 3-edge cut")
    return _reduce_average(g, trace or CubicTrace(), 0)


# -- cut branch --------------------------------------------------------------------


def _boundary_masses(c: ConvexCombination, boundary: tuple[EdgeId, ...]) -> dict[tuple, Fraction]:
    masses: dict[tuple, Fraction] = {}
    for lam, t in c.terms:
        key = pattern_key(t, boundary)
        masses[key] = masses.get(key, Fraction(0)) + lam
    return masses


def _expected_boundary(boundary: tuple[EdgeId, ...]) -> dict[tuple, Fraction]:
    full = tuple(Presence.SINGLE for _ in boundary)
    want = {full: TWO_FIFTHS}
    for i in range(len(boundary)):
        key = list(full)
        key[i] = Presence.ABSENT
        want[tuple(key)] = ONE_FIFTH
    return want


def _split_glue(g: MultiGraph, cut: CutReport, trace: CubicTrace, depth: int) -> ConvexCombination:
    left, right = cut.shores
    ends = {w for e in cut.edges for w in (g.edge(e).u, g.edge(e).v)}
    if len(ends) != 6:
        raise PreconditionViolation("cut edges must have six distinct ends")
    # G1 keeps the left shore, G2 keeps the right one
    g1, _, _ = contract_shore(g, right, cut_size=3)
    g2, _, _ = contract_shore(g, left, cut_size=3)
    c1 = _decompose(g1, trace, depth + 1)
    c2 = _decompose(g2, trace, depth + 1)

    boundary = cut.edges
    want = _expected_boundary(boundary)
    for side, c in (("first", c1), ("second", c2)):
        got = _boundary_masses(c, boundary)
        if got != want:
            raise PatternMassMismatch(f"{side} shore boundary masses {got} differ from {want}")

    pairs = refine_match(c1.terms, c2.terms, lambda t: pattern_key(t, boundary))
    glued = [(lam, simple_term({e for e, _ in t1} | {e for e, _ in t2})) for lam, t1, t2 in pairs]
    combo = dedupe(ConvexCombination(tuple(glued), g, p_goal(g)))
    if trace.check_terms:
        _check_terms(combo, "glue across a 3-edge cut")
    return _finish(combo, g, "split_glue")


def split_glue(g: MultiGraph, cut: CutReport, trace: CubicTrace | None = None) -> ConvexCombination:
    if cut.kind is not CutKind.PROPER_THREE_EDGE or not cut.is_proper:
        raise PreconditionViolation("split_glue needs a proper 3-edge cut")
    return _split_glue(g, cut, trace or CubicTrace(), 0)


# -- checks ----------------------------------------------------------------------


def _check_terms(c: ConvexCombination, where: str) -> None:
    for lam, t in c.terms:
        if any(k != 1 for _, k in t):
            raise InternalInvariantFailure(f"{where}: term uses a doubled edge")
        if not is_two_edge_connected(c.universe.restrict(dict(t))):
            raise InternalInvariantFailure(f"{where}: term is not 2-edge-connected and spanning")


def _finish(c: ConvexCombination, g: MultiGraph, where: str) -> ConvexCombination:
    if c.mass != 1 or c.mismatches():
        raise InternalInvariantFailure(f"{where} on {g!r} missed the 4/5 target: {c.mismatches()}")
    return c
