"""Half-triangle graphs: the z* combination and the final 6/5 x* lift.

On a simple half-triangle graph with a designated 1-edge ``p`` the target is
3/5 on half-edges, 4/5 on ``p`` and 6/5 on every other 1-edge.  Half-edges
and ``p`` are used at most once per term, other 1-edges once or twice.

Dispatch: two triangles use a fixed combination; without 2-edge cuts the
triangles are shrunk, the cubic decomposer runs on the shrunken graph and
each triangle is re-expanded with half-edge patterns; otherwise the graph is
split along a 2-edge cut and the two halves are glued back.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .certificate import Certificate, TargetKind
from .combo import ConvexCombination, Term, dedupe, make_term, pad_edge, refine_match
from .cubic import DEFAULT_SIZE_CAP, CubicTrace, decompose_cubic
from .errors import (
    InternalInvariantFailure,
    NoAdmissibleCut,
    NoValidP,
    PatternMassMismatch,
    PreconditionViolation,
)
from .graph import (
    ONE,
    CutKind,
    Edge,
    EdgeId,
    FractionalSolution,
    MultiGraph,
    Vertex,
    find_cuts,
    is_three_edge_connected,
    is_two_edge_connected,
)
from .halftri import HalfTriangleStructure, validate_half_triangle

THREE_FIFTHS = Fraction(3, 5)
FOUR_FIFTHS = Fraction(4, 5)
SIX_FIFTHS = Fraction(6, 5)
TWO_FIFTHS = Fraction(2, 5)
ONE_FIFTH = Fraction(1, 5)


@dataclass
class HTTrace:
    branches: Counter = field(default_factory=Counter)
    cubic: CubicTrace = field(default_factory=CubicTrace)
    check_terms: bool = True

    def summary(self) -> dict[str, int]:
        out = {f"Q.{k}": v for k, v in sorted(self.branches.items())}
        out.update({f"P.{k}": v for k, v in sorted(self.cubic.branches.items())})
        return out


def q_goal(h: HalfTriangleStructure, p: EdgeId) -> dict[EdgeId, Fraction]:
    goal = {e: THREE_FIFTHS for e in h.half_edges}
    for e in h.one_edges:
        goal[e] = FOUR_FIFTHS if e == p else SIX_FIFTHS
    return goal


def q_bounds(h: HalfTriangleStructure, p: EdgeId) -> dict[EdgeId, tuple[int, int]]:
    """Allowed copy range per edge in a term."""
    bounds = {e: (0, 1) for e in h.half_edges}
    for e in h.one_edges:
        bounds[e] = (0, 1) if e == p else (1, 2)
    return bounds


def _require_simple(h: HalfTriangleStructure) -> MultiGraph:
    if not h.is_simple:
        raise PreconditionViolation("expected a simple half-triangle graph (all 1-paths of length 1)")
    return h.simple_form.graph


def choose_p(h: HalfTriangleStructure) -> EdgeId:
    """Least-id 1-edge that lies in no 2-edge cut of the simple form."""
    g = h.simple_form.graph
    in_cut = {e for cut in find_cuts(g, CutKind.TWO_EDGE) for e in cut.edges}
    for e in h.one_edges:
        if e not in in_cut:
            return e
    raise NoValidP("every 1-edge lies in a 2-edge cut")


def decompose_ht(
    h: HalfTriangleStructure, p: EdgeId, size_cap: int = DEFAULT_SIZE_CAP, trace: HTTrace | None = None
) -> ConvexCombination:
    """Combination hitting the z* target on the simple half-triangle graph."""
    g = _require_simple(h)
    if p not in h.one_edges:
        raise PreconditionViolation(f"p = {p} is not a 1-edge")
    if not is_two_edge_connected(g):
        raise PreconditionViolation("support graph is not 2-edge-connected")
    if any(p in cut.edges for cut in find_cuts(g, CutKind.TWO_EDGE)):
        raise PreconditionViolation(f"p = {p} lies in a 2-edge cut")
    trace = HTTrace() if trace is None else trace
    return _decompose(h, p, size_cap, trace)


def _decompose(h: HalfTriangleStructure, p: EdgeId, size_cap: int, trace: HTTrace) -> ConvexCombination:
    g = h.simple_form.graph
    if len(h.triangles) == 2:
        trace.branches["base_two_triangles"] += 1
        combo = base_two_triangles(h, p)
    else:
        cuts = find_cuts(g, CutKind.TWO_EDGE)
        if not cuts:
            trace.branches["expand_case"] += 1
            combo = _expand_case(h, p, size_cap, trace)
        else:
            trace.branches["cut2_glue"] += 1
            combo = _cut2_glue(h, p, cuts, size_cap, trace)
    check_q(combo, h, p, trace.check_terms)
    return combo


def check_q(c: ConvexCombination, h: HalfTriangleStructure, p: EdgeId, check_terms: bool = True) -> None:
    if c.mass != 1:
        raise InternalInvariantFailure(f"multipliers sum to {c.mass}")
    occ = c.occurrences()
    goal = q_goal(h, p)
    bad = {e: (occ[e], goal[e]) for e in goal if occ[e] != goal[e]}
    if bad:
        raise InternalInvariantFailure(f"occurrences off the z* target: {bad}")
    bounds = q_bounds(h, p)
    for lam, t in c.terms:
        d = dict(t)
        for e, (lo, hi) in bounds.items():
            if not lo <= d.get(e, 0) <= hi:
                raise InternalInvariantFailure(f"edge {e} has {d.get(e, 0)} copies, allowed {lo}..{hi}")
        if check_terms and not is_two_edge_connected(c.universe.restrict(d)):
            raise InternalInvariantFailure("a term is not 2-edge-connected and spanning")


# -- two triangles ---------------------------------------------------------------

# Canonical prism: triangles a0 a1 a2 and b0 b1 b2, 1-edges ai-bi, p = a0-b0.
# Found by the exact phase-one search over the bounded pool and frozen here;
# a regression test re-derives it.
_BASE_TERMS: tuple[tuple[Fraction, dict[str, int]], ...] = (
    (ONE_FIFTH, {"a0a1": 1, "a0a2": 1, "b0b1": 1, "b0b2": 1, "q1": 1, "q2": 1}),
    (ONE_FIFTH, {"a0a1": 1, "a1a2": 1, "b0b2": 1, "p": 1, "q1": 2, "q2": 1}),
    (ONE_FIFTH, {"a0a1": 1, "b0b2": 1, "b1b2": 1, "p": 1, "q1": 1, "q2": 2}),
    (TWO_FIFTHS, {"a0a2": 1, "a1a2": 1, "b0b1": 1, "b1b2": 1, "p": 1, "q1": 1, "q2": 1}),
)


def prism_labels(h: HalfTriangleStructure, p: EdgeId) -> dict[str, EdgeId]:
    """Name the nine edges of a two-triangle graph relative to ``p``."""
    g = h.simple_form.graph
    if len(h.triangles) != 2:
        raise PreconditionViolation("expected exactly two triangles")
    pe = g.edge(p)
    a0, b0 = (pe.u, pe.v) if h.triangle_of[pe.u] < h.triangle_of[pe.v] else (pe.v, pe.u)
    a1, a2 = sorted(w for w in h.triangles[h.triangle_of[a0]] if w != a0)
    partner = {}
    one_of = {}
    for e in h.one_edges:
        edge = g.edge(e)
        partner[edge.u], partner[edge.v] = edge.v, edge.u
        one_of[edge.u] = one_of[edge.v] = e
    b1, b2 = partner[a1], partner[a2]

    def half(x: Vertex, y: Vertex) -> EdgeId:
        (e,) = [f for f in g.edges_between(x, y) if f in set(h.half_edges)]
        return e

    return {
        "a0a1": half(a0, a1), "a0a2": half(a0, a2), "a1a2": half(a1, a2),
        "b0b1": half(b0, b1), "b0b2": half(b0, b2), "b1b2": half(b1, b2),
        "p": p, "q1": one_of[a1], "q2": one_of[a2],
    }


def base_two_triangles(h: HalfTriangleStructure, p: EdgeId) -> ConvexCombination:
    names = prism_labels(h, p)
    terms = tuple((lam, make_term({names[k]: c for k, c in pattern.items()})) for lam, pattern in _BASE_TERMS)
    return ConvexCombination(terms, h.simple_form.graph, q_goal(h, p))


# -- no 2-edge cut: expand triangles -----------------------------------------------


@dataclass(frozen=True)
class _Triangle:
    index: int
    corner_of: dict[EdgeId, Vertex]  # incident 1-edge -> triangle vertex on it
    halves: tuple[EdgeId, EdgeId, EdgeId]
    at: dict[Vertex, tuple[EdgeId, EdgeId]]  # vertex -> the two half-edges at it
    opposite: dict[Vertex, EdgeId]  # vertex -> half-edge not touching it


def _triangles(h: HalfTriangleStructure) -> list[_Triangle]:
    g = h.simple_form.graph
    one_set = set(h.one_edges)
    out = []
    for i, (tri, halves) in enumerate(zip(h.triangles, h.triangle_edges)):
        corner_of = {}
        for w in tri:
            (e,) = [f for f in g.incident(w) if f in one_set]
            corner_of[e] = w
        at = {w: tuple(sorted(e for e in halves if w in g.edge(e).ends)) for w in tri}
        opposite = {w: next(e for e in halves if w not in g.edge(e).ends) for w in tri}
        out.append(_Triangle(i, corner_of, tuple(sorted(halves)), at, opposite))
    return out


def triangle_halves(
    tri: _Triangle, present: set[EdgeId], p: EdgeId, copy: int, first_end: dict[EdgeId, int]
) -> tuple[EdgeId, ...]:
    """Half-edges of ``tri`` used in copy number ``copy`` (0..5) of a term
    whose incident 1-edges in the shrunken graph are ``present``."""
    incident = set(tri.corner_of)
    missing = incident - present
    if not missing:
        if p in incident:
            corner = tri.corner_of[p]
            opp = tri.opposite[corner]
            return (opp, tri.at[corner][copy % 2])
        skip = tri.halves[copy % 3]
        return tuple(e for e in tri.halves if e != skip)
    if len(missing) != 1:
        raise InternalInvariantFailure(f"triangle {tri.index} keeps fewer than two incident edges")
    (z,) = missing
    corner = tri.corner_of[z]
    if z == p:
        return tri.at[corner]
    # the two triangles on z take opposite choices in each copy
    take_pair = (copy % 2 == 0) == (first_end[z] == tri.index)
    return tri.at[corner] if take_pair else (tri.opposite[corner],)


def _expand_case(h: HalfTriangleStructure, p: EdgeId, size_cap: int, trace: HTTrace) -> ConvexCombination:
    shrunk = h.shrunken
    base = decompose_cubic(shrunk, size_cap=size_cap, trace=trace.cubic)
    tris = _triangles(h)
    first_end = {e: min(shrunk.edge(e).u, shrunk.edge(e).v) for e in shrunk.edge_ids}

    # triangle patterns: all three incident edges at 2/5, each single omission at 1/5
    for tri in tris:
        masses: Counter = Counter()
        for lam, t in base.terms:
            present = {e for e, _ in t} & set(tri.corner_of)
            masses[frozenset(present)] += lam
        want = {frozenset(tri.corner_of): TWO_FIFTHS}
        want.update({frozenset(set(tri.corner_of) - {z}): ONE_FIFTH for z in tri.corner_of})
        if dict(masses) != want:
            raise PatternMassMismatch(f"triangle {tri.index}: incident-edge pattern masses {dict(masses)}")

    terms = []
    for lam, t in base.terms:
        present = {e for e, _ in t}
        ones = {}
        for e in h.one_edges:
            if e in present:
                ones[e] = 1
            elif e != p:
                ones[e] = 2
        for copy in range(6):
            copies = dict(ones)
            for tri in tris:
                for e in triangle_halves(tri, present & set(tri.corner_of), p, copy, first_end):
                    copies[e] = 1
            terms.append((lam / 6, make_term(copies)))
    combo = dedupe(ConvexCombination(tuple(terms), h.simple_form.graph, q_goal(h, p)))

    p_tris = {h.triangle_of[w] for w in h.simple_form.graph.edge(p).ends}
    occ = combo.occurrences()
    for tri in tris:
        want = THREE_FIFTHS if tri.index in p_tris else Fraction(17, 30)
        for e in tri.halves:
            if occ[e] != want:
                raise InternalInvariantFailure(f"half-edge {e} occurs {occ[e]} before padding, expected {want}")
    for e in h.half_edges:
        combo = pad_edge(combo, e, THREE_FIFTHS, max_copies=1)
    return dedupe(combo)


def expand_case(h: HalfTriangleStructure, p: EdgeId, size_cap: int = DEFAULT_SIZE_CAP) -> ConvexCombination:
    _require_simple(h)
    if len(h.triangles) < 3 or find_cuts(h.simple_form.graph, CutKind.TWO_EDGE):
        raise PreconditionViolation("expand_case needs at least three triangles and no 2-edge cut")
    trace = HTTrace()
    combo = _expand_case(h, p, size_cap, trace)
    check_q(combo, h, p, trace.check_terms)
    return combo


# -- 2-edge cut: split and glue ----------------------------------------------------


@dataclass(frozen=True)
class _Split:
    side: frozenset[Vertex]  # shore without p; becomes G1 + hj
    hi: EdgeId
    jk: EdgeId
    h: Vertex
    i: Vertex
    j: Vertex
    k: Vertex


def _side_with_edge(g: MultiGraph, keep: frozenset[Vertex], a: Vertex, b: Vertex, new_id: EdgeId) -> MultiGraph:
    sub = g.induced(keep)
    graph = MultiGraph(keep, list(sub.edges) + [Edge(new_id, a, b)])
    return graph


def _admissible_splits(h: HalfTriangleStructure, p: EdgeId, cuts) -> list[_Split]:
    g = h.simple_form.graph
    one_set = set(h.one_edges)
    pe = g.edge(p)
    found = []
    for cut in cuts:
        if any(e not in one_set for e in cut.edges):
            continue
        for side in cut.shores:
            if pe.u in side or pe.v in side:
                continue
            e1, e2 = (g.edge(e) for e in cut.edges)
            hv, iv = (e1.u, e1.v) if e1.u in side else (e1.v, e1.u)
            jv, kv = (e2.u, e2.v) if e2.u in side else (e2.v, e2.u)
            if hv == jv or iv == kv:
                continue
            trial = _side_with_edge(g, side, hv, jv, g.max_edge_id() + 1)
            if trial.is_simple() and is_three_edge_connected(trial):
                found.append(_Split(side, e1.id, e2.id, hv, iv, jv, kv))
    return found


def _sub_structure(g: MultiGraph, keep: frozenset[Vertex], a: Vertex, b: Vertex, new_id: EdgeId, values) -> HalfTriangleStructure:
    graph = _side_with_edge(g, keep, a, b, new_id)
    vals = {e: values[e] for e in graph.edge_ids if e != new_id}
    vals[new_id] = ONE
    return validate_half_triangle(FractionalSolution(graph, vals))


def _cut2_glue(h: HalfTriangleStructure, p: EdgeId, cuts, size_cap: int, trace: HTTrace) -> ConvexCombination:
    g = h.simple_form.graph
    splits = _admissible_splits(h, p, cuts)
    if not splits:
        raise NoAdmissibleCut(
            f"none of the {len(cuts)} 2-edge cuts has a 3-edge-connected side without p = {p}"
        )
    split = min(splits, key=lambda s: len(s.side))
    hj = g.max_edge_id() + 1
    ik = hj + 1
    rest = frozenset(g.vertices) - split.side
    values = h.simple_form.value
    h1 = _sub_structure(g, split.side, split.h, split.j, hj, values)
    h2 = _sub_structure(g, rest, split.i, split.k, ik, values)
    c1 = _decompose(h1, hj, size_cap, trace)
    c2 = _decompose(h2, p, size_cap, trace)

    # hj omitted pairs with ik doubled, single hj with single ik
    key1 = lambda t: "double" if _copies(t, hj) == 0 else "single"  # noqa: E731
    key2 = lambda t: "double" if _copies(t, ik) == 2 else "single"  # noqa: E731
    glued = []
    for lam, t1, t2 in refine_match(c1.terms, c2.terms, key1, key2):
        mult = _copies(t2, ik)
        copies = [(e, c) for e, c in t1 if e != hj] + [(e, c) for e, c in t2 if e != ik]
        copies += [(split.hi, mult), (split.jk, mult)]
        glued.append((lam, make_term(copies)))
    return dedupe(ConvexCombination(tuple(glued), g, q_goal(h, p)))


def _copies(t: Term, e: EdgeId) -> int:
    return dict(t).get(e, 0)


def cut2_glue(h: HalfTriangleStructure, p: EdgeId, size_cap: int = DEFAULT_SIZE_CAP) -> ConvexCombination:
    g = _require_simple(h)
    cuts = find_cuts(g, CutKind.TWO_EDGE)
    if not cuts:
        raise PreconditionViolation("graph has no 2-edge cut")
    trace = HTTrace()
    combo = _cut2_glue(h, p, cuts, size_cap, trace)
    check_q(combo, h, p, trace.check_terms)
    return combo


# -- the 6/5 x* lift ---------------------------------------------------------------


def lift_to_sixfifth(c: ConvexCombination, h: HalfTriangleStructure, p: EdgeId, trace=None) -> Certificate:
    """Replace each 1-edge by its 1-path and put p's path in twice where p is missing."""
    paths = h.path_by_id
    halves = set(h.half_edges)
    terms = []
    for lam, t in c.terms:
        d = dict(t)
        copies = {e: k for e, k in d.items() if e in halves}
        for pid, path in paths.items():
            k = d.get(pid, 0)
            if pid == p and k == 0:
                k = 2
            for e in path.edges:
                copies[e] = k
        terms.append((lam, make_term(copies)))
    x = h.solution
    return Certificate(TargetKind.SIXFIFTH, x.graph, dict(x.value), tuple(terms), p, dict(trace or {}))


def decompose_sixfifth(
    x: FractionalSolution, p: EdgeId | None = None, size_cap: int = DEFAULT_SIZE_CAP, trace: HTTrace | None = None
) -> Certificate:
    """6/5 x* as a combination of 2EC spanning multi-subgraphs of the support.

    ``p`` may name any edge of the 1-path to be treated as the special edge;
    by default one is chosen automatically.
    """
    h = validate_half_triangle(x)
    simple = validate_half_triangle(h.simple_form)
    if p is None:
        p = choose_p(simple)
    else:
        owner = [path.id for path in h.one_paths if p in path.edges]
        if not owner:
            raise PreconditionViolation(f"edge {p} is not on a 1-path")
        p = owner[0]
    trace = HTTrace() if trace is None else trace
    combo = decompose_ht(simple, p, size_cap=size_cap, trace=trace)
    cert = lift_to_sixfifth(combo, h, p, trace.summary())
    lifted = dedupe(ConvexCombination(cert.terms, x.graph))
    if len(lifted) != len(cert.terms):
        raise InternalInvariantFailure("lifting merged distinct terms")
    occ = lifted.occurrences()
    bad = {e: occ[e] for e in x.graph.edge_ids if occ[e] != SIX_FIFTHS * x.value[e]}
    if bad or lifted.mass != 1:
        raise InternalInvariantFailure(f"lifted combination misses 6/5 x*: {bad}")
    return Certificate(cert.kind, cert.universe, cert.values, lifted.terms, p, cert.trace)


def decompose_q(
    x: FractionalSolution, p: EdgeId | None = None, size_cap: int = DEFAULT_SIZE_CAP, trace: HTTrace | None = None
) -> Certificate:
    """z* certificate for a half-triangle solution whose 1-paths are single edges."""
    h = validate_half_triangle(x)
    if not h.is_simple:
        raise PreconditionViolation("the z* target needs every 1-path to be a single edge")
    p = choose_p(h) if p is None else p
    trace = HTTrace() if trace is None else trace
    combo = decompose_ht(h, p, size_cap=size_cap, trace=trace)
    terms = tuple((lam, make_term(t)) for lam, t in combo.terms)
    return Certificate(TargetKind.Q, x.graph, dict(x.value), terms, p, trace.summary())
