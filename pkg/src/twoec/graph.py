"""Multigraphs with stable edge ids, connectivity, cuts and shrinking transforms.

Every edge record carries an integer id that survives all transforms.  Edges
created by a transform get fresh ids (one past the current maximum) and each
transform reports a provenance map ``old id -> tuple of new ids``; an empty
tuple means the edge was removed.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import PreconditionViolation, SizeCapExceeded, StructureViolation

EdgeId = int
Vertex = int
Provenance = dict[EdgeId, tuple[EdgeId, ...]]


@dataclass(frozen=True, order=True)
class Edge:
    id: EdgeId
    u: Vertex
    v: Vertex
    copies: int = 1

    def other(self, w: Vertex) -> Vertex:
        if w == self.u:
            return self.v
        if w == self.v:
            return self.u
        raise ValueError(f"vertex {w} is not an end of edge {self.id}")

    @property
    def ends(self) -> tuple[Vertex, Vertex]:
        return (self.u, self.v) if self.u <= self.v else (self.v, self.u)


class MultiGraph:
    """Immutable undirected multigraph.

    Parallel edges may be separate records or one record with ``copies > 1``;
    connectivity code treats both the same way.
    """

    __slots__ = ("vertices", "_edges", "_incident")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge]):
        self.vertices: tuple[Vertex, ...] = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        table: dict[EdgeId, Edge] = {}
        incident: dict[Vertex, list[EdgeId]] = {w: [] for w in self.vertices}
        for e in sorted(edges):
            if e.id in table:
                raise ValueError(f"duplicate edge id {e.id}")
            if e.u == e.v:
                raise ValueError(f"self-loop at vertex {e.u} (edge {e.id})")
            if e.copies < 1:
                raise ValueError(f"edge {e.id} has copies={e.copies}")
            if e.u not in vset or e.v not in vset:
                raise ValueError(f"edge {e.id} has an end outside the vertex set")
            table[e.id] = e
            incident[e.u].append(e.id)
            incident[e.v].append(e.id)
        self._edges = table
        self._incident = {w: tuple(ids) for w, ids in incident.items()}

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[Vertex, Vertex]], vertices: Iterable[Vertex] | None = None) -> MultiGraph:
        """Build a graph whose edge ids are the positions in ``pairs``."""
        pairs = list(pairs)
        if vertices is None:
            vertices = {w for p in pairs for w in p}
        return cls(vertices, (Edge(i, u, v) for i, (u, v) in enumerate(pairs)))

    # -- basic queries -------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edge_ids(self) -> tuple[EdgeId, ...]:
        return tuple(self._edges)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edges.values())

    def edge(self, e: EdgeId) -> Edge:
        try:
            return self._edges[e]
        except KeyError:
            raise KeyError(f"unknown edge id {e}") from None

    def __contains__(self, e: object) -> bool:
        return e in self._edges

    def incident(self, w: Vertex) -> tuple[EdgeId, ...]:
        return self._incident[w]

    def degree(self, w: Vertex) -> int:
        return sum(self._edges[e].copies for e in self._incident[w])

    def neighbors(self, w: Vertex) -> list[Vertex]:
        return [self._edges[e].other(w) for e in self._incident[w]]

    def max_edge_id(self) -> int:
        return max(self._edges, default=-1)

    def max_vertex(self) -> int:
        return max(self.vertices, default=-1)

    def is_simple(self) -> bool:
        seen = set()
        for e in self._edges.values():
            if e.copies != 1 or e.ends in seen:
                return False
            seen.add(e.ends)
        return True

    def is_cubic(self) -> bool:
        return all(self.degree(w) == 3 for w in self.vertices)

    def edges_between(self, a: Vertex, b: Vertex) -> list[EdgeId]:
        return [e for e in self._incident[a] if self._edges[e].other(a) == b]

    # -- derived graphs ------------------------------------------------------

    def restrict(self, copies: Mapping[EdgeId, int]) -> MultiGraph:
        """Spanning multi-subgraph with the given copy counts (0 drops the edge)."""
        kept = []
        for e, k in copies.items():
            if k <= 0:
                continue
            base = self.edge(e)
            kept.append(Edge(e, base.u, base.v, k))
        return MultiGraph(self.vertices, kept)

    def without(self, removed: Iterable[EdgeId]) -> MultiGraph:
        removed = set(removed)
        return MultiGraph(self.vertices, (e for e in self._edges.values() if e.id not in removed))

    def induced(self, vertex_set: Iterable[Vertex]) -> MultiGraph:
        vs = set(vertex_set)
        return MultiGraph(vs, (e for e in self._edges.values() if e.u in vs and e.v in vs))

    def crossing(self, side: Iterable[Vertex]) -> list[EdgeId]:
        s = set(side)
        return [e.id for e in self._edges.values() if (e.u in s) != (e.v in s)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self.vertices == other.vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self._edges.values())))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


# -- connectivity --------------------------------------------------------------


def components(g: MultiGraph, removed: Iterable[EdgeId] = ()) -> list[frozenset[Vertex]]:
    """Connected components after deleting ``removed``, sorted by least vertex."""
    removed = set(removed)
    seen: set[Vertex] = set()
    out = []
    for start in g.vertices:
        if start in seen:
            continue
        comp = {start}
        stack = [start]
        while stack:
            w = stack.pop()
            for e in g.incident(w):
                if e in removed:
                    continue
                x = g.edge(e).other(w)
                if x not in comp:
                    comp.add(x)
                    stack.append(x)
        seen |= comp
        out.append(frozenset(comp))
    return out


def is_connected(g: MultiGraph, removed: Iterable[EdgeId] = ()) -> bool:
    return g.n > 0 and len(components(g, removed)) == 1


def bridges(g: MultiGraph) -> list[EdgeId]:
    """Bridge edge ids (sorted).  A record with copies >= 2 is never a bridge."""
    disc: dict[Vertex, int] = {}
    low: dict[Vertex, int] = {}
    found = []
    counter = itertools.count()
    for root in g.vertices:
        if root in disc:
            continue
        disc[root] = low[root] = next(counter)
        # frames: (vertex, edge id used to enter it, iterator over incident edges)
        stack = [(root, None, iter(g.incident(root)))]
        while stack:
            w, via, it = stack[-1]
            advanced = False
            for e in it:
                if e == via:
                    continue
                x = g.edge(e).other(w)
                if x not in disc:
                    disc[x] = low[x] = next(counter)
                    stack.append((x, e, iter(g.incident(x))))
                    advanced = True
                    break
                low[w] = min(low[w], disc[x])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[w])
                if low[w] > disc[parent] and g.edge(via).copies == 1:
                    found.append(via)
    return sorted(found)


def is_two_edge_connected(g: MultiGraph) -> bool:
    """Connected, spanning its vertex set, and bridgeless."""
    if g.n == 0:
        raise PreconditionViolation("empty graph")
    if g.n == 1:
        return True
    return is_connected(g) and not bridges(g)


def is_three_edge_connected(g: MultiGraph) -> bool:
    if not is_two_edge_connected(g):
        return False
    return not find_cuts(g, CutKind.TWO_EDGE)


# -- cuts ----------------------------------------------------------------------


class CutKind(str, enum.Enum):
    BRIDGE = "bridge"
    TWO_EDGE = "two-edge"
    PROPER_THREE_EDGE = "proper-three-edge"


_CUT_SIZE = {CutKind.BRIDGE: 1, CutKind.TWO_EDGE: 2, CutKind.PROPER_THREE_EDGE: 3}
DEFAULT_CUT_EDGE_CAP = {CutKind.BRIDGE: 100_000, CutKind.TWO_EDGE: 2_000, CutKind.PROPER_THREE_EDGE: 150}


@dataclass(frozen=True)
class CutReport:
    kind: CutKind
    edges: tuple[EdgeId, ...]
    shores: tuple[frozenset[Vertex], frozenset[Vertex]]

    @property
    def is_proper(self) -> bool:
        return min(len(s) for s in self.shores) >= 2


def _as_cut(g: MultiGraph, kind: CutKind, cut: tuple[EdgeId, ...]) -> CutReport | None:
    comps = components(g, cut)
    if len(comps) != 2:
        return None
    left = comps[0]
    # minimal cut: every edge must join the two shores
    if any((g.edge(e).u in left) == (g.edge(e).v in left) for e in cut):
        return None
    return CutReport(kind, tuple(sorted(cut)), (comps[0], comps[1]))


def find_cuts(g: MultiGraph, kind: CutKind | str, cap: int | None = None) -> list[CutReport]:
    """All minimal cuts of the given size, sorted by edge-id tuple.

    Sizes count copies, so one record with ``copies == 2`` can form a 2-edge
    cut on its own.  Cuts are found by removing up to two edges and running
    the bridge finder on what is left.
    """
    kind = CutKind(kind)
    if not is_connected(g):
        raise PreconditionViolation("find_cuts needs a connected graph")
    if kind is CutKind.PROPER_THREE_EDGE and not g.is_simple():
        raise PreconditionViolation("proper 3-edge cuts are only enumerated on simple graphs")
    cap = DEFAULT_CUT_EDGE_CAP[kind] if cap is None else cap
    if g.m > cap:
        raise SizeCapExceeded(f"{kind.value} enumeration capped at {cap} edges, graph has {g.m}")

    size = _CUT_SIZE[kind]
    found: set[tuple[EdgeId, ...]] = set()
    if kind is CutKind.BRIDGE:
        found = {(e,) for e in bridges(g)}
    elif kind is CutKind.TWO_EDGE:
        for e in g.edge_ids:
            if g.edge(e).copies == 2 and not is_connected(g, (e,)):
                found.add((e,))
        singles = [e for e in g.edge_ids if g.edge(e).copies == 1]
        for e in singles:
            rest = g.without((e,))
            if not is_connected(rest):
                continue
            for f in bridges(rest):
                found.add(tuple(sorted((e, f))))
    else:
        for e, f in itertools.combinations(g.edge_ids, 2):
            rest = g.without((e, f))
            if not is_connected(rest):
                continue
            for h in bridges(rest):
                found.add(tuple(sorted((e, f, h))))

    reports = []
    for cut in sorted(found):
        if sum(g.edge(e).copies for e in cut) != size:
            continue
        rep = _as_cut(g, kind, cut)
        if rep is None:
            continue
        if kind is CutKind.PROPER_THREE_EDGE and not rep.is_proper:
            continue
        reports.append(rep)
    return reports


# -- transforms ----------------------------------------------------------------


@dataclass(frozen=True)
class ReductionContext:
    """Labels of one edge reduction: ``uv`` is removed together with ``u`` and
    ``v``; ``a, b`` were the other neighbours of ``u`` and ``c, d`` those of
    ``v``; ``ab`` and ``cd`` are the freshly created edges."""

    u: Vertex
    v: Vertex
    a: Vertex
    b: Vertex
    c: Vertex
    d: Vertex
    uv: EdgeId
    au: EdgeId
    ub: EdgeId
    vc: EdgeId
    vd: EdgeId
    ab: EdgeId
    cd: EdgeId
    provenance: Provenance = field(compare=False, repr=False)


def _other_two(g: MultiGraph, w: Vertex, skip: EdgeId) -> list[tuple[EdgeId, Vertex]]:
    return sorted((e, g.edge(e).other(w)) for e in g.incident(w) if e != skip)


def reduce_edge(g: MultiGraph, uv: EdgeId) -> tuple[MultiGraph, ReductionContext]:
    """Delete both ends of ``uv`` and join their remaining neighbours in pairs."""
    if g.n <= 4:
        raise PreconditionViolation("reduce_edge needs more than 4 vertices; use the base case")
    if not g.is_simple() or not g.is_cubic():
        raise PreconditionViolation("reduce_edge needs a simple cubic graph")
    edge = g.edge(uv)
    u, v = edge.u, edge.v
    (au, a), (ub, b) = _other_two(g, u, uv)
    (vc, c), (vd, d) = _other_two(g, v, uv)
    if len({a, b, c, d}) != 4:
        raise PreconditionViolation(f"neighbours of edge {uv} are not all distinct: {a, b, c, d}")

    ab = g.max_edge_id() + 1
    cd = ab + 1
    dropped = {uv, au, ub, vc, vd}
    kept = [e for e in g.edges if e.id not in dropped]
    result = MultiGraph(
        (w for w in g.vertices if w not in (u, v)),
        kept + [Edge(ab, a, b), Edge(cd, c, d)],
    )
    provenance: Provenance = {e: (() if e in dropped else (e,)) for e in g.edge_ids}
    ctx = ReductionContext(u, v, a, b, c, d, uv, au, ub, vc, vd, ab, cd, provenance)

    if result.n != g.n - 2 or result.m != g.m - 3:
        raise StructureViolation("edge reduction changed the counts unexpectedly")
    if not result.is_cubic() or not is_three_edge_connected(result):
        raise StructureViolation(f"reducing edge {uv} did not give a cubic 3-edge-connected graph")
    return result, ctx


def contract_shore(
    g: MultiGraph, shore: Iterable[Vertex], cut_size: int | None = None
) -> tuple[MultiGraph, Vertex, Provenance]:
    """Shrink ``shore`` to one new pseudo-vertex; cut edges keep their ids."""
    shore = frozenset(shore)
    rest = frozenset(g.vertices) - shore
    if not shore or not rest or not shore <= set(g.vertices):
        raise PreconditionViolation("shore must be a nonempty proper vertex subset")
    if not is_connected(g.induced(shore)) or not is_connected(g.induced(rest)):
        raise PreconditionViolation("shore and its complement must both induce connected subgraphs")
    cut = g.crossing(shore)
    cut_copies = sum(g.edge(e).copies for e in cut)
    if cut_size is not None and cut_copies != cut_size:
        raise PreconditionViolation(f"expected a {cut_size}-edge cut, found {cut_copies}")

    pseudo = g.max_vertex() + 1
    new_edges = []
    provenance: Provenance = {}
    for e in g.edges:
        if e.u in shore and e.v in shore:
            provenance[e.id] = ()
            continue
        if e.u in shore:
            e = Edge(e.id, pseudo, e.v, e.copies)
        elif e.v in shore:
            e = Edge(e.id, e.u, pseudo, e.copies)
        new_edges.append(e)
        provenance[e.id] = (e.id,)
    out = MultiGraph(rest | {pseudo}, new_edges)
    if out.degree(pseudo) != cut_copies:
        raise StructureViolation("pseudo-vertex degree differs from the cut size")
    return out, pseudo, provenance


def splice_vertex(g: MultiGraph, w: Vertex) -> tuple[MultiGraph, EdgeId, Provenance]:
    """Replace a degree-2 vertex ``x - w - y`` by a single fresh edge ``xy``."""
    inc = g.incident(w)
    if len(inc) != 2 or any(g.edge(e).copies != 1 for e in inc):
        raise PreconditionViolation(f"vertex {w} is not a degree-2 vertex with single edges")
    x, y = (g.edge(e).other(w) for e in inc)
    if x == y:
        raise PreconditionViolation(f"splicing vertex {w} would create a self-loop")
    new_id = g.max_edge_id() + 1
    kept = [e for e in g.edges if e.id not in inc]
    out = MultiGraph((z for z in g.vertices if z != w), kept + [Edge(new_id, x, y)])
    provenance: Provenance = {e: (() if e in inc else (e,)) for e in g.edge_ids}
    return out, new_id, provenance


# -- fractional solutions --------------------------------------------------------

HALF = Fraction(1, 2)
ONE = Fraction(1)


@dataclass(frozen=True)
class FractionalSolution:
    """Support graph plus one exact value per edge record."""

    graph: MultiGraph
    value: Mapping[EdgeId, Fraction]

    def __post_init__(self) -> None:
        if set(self.value) != set(self.graph.edge_ids):
            raise PreconditionViolation("values must be given for exactly the stored edges")
        object.__setattr__(self, "value", {k: Fraction(self.value[k]) for k in sorted(self.value)})
        for e, x in self.value.items():
            if not (0 < x <= 1):
                raise PreconditionViolation(f"edge {e} has value {x} outside (0, 1]")
            if self.graph.edge(e).copies != 1:
                raise PreconditionViolation(f"edge {e} of a fractional solution has copies > 1")

    def vertex_sum(self, w: Vertex) -> Fraction:
        return sum((self.value[e] for e in self.graph.incident(w)), Fraction(0))

    def is_half_integer(self) -> bool:
        return all(x in (HALF, ONE) for x in self.value.values())

    def is_degree_tight(self) -> bool:
        return all(self.vertex_sum(w) == 2 for w in self.graph.vertices)

    def half_edges(self) -> list[EdgeId]:
        return [e for e in self.graph.edge_ids if self.value[e] == HALF]

    def one_edges(self) -> list[EdgeId]:
        return [e for e in self.graph.edge_ids if self.value[e] == ONE]

    def cost(self, c: Mapping[EdgeId, Fraction]) -> Fraction:
        return sum((c[e] * x for e, x in self.value.items()), Fraction(0))


def iter_vertex_subsets(vertices: tuple[Vertex, ...]) -> Iterator[frozenset[Vertex]]:
    """Nonempty proper subsets containing the first vertex (one per cut)."""
    first, rest = vertices[0], vertices[1:]
    for r in range(len(rest)):
        for combo in itertools.combinations(rest, r):
            yield frozenset((first,) + combo)
