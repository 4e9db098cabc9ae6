"""Recognising half-triangle solutions and checking LP cut feasibility."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotHalfTriangle, SizeCapExceeded
from .graph import HALF, ONE, Edge, EdgeId, FractionalSolution, MultiGraph, Vertex, is_connected


@dataclass(frozen=True)
class OnePath:
    """Maximal path of value-1 edges between two triangle vertices."""

    edges: tuple[EdgeId, ...]
    start: Vertex
    end: Vertex

    @property
    def id(self) -> EdgeId:
        # the least member id doubles as the id of the contracted 1-edge
        return min(self.edges)

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class HalfTriangleStructure:
    solution: FractionalSolution
    triangles: tuple[tuple[Vertex, Vertex, Vertex], ...]
    triangle_edges: tuple[tuple[EdgeId, EdgeId, EdgeId], ...]
    one_paths: tuple[OnePath, ...]
    shrunken: MultiGraph
    simple_form: FractionalSolution
    triangle_of: dict[Vertex, int]

    @property
    def path_by_id(self) -> dict[EdgeId, OnePath]:
        return {p.id: p for p in self.one_paths}

    @property
    def half_edges(self) -> list[EdgeId]:
        return sorted(e for tri in self.triangle_edges for e in tri)

    @property
    def one_edges(self) -> list[EdgeId]:
        """Ids of the 1-edges of the simple form."""
        return sorted(p.id for p in self.one_paths)

    @property
    def is_simple(self) -> bool:
        return all(len(p) == 1 for p in self.one_paths)


def validate_half_triangle(x: FractionalSolution) -> HalfTriangleStructure:
    """Recover triangles and 1-paths, or raise naming the failed clause."""
    g = x.graph
    bad = [e for e, val in x.value.items() if val not in (HALF, ONE)]
    if bad:
        raise NotHalfTriangle("not-half-integer", f"edge {bad[0]} has value {x.value[bad[0]]}")
    for w in g.vertices:
        total = x.vertex_sum(w)
        if total != 2:
            raise NotHalfTriangle("not-degree-tight", f"vertex {w} has value sum {total}")

    halves = MultiGraph(g.vertices, (g.edge(e) for e in x.half_edges()))
    triangles = []
    triangle_edges = []
    seen: set[Vertex] = set()
    for w in g.vertices:
        if w in seen or not halves.incident(w):
            continue
        comp = {w}
        stack = [w]
        while stack:
            y = stack.pop()
            for z in halves.neighbors(y):
                if z not in comp:
                    comp.add(z)
                    stack.append(z)
        seen |= comp
        ids = sorted({e for y in comp for e in halves.incident(y)})
        pairs = {halves.edge(e).ends for e in ids}
        if len(comp) != 3 or len(ids) != 3 or len(pairs) != 3:
            raise NotHalfTriangle(
                "half-edges-not-disjoint-triangles", f"half-edge component at vertex {w} is not a 3-cycle"
            )
        triangles.append(tuple(sorted(comp)))
        triangle_edges.append(tuple(ids))
    if not triangles:
        raise NotHalfTriangle("path-structure-broken", "no half-triangles")
    triangle_of = {w: i for i, tri in enumerate(triangles) for w in tri}

    ones = MultiGraph(g.vertices, (g.edge(e) for e in x.one_edges()))
    paths: dict[tuple[EdgeId, ...], OnePath] = {}
    covered: set[EdgeId] = set()
    for t in sorted(triangle_of):
        inc = ones.incident(t)
        if len(inc) != 1:
            raise NotHalfTriangle("path-structure-broken", f"triangle vertex {t} has {len(inc)} 1-edges")
        walk = [inc[0]]
        cur = ones.edge(inc[0]).other(t)
        while cur not in triangle_of:
            nxt = [e for e in ones.incident(cur) if e != walk[-1]]
            if len(nxt) != 1:
                raise NotHalfTriangle("path-structure-broken", f"vertex {cur} does not continue a 1-path")
            walk.append(nxt[0])
            cur = ones.edge(nxt[0]).other(cur)
        if triangle_of[cur] == triangle_of[t]:
            raise NotHalfTriangle(
                "path-structure-broken", f"1-path from vertex {t} returns to its own triangle"
            )
        key = tuple(sorted(walk))
        if key not in paths:
            paths[key] = OnePath(tuple(walk), t, cur)
            covered.update(walk)
    if covered != set(x.one_edges()):
        raise NotHalfTriangle("path-structure-broken", "some 1-edges lie on cycles away from every triangle")
    one_paths = tuple(sorted(paths.values(), key=lambda p: p.id))

    shrunken = MultiGraph(
        range(len(triangles)),
        (Edge(p.id, triangle_of[p.start], triangle_of[p.end]) for p in one_paths),
    )
    if not is_connected(shrunken):
        raise NotHalfTriangle("path-structure-broken", "support graph is disconnected")

    simple_edges = [g.edge(e) for tri in triangle_edges for e in tri]
    simple_edges += [Edge(p.id, p.start, p.end) for p in one_paths]
    simple_graph = MultiGraph(triangle_of, simple_edges)
    simple_values = {e: HALF for tri in triangle_edges for e in tri}
    simple_values.update({p.id: ONE for p in one_paths})
    return HalfTriangleStructure(
        solution=x,
        triangles=tuple(triangles),
        triangle_edges=tuple(triangle_edges),
        one_paths=one_paths,
        shrunken=shrunken,
        simple_form=FractionalSolution(simple_graph, simple_values),
        triangle_of=triangle_of,
    )


def half_triangle_solution(g: MultiGraph, one_edges) -> FractionalSolution:
    """Values 1 on ``one_edges`` and 1/2 on every other edge of ``g``."""
    ones = set(one_edges)
    return FractionalSolution(g, {e: (ONE if e in ones else HALF) for e in g.edge_ids})


DEFAULT_FEASIBILITY_CAP = 20


def cut_feasibility(x: FractionalSolution, cap: int = DEFAULT_FEASIBILITY_CAP) -> bool:
    """Every vertex subset has value-weighted cut at least 2.

    Walks all subsets containing the first vertex in Gray-code order so each
    step updates the cut value from a single vertex flip.
    """
    g = x.graph
    if g.n > cap:
        raise SizeCapExceeded(f"cut feasibility enumerates 2^(n-1) subsets; n={g.n} > cap {cap}")
    if g.n < 2:
        return True
    scale = math.lcm(*(val.denominator for val in x.value.values()))
    weight = {e: int(val * scale) for e, val in x.value.items()}
    need = 2 * scale
    first, rest = g.vertices[0], g.vertices[1:]
    inside = {w: False for w in g.vertices}
    inside[first] = True
    cut = sum(weight[e] for e in g.incident(first))
    if cut < need:
        return False
    members = 0
    for i in range(1, 1 << len(rest)):
        bit = (i & -i).bit_length() - 1
        w = rest[bit]
        delta = 0
        for e in g.incident(w):
            other = g.edge(e).other(w)
            # before the flip, e crosses iff membership differs
            delta += -weight[e] if inside[other] != inside[w] else weight[e]
        inside[w] = not inside[w]
        members += 1 if inside[w] else -1
        cut += delta
        if members < len(rest) and cut < need:
            return False
    return True


def cut_value(x: FractionalSolution, side) -> Fraction:
    return sum((x.value[e] for e in x.graph.crossing(side)), Fraction(0))
