"""Test graphs and half-triangle solutions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import ParseError, PreconditionViolation, SizeCapExceeded
from .graph import EdgeId, FractionalSolution, MultiGraph, is_three_edge_connected
from .halftri import half_triangle_solution

NAMED_CUBIC = ("K4", "K3_3", "prism", "cube", "Petersen")


def named_cubic(name: str) -> MultiGraph:
    if name == "K4":
        pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    elif name == "K3_3":
        pairs = [(i, j) for i in range(3) for j in range(3, 6)]
    elif name == "prism":
        pairs = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)]
    elif name == "cube":
        pairs = [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1]
    elif name == "Petersen":
        pairs = [(i, (i + 1) % 5) for i in range(5)]
        pairs += [(i, i + 5) for i in range(5)]
        pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    else:
        raise PreconditionViolation(f"unknown cubic graph {name!r}; choose from {', '.join(NAMED_CUBIC)}")
    return MultiGraph.from_pairs([(min(p), max(p)) for p in pairs], range(max(map(max, pairs)) + 1))


def mobius_ladder(rungs: int) -> MultiGraph:
    """Cycle on ``2 * rungs`` vertices plus the chords ``i -- i + rungs``."""
    if rungs < 2:
        raise PreconditionViolation("a Mobius ladder needs at least 2 rungs")
    n = 2 * rungs
    pairs = [(i, (i + 1) % n) for i in range(n)] + [(i, i + rungs) for i in range(rungs)]
    return MultiGraph.from_pairs([(min(p), max(p)) for p in pairs], range(n))


def _lengths_for(g: MultiGraph, path_lengths) -> dict[EdgeId, int]:
    if path_lengths is None:
        out = {e: 1 for e in g.edge_ids}
    elif isinstance(path_lengths, int):
        out = {e: path_lengths for e in g.edge_ids}
    elif isinstance(path_lengths, Mapping):
        out = {e: path_lengths.get(e, 1) for e in g.edge_ids}
    else:
        seq = list(path_lengths)
        if not seq:
            raise PreconditionViolation("empty path-length list")
        out = {e: seq[i % len(seq)] for i, e in enumerate(g.edge_ids)}
    if any(k < 1 for k in out.values()):
        raise PreconditionViolation("path lengths must be positive")
    return out


@dataclass(frozen=True)
class Expansion:
    solution: FractionalSolution
    triangle_of_vertex: dict[int, tuple[int, int, int]]
    path_of_edge: dict[EdgeId, tuple[EdgeId, ...]]


def expand_with_labels(g: MultiGraph, path_lengths=None) -> Expansion:
    """Triangle expansion that also returns where each vertex and edge went."""
    if not g.is_simple() or not g.is_cubic():
        raise PreconditionViolation("triangle expansion needs a simple cubic graph")
    lengths = _lengths_for(g, path_lengths)
    index = {w: i for i, w in enumerate(g.vertices)}
    corner: dict[tuple[int, EdgeId], int] = {}
    triangle_of_vertex = {}
    pairs: list[tuple[int, int]] = []
    for w in g.vertices:
        base = 3 * index[w]
        for slot, e in enumerate(sorted(g.incident(w))):
            corner[(w, e)] = base + slot
        triangle_of_vertex[w] = (base, base + 1, base + 2)
        pairs += [(base, base + 1), (base, base + 2), (base + 1, base + 2)]
    n_halves = len(pairs)
    next_vertex = 3 * g.n
    path_of_edge = {}
    for e in g.edges:
        stops = [corner[(e.u, e.id)]]
        for _ in range(lengths[e.id] - 1):
            stops.append(next_vertex)
            next_vertex += 1
        stops.append(corner[(e.v, e.id)])
        first = len(pairs)
        pairs += list(zip(stops, stops[1:]))
        path_of_edge[e.id] = tuple(range(first, len(pairs)))
    graph = MultiGraph.from_pairs(pairs, range(next_vertex))
    x = half_triangle_solution(graph, range(n_halves, len(pairs)))
    return Expansion(x, triangle_of_vertex, path_of_edge)


def triangle_expansion(g: MultiGraph, path_lengths=None) -> FractionalSolution:
    """Blow every vertex of a cubic graph up into a triangle of half-edges and
    every edge into a 1-path of the requested length."""
    return expand_with_labels(g, path_lengths).solution


def two_triangles(path_lengths: Sequence[int] = (1, 1, 1)) -> FractionalSolution:
    """Triangles 0,1,2 and 3,4,5 joined by 1-paths from ``i`` to ``i + 3``.

    With all lengths 1 this is the prism carrying 1/2 on its triangles.
    """
    if len(path_lengths) != 3 or any(k < 1 for k in path_lengths):
        raise PreconditionViolation("need three positive path lengths")
    pairs = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]
    nxt = 6
    for i, length in enumerate(path_lengths):
        stops = [i] + list(range(nxt, nxt + length - 1)) + [i + 3]
        nxt += length - 1
        pairs += list(zip(stops, stops[1:]))
    graph = MultiGraph.from_pairs(pairs, range(nxt))
    return half_triangle_solution(graph, range(6, len(pairs)))


def chained_gadgets(k: int, path_lengths=None, size_cap: int = 12) -> FractionalSolution:
    """Triangle expansion of the Mobius ladder on ``2k + 2`` vertices."""
    if k < 1:
        raise PreconditionViolation("k must be positive")
    if 2 * k + 2 > size_cap:
        raise SizeCapExceeded(f"{2 * k + 2} pseudo-vertices exceed the cap {size_cap}")
    return triangle_expansion(mobius_ladder(k + 1), path_lengths)


def random_cubic(n: int, seed: int) -> MultiGraph:
    """Random simple cubic 3-edge-connected graph on ``n`` vertices.

    Starts from K4 and repeatedly subdivides two distinct edges and joins the
    two new vertices; every result is re-checked.
    """
    if n < 4 or n % 2:
        raise PreconditionViolation("n must be even and at least 4")
    rng = random.Random(seed)
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    size = 4
    while size < n:
        i, j = sorted(rng.sample(range(len(pairs)), 2))
        (a, b), (c, d) = pairs[i], pairs[j]
        s, t = size, size + 1
        rest = [p for idx, p in enumerate(pairs) if idx not in (i, j)]
        candidate = rest + [(a, s), (s, b), (c, t), (t, d), (s, t)]
        g = MultiGraph.from_pairs([(min(p), max(p)) for p in candidate], range(size + 2))
        if g.is_simple() and is_three_edge_connected(g):
            pairs, size = candidate, size + 2
    pairs = sorted((min(p), max(p)) for p in pairs)
    return MultiGraph.from_pairs(pairs, range(n))


def random_ht(n: int, seed: int, max_path_length: int = 1) -> FractionalSolution:
    rng = random.Random(seed ^ 0x5EED)
    g = random_cubic(n, seed)
    lengths = {e: rng.randint(1, max_path_length) for e in g.edge_ids}
    return triangle_expansion(g, lengths)


def two_cut_join(xa: FractionalSolution, xb: FractionalSolution, ea: EdgeId, eb: EdgeId) -> FractionalSolution:
    """Disjoint union of two solutions with 1-edges ``ea = hx`` and ``eb = ik``
    swapped for ``hi`` and ``xk``; the two new edges form a 2-edge cut."""
    for x, e in ((xa, ea), (xb, eb)):
        if x.value[e] != 1:
            raise PreconditionViolation(f"edge {e} is not a 1-edge")
    shift = xa.graph.n
    h, xv = xa.graph.edge(ea).u, xa.graph.edge(ea).v
    i, k = xb.graph.edge(eb).u + shift, xb.graph.edge(eb).v + shift
    pairs = []
    values = []
    for e in xa.graph.edges:
        if e.id != ea:
            pairs.append((e.u, e.v))
            values.append(xa.value[e.id])
    for e in xb.graph.edges:
        if e.id != eb:
            pairs.append((e.u + shift, e.v + shift))
            values.append(xb.value[e.id])
    pairs += [(h, i), (xv, k)]
    values += [1, 1]
    g = MultiGraph.from_pairs(pairs, range(shift + xb.graph.n))
    return FractionalSolution(g, dict(enumerate(values)))


# -- specs -------------------------------------------------------------------------

KINDS = ("named-cubic", "triangle-expansion", "chained-gadgets", "random-ht")


@dataclass(frozen=True)
class InstanceSpec:
    kind: str
    base: str = "K4"
    path_lengths: tuple[int, ...] = (1,)
    k: int = 1
    n: int = 6
    seed: int = 0

    @classmethod
    def from_config(cls, cfg: Mapping[str, str]) -> InstanceSpec:
        unknown = set(cfg) - {"kind", "base", "path_lengths", "k", "n", "seed"}
        if unknown:
            raise ParseError(f"unknown config keys: {', '.join(sorted(unknown))}")
        kw: dict = {}
        try:
            if "kind" in cfg:
                kw["kind"] = cfg["kind"]
            if "base" in cfg:
                kw["base"] = cfg["base"]
            if "path_lengths" in cfg:
                kw["path_lengths"] = tuple(int(t) for t in cfg["path_lengths"].replace(",", " ").split())
            for key in ("k", "n", "seed"):
                if key in cfg:
                    kw[key] = int(cfg[key])
        except ValueError as exc:
            raise ParseError(f"bad config value: {exc}") from None
        if "kind" not in kw:
            raise ParseError("config needs a 'kind' key")
        return cls(**kw)


def generate(spec: InstanceSpec) -> MultiGraph | FractionalSolution:
    if spec.kind == "named-cubic":
        return named_cubic(spec.base)
    if spec.kind == "triangle-expansion":
        return triangle_expansion(named_cubic(spec.base), spec.path_lengths)
    if spec.kind == "chained-gadgets":
        return chained_gadgets(spec.k, spec.path_lengths)
    if spec.kind == "random-ht":
        return random_ht(spec.n, spec.seed, max(spec.path_lengths))
    raise PreconditionViolation(f"unknown instance kind {spec.kind!r}; choose from {', '.join(KINDS)}")
