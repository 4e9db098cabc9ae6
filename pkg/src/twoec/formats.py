"""Plain-text graph, cost and config formats.

Graph files::

    # comment
    n m
    u v value        (m lines, 0-based vertices, value like 1 or 1/2)

Edge ids are the 0-based positions of the edge lines.  Cost files hold lines
``u v cost``; config files hold ``key = value`` lines.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .errors import ParseError, PreconditionViolation
from .graph import Edge, EdgeId, FractionalSolution, MultiGraph


def parse_rational(token: str) -> Fraction:
    try:
        return Fraction(token.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational literal: {token!r}") from None


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _content_lines(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line.split()))
    return out


def parse_graph(text: str) -> tuple[MultiGraph, dict[EdgeId, Fraction]]:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty graph file")
    (lineno, header), body = lines[0], lines[1:]
    if len(header) != 2:
        raise ParseError(f"line {lineno}: header must be 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise ParseError(f"line {lineno}: header must be two integers") from None
    if n < 1 or m < 0:
        raise ParseError(f"line {lineno}: bad sizes n={n} m={m}")
    if len(body) != m:
        raise ParseError(f"header announces {m} edges, found {len(body)} edge lines")
    edges = []
    values = {}
    for i, (lineno, fields) in enumerate(body):
        if len(fields) != 3:
            raise ParseError(f"line {lineno}: expected 'u v value'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: vertices must be integers") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"line {lineno}: vertex out of range 0..{n - 1}")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop")
        edges.append(Edge(i, u, v))
        values[i] = parse_rational(fields[2])
    return MultiGraph(range(n), edges), values


def format_graph(g: MultiGraph, values: Mapping[EdgeId, Fraction] | None = None) -> str:
    if g.vertices != tuple(range(g.n)):
        raise ValueError("graph text needs vertices labelled 0..n-1")
    if g.edge_ids != tuple(range(g.m)):
        raise ValueError("graph text needs edge ids 0..m-1")
    lines = [f"{g.n} {g.m}"]
    for e in g.edges:
        val = Fraction(1) if values is None else values[e.id]
        lines.append(f"{e.u} {e.v} {format_rational(val)}")
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> FractionalSolution:
    g, values = parse_graph(text)
    try:
        return FractionalSolution(g, values)
    except (PreconditionViolation, ValueError) as exc:
        raise ParseError(str(exc)) from exc


def format_solution(x: FractionalSolution) -> str:
    return format_graph(x.graph, x.value)


def parse_costs(text: str, g: MultiGraph, missing_zero: bool = False) -> dict[EdgeId, Fraction]:
    """Costs by endpoint pair; a pair's cost applies to all its parallel edges."""
    by_pair: dict[tuple[int, int], Fraction] = {}
    for lineno, fields in _content_lines(text):
        if len(fields) != 3:
            raise ParseError(f"line {lineno}: expected 'u v cost'")
        try:
            u, v = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"line {lineno}: vertices must be integers") from None
        cost = parse_rational(fields[2])
        if cost < 0:
            raise ParseError(f"line {lineno}: negative cost {cost}")
        by_pair[(min(u, v), max(u, v))] = cost
    costs = {}
    for e in g.edges:
        if e.ends in by_pair:
            costs[e.id] = by_pair[e.ends]
        elif missing_zero:
            costs[e.id] = Fraction(0)
        else:
            raise ParseError(f"no cost given for edge {e.u} {e.v}")
    return costs


def format_costs(g: MultiGraph, costs: Mapping[EdgeId, Fraction]) -> str:
    seen = set()
    lines = []
    for e in g.edges:
        if e.ends in seen:
            continue
        seen.add(e.ends)
        lines.append(f"{e.ends[0]} {e.ends[1]} {format_rational(costs[e.id])}")
    return "\n".join(lines) + "\n"


def parse_config(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(f"line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key] = value
    return out
