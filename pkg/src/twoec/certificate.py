"""Serializable certificates.

A certificate is a JSON document::

    {"version": 1, "target_kind": "P" | "Q" | "sixfifth",
     "instance_hash": "sha256:...", "p_edge": id or null,
     "universe": "<graph text>",
     "terms": [{"multiplier": "p/q", "edges": [[edge id, copies], ...]}, ...],
     "trace": {...}, "manifest": {...}}

Edge ids index the edge lines of the universe graph text.  The target vector
is implied by the kind: 4/5 everywhere (P); 3/5 on half-edges, 4/5 on
``p_edge``, 6/5 on other 1-edges (Q); 6/5 times the universe values
(sixfifth).
"""

from __future__ import annotations

import enum
import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .combo import ConvexCombination, Term, make_term
from .errors import MalformedCertificate, ParseError
from .formats import format_graph, format_rational, parse_graph, parse_rational
from .graph import EdgeId, MultiGraph

VERSION = 1


class TargetKind(str, enum.Enum):
    P = "P"
    Q = "Q"
    SIXFIFTH = "sixfifth"


@dataclass(frozen=True)
class Certificate:
    kind: TargetKind
    universe: MultiGraph
    values: Mapping[EdgeId, Fraction]
    terms: tuple[tuple[Fraction, Term], ...]
    p_edge: EdgeId | None = None
    trace: Mapping[str, Any] = field(default_factory=dict)
    manifest: Mapping[str, Any] = field(default_factory=dict)

    @property
    def universe_text(self) -> str:
        return format_graph(self.universe, self.values)

    @property
    def instance_hash(self) -> str:
        return "sha256:" + hashlib.sha256(self.universe_text.encode()).hexdigest()

    def target(self) -> dict[EdgeId, Fraction]:
        if self.kind is TargetKind.P:
            return {e: Fraction(4, 5) for e in self.universe.edge_ids}
        if self.kind is TargetKind.SIXFIFTH:
            return {e: Fraction(6, 5) * self.values[e] for e in self.universe.edge_ids}
        out = {}
        for e in self.universe.edge_ids:
            if self.values[e] == Fraction(1, 2):
                out[e] = Fraction(3, 5)
            elif e == self.p_edge:
                out[e] = Fraction(4, 5)
            else:
                out[e] = Fraction(6, 5)
        return out

    def combination(self) -> ConvexCombination:
        return ConvexCombination(self.terms, self.universe, self.target())

    def to_json(self) -> str:
        doc = {
            "version": VERSION,
            "target_kind": self.kind.value,
            "instance_hash": self.instance_hash,
            "p_edge": self.p_edge,
            "universe": self.universe_text,
            "trace": dict(self.trace),
            "manifest": dict(self.manifest),
        }
        # one term per line keeps large certificates diffable
        terms = [
            json.dumps({"edges": [[e, k] for e, k in t], "multiplier": format_rational(lam)}, separators=(",", ":"))
            for lam, t in self.terms
        ]
        head = json.dumps(doc, indent=1, sort_keys=True)
        body = ",\n  ".join(terms)
        return head[:-2] + ',\n "terms": [\n  ' + body + "\n ]\n}\n"


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise MalformedCertificate(msg)


def certificate_from_json(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"not JSON: {exc}") from None
    _require(isinstance(doc, dict), "top level must be an object")
    for key in ("version", "target_kind", "universe", "terms"):
        _require(key in doc, f"missing field {key!r}")
    _require(doc["version"] == VERSION, f"unsupported version {doc['version']!r}")
    try:
        kind = TargetKind(doc["target_kind"])
    except ValueError:
        raise MalformedCertificate(f"unknown target kind {doc['target_kind']!r}") from None
    _require(isinstance(doc["universe"], str), "universe must be graph text")
    try:
        universe, values = parse_graph(doc["universe"])
    except ParseError as exc:
        raise MalformedCertificate(f"universe: {exc}") from None
    p_edge = doc.get("p_edge")
    _require(p_edge is None or (isinstance(p_edge, int) and not isinstance(p_edge, bool)), "p_edge must be an integer")
    _require(isinstance(doc["terms"], list), "terms must be a list")
    terms = []
    for i, entry in enumerate(doc["terms"]):
        _require(isinstance(entry, dict) and "multiplier" in entry and "edges" in entry, f"term {i} is malformed")
        _require(isinstance(entry["multiplier"], str), f"term {i}: multiplier must be a string 'p/q'")
        try:
            lam = parse_rational(entry["multiplier"])
        except ParseError as exc:
            raise MalformedCertificate(f"term {i}: {exc}") from None
        edges = entry["edges"]
        _require(isinstance(edges, list), f"term {i}: edges must be a list")
        pairs = []
        for pair in edges:
            _require(
                isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, int) and not isinstance(v, bool) for v in pair),
                f"term {i}: edge entries must be [edge id, copies]",
            )
            pairs.append((pair[0], pair[1]))
        terms.append((lam, tuple(sorted(pairs))))
    return Certificate(
        kind=kind,
        universe=universe,
        values=values,
        terms=tuple(terms),
        p_edge=p_edge,
        trace=doc.get("trace", {}),
        manifest=doc.get("manifest", {}),
    )


def certificate_from_combination(
    c: ConvexCombination,
    kind: TargetKind,
    values: Mapping[EdgeId, Fraction] | None = None,
    p_edge: EdgeId | None = None,
    trace: Mapping[str, Any] | None = None,
) -> Certificate:
    if values is None:
        values = {e: Fraction(1) for e in c.universe.edge_ids}
    terms = tuple((lam, make_term(t)) for lam, t in c.terms)
    return Certificate(kind, c.universe, dict(values), terms, p_edge, dict(trace or {}))
