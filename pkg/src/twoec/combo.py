"""Exact convex combinations of multi-subgraphs.

A term is a multi-subgraph stored as a sorted tuple of ``(edge id, copies)``
pairs, which makes it hashable and gives a canonical order for free.  All
multipliers are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .errors import DeficitNotCoverable, PatternMassMismatch, PreconditionViolation
from .graph import EdgeId, MultiGraph

Term = tuple[tuple[EdgeId, int], ...]
WeightedTerm = tuple[Fraction, Term]

ZERO = Fraction(0)


def make_term(copies: Mapping[EdgeId, int] | Iterable[tuple[EdgeId, int]]) -> Term:
    items = copies.items() if isinstance(copies, Mapping) else copies
    merged: dict[EdgeId, int] = defaultdict(int)
    for e, k in items:
        merged[e] += k
    return tuple(sorted((e, k) for e, k in merged.items() if k > 0))


def simple_term(edges: Iterable[EdgeId]) -> Term:
    return tuple((e, 1) for e in sorted(set(edges)))


def copies_in(term: Term, e: EdgeId) -> int:
    for f, k in term:
        if f == e:
            return k
    return 0


class Presence(enum.IntEnum):
    ABSENT = 0
    SINGLE = 1
    DOUBLED = 2


PatternKey = tuple[Presence, ...]


def pattern_key(term: Term, boundary: Sequence[EdgeId]) -> PatternKey:
    """Presence mark of each boundary edge, in the order given."""
    d = dict(term)
    return tuple(Presence(min(d.get(e, 0), 2)) for e in boundary)


@dataclass(frozen=True)
class ConvexCombination:
    terms: tuple[WeightedTerm, ...]
    universe: MultiGraph = field(repr=False)
    target: Mapping[EdgeId, Fraction] | None = field(default=None, repr=False)

    def __post_init__(self) -> None:
        terms = tuple((Fraction(lam), t) for lam, t in self.terms)
        object.__setattr__(self, "terms", terms)
        for lam, t in terms:
            if lam <= 0:
                raise PreconditionViolation(f"multiplier {lam} is not positive")
            for e, k in t:
                if e not in self.universe:
                    raise PreconditionViolation(f"term references edge {e} outside the universe")

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def mass(self) -> Fraction:
        return sum((lam for lam, _ in self.terms), ZERO)

    def occurrences(self) -> dict[EdgeId, Fraction]:
        occ = {e: ZERO for e in self.universe.edge_ids}
        for lam, t in self.terms:
            for e, k in t:
                occ[e] += lam * k
        return occ

    def is_finalized(self) -> bool:
        if self.mass != 1:
            return False
        return self.target is None or self.occurrences() == dict(self.target)

    def mismatches(self) -> dict[EdgeId, tuple[Fraction, Fraction]]:
        """Edges whose occurrence differs from the target: ``e -> (got, want)``."""
        if self.target is None:
            return {}
        occ = self.occurrences()
        return {e: (occ[e], self.target[e]) for e in occ if occ[e] != self.target[e]}

    def with_terms(self, terms: Iterable[WeightedTerm]) -> ConvexCombination:
        return replace(self, terms=tuple(terms))


def occurrence(c: ConvexCombination, e: EdgeId) -> Fraction:
    if e not in c.universe:
        raise PreconditionViolation(f"unknown edge id {e}")
    total = ZERO
    for lam, t in c.terms:
        k = copies_in(t, e)
        if k:
            total += lam * k
    return total


def average(cs: Sequence[ConvexCombination], weights: Sequence[Fraction]) -> ConvexCombination:
    """Weighted union of combinations over one universe."""
    if not cs or len(cs) != len(weights):
        raise PreconditionViolation("need one weight per combination")
    weights = [Fraction(w) for w in weights]
    if any(w < 0 for w in weights):
        raise PreconditionViolation("weights must be nonnegative")
    if sum(weights) != 1:
        raise PreconditionViolation(f"weights sum to {sum(weights)}, not 1")
    universe = cs[0].universe
    ids = set(universe.edge_ids)
    if any(set(c.universe.edge_ids) != ids for c in cs):
        raise PreconditionViolation("combinations do not share a universe")
    terms = [(w * lam, t) for c, w in zip(cs, weights) if w for lam, t in c.terms]
    target = None
    if all(c.target is not None for c in cs):
        target = {e: sum((w * c.target[e] for c, w in zip(cs, weights)), ZERO) for e in universe.edge_ids}
    return ConvexCombination(tuple(terms), universe, target)


def pad_edge(c: ConvexCombination, e: EdgeId, target: Fraction, max_copies: int = 1) -> ConvexCombination:
    """Add copies of ``e`` to terms, in term order, until it occurs ``target``.

    A term whose whole multiplier is not needed is split in two and only the
    first part gains the copy.
    """
    target = Fraction(target)
    need = target - occurrence(c, e)
    if need < 0:
        raise PreconditionViolation(f"edge {e} already occurs more than {target}")
    terms = list(c.terms)
    while need > 0:
        progressed = False
        out = []
        for lam, t in terms:
            k = copies_in(t, e)
            if need == 0 or k >= max_copies:
                out.append((lam, t))
                continue
            grown = make_term(dict(t) | {e: k + 1})
            if lam <= need:
                out.append((lam, grown))
                need -= lam
            else:
                out.append((need, grown))
                out.append((lam - need, t))
                need = ZERO
            progressed = True
        terms = out
        if not progressed:
            raise DeficitNotCoverable(f"cannot raise edge {e} to {target} within {max_copies} copies")
    return c.with_terms(terms)


def refine_match(
    a: Sequence[WeightedTerm],
    b: Sequence[WeightedTerm],
    key_a: Callable[[Term], Hashable],
    key_b: Callable[[Term], Hashable] | None = None,
) -> list[tuple[Fraction, Term, Term]]:
    """Pair up terms of ``a`` and ``b`` with equal keys, splitting multipliers.

    Inside each key group both sides are walked in sorted order and the
    smaller remaining mass is cut off each time, so the output has at most
    ``len(a) + len(b)`` entries.
    """
    key_b = key_a if key_b is None else key_b
    groups_a: dict[Hashable, list[WeightedTerm]] = defaultdict(list)
    groups_b: dict[Hashable, list[WeightedTerm]] = defaultdict(list)
    for lam, t in a:
        groups_a[key_a(t)].append((lam, t))
    for lam, t in b:
        groups_b[key_b(t)].append((lam, t))
    for key in set(groups_a) | set(groups_b):
        ma = sum((lam for lam, _ in groups_a.get(key, ())), ZERO)
        mb = sum((lam for lam, _ in groups_b.get(key, ())), ZERO)
        if ma != mb:
            raise PatternMassMismatch(f"pattern {key!r}: mass {ma} on one side, {mb} on the other")

    out = []
    for key in sorted(groups_a, key=repr):
        left = sorted(groups_a[key], key=lambda wt: wt[1])
        right = sorted(groups_b[key], key=lambda wt: wt[1])
        i = j = 0
        ra, rb = left[0][0], right[0][0]
        while i < len(left) and j < len(right):
            piece = min(ra, rb)
            out.append((piece, left[i][1], right[j][1]))
            ra -= piece
            rb -= piece
            if ra == 0:
                i += 1
                if i < len(left):
                    ra = left[i][0]
            if rb == 0:
                j += 1
                if j < len(right):
                    rb = right[j][0]
    return out


def dedupe(c: ConvexCombination) -> ConvexCombination:
    """Merge identical terms and sort canonically."""
    merged: dict[Term, Fraction] = defaultdict(Fraction)
    for lam, t in c.terms:
        merged[t] += lam
    return c.with_terms((merged[t], t) for t in sorted(merged))
