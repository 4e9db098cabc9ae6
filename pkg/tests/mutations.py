"""Certificate mutants for the rejection suite.

Each mutator takes a certificate and an RNG and returns a broken copy
together with the verifier clause that must flag it.
"""

from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction

from twoec.certificate import Certificate
from twoec.combo import make_term
from twoec.verifier import copy_range

PERTURBATION = Fraction(1, 10**6)


def _set_term(cert: Certificate, i: int, lam: Fraction, term) -> Certificate:
    terms = list(cert.terms)
    terms[i] = (lam, term)
    return replace(cert, terms=tuple(terms))


def multiplier_sum(cert: Certificate, rng: random.Random):
    i = rng.randrange(len(cert.terms))
    lam, t = cert.terms[i]
    delta = Fraction(rng.randint(1, 99), rng.randint(100, 10_000))
    new = lam - delta if lam > delta and rng.random() < 0.5 else lam + delta
    return _set_term(cert, i, new, t), "multiplier-sum"


def bridge(cert: Certificate, rng: random.Random):
    """Strip all but one edge at some vertex of one term, leaving a pendant edge."""
    g = cert.universe
    i = rng.randrange(len(cert.terms))
    lam, t = cert.terms[i]
    d = dict(t)
    w = rng.choice(g.vertices)
    at_w = sorted(e for e in g.incident(w) if e in d)
    keep = rng.choice(at_w)
    for e in at_w:
        if e != keep:
            del d[e]
    d[keep] = 1
    return _set_term(cert, i, lam, make_term(d)), "two-edge-connectivity"


def copy_bound(cert: Certificate, rng: random.Random):
    i = rng.randrange(len(cert.terms))
    lam, t = cert.terms[i]
    e = rng.choice(cert.universe.edge_ids)
    d = dict(t)
    d[e] = copy_range(cert, e)[1] + 1
    return _set_term(cert, i, lam, make_term(d)), "copy-bound"


def occurrence(cert: Certificate, rng: random.Random):
    """Move 1/10^6 of mass between two distinct terms; the sum stays 1."""
    big = [k for k, (lam, _) in enumerate(cert.terms) if lam > PERTURBATION]
    i = rng.choice(big)
    j = rng.choice([k for k in range(len(cert.terms)) if k != i])
    terms = list(cert.terms)
    terms[i] = (terms[i][0] - PERTURBATION, terms[i][1])
    terms[j] = (terms[j][0] + PERTURBATION, terms[j][1])
    return replace(cert, terms=tuple(terms)), "occurrence"


CLASSES = {
    "multiplier-sum": multiplier_sum,
    "bridge-introduction": bridge,
    "copy-bound-violation": copy_bound,
    "occurrence-perturbation": occurrence,
}


def mutants(certs: list[Certificate], mutate, count: int = 25, seed: int = 0):
    rng = random.Random(seed)
    for k in range(count):
        yield mutate(certs[k % len(certs)], rng)
