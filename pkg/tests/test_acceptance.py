"""Acceptance suite: one PASS/FAIL line per criterion.

Run ``pytest tests/test_acceptance.py -s`` to see the report lines; they are
also printed without ``-s``.
"""

from __future__ import annotations

import filecmp
import os
import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

import mutations
import suite
from test_oracle import SMALL, definition_filter
from twoec.certificate import Certificate, TargetKind
from twoec.cli import main as cli_main
from twoec.combo import make_term
from twoec.cubic import CubicTrace, decompose_cubic
from twoec.graph import FractionalSolution
from twoec.halftri import validate_half_triangle
from twoec.ht import decompose_q, q_bounds, q_goal
from twoec.instances import NAMED_CUBIC, named_cubic
from twoec.oracle import enumerate_2ecss, find_convex_combination, opt_2ec_many
from twoec.verifier import verify, verify_cost_bound

F = Fraction
SIX_FIFTHS = F(6, 5)
HERE = Path(__file__).parent


@pytest.fixture
def report(capsys):
    def emit(number: int, ok: bool, summary: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {summary}")
        assert ok, summary

    return emit


def test_criterion_1_cubic_suite(report):
    problems = []
    times = {}
    for name in NAMED_CUBIC:
        g = named_cubic(name)
        start = time.perf_counter()
        combo = decompose_cubic(g)
        cert = Certificate(TargetKind.P, g, {e: F(1) for e in g.edge_ids}, tuple((lam, make_term(t)) for lam, t in combo.terms))
        verdict = verify(cert)
        times[name] = time.perf_counter() - start
        if not verdict.accepted:
            problems.append(f"{name}: {verdict.failures[0]}")
        if any(v != F(4, 5) for v in cert.combination().occurrences().values()):
            problems.append(f"{name}: occurrence not 4/5")
        if any(k != 1 for _, t in cert.terms for _, k in t):
            problems.append(f"{name}: non-simple term")
        if times[name] > 60:
            problems.append(f"{name}: {times[name]:.1f} s > 60 s")
    slowest = max(times, key=times.get)
    report(1, not problems, f"5 cubic graphs at exactly 4/5, slowest {slowest} {times[slowest]:.2f} s" + (f"; {problems}" if problems else ""))


def test_criterion_2_petersen_identities(report):
    checked = 0
    bad = []

    def hook(depth, g, ctx, combo):
        nonlocal checked
        occ = combo.occurrences()
        near = {ctx.au, ctx.ub, ctx.vc, ctx.vd}
        for e in g.edge_ids:
            want = F(2, 5) if e == ctx.uv else F(9, 10) if e in near else F(4, 5)
            if occ[e] != want:
                bad.append((depth, ctx.uv, e, occ[e], want))
        checked += 1

    trace = CubicTrace(on_edge_combination=hook)
    decompose_cubic(named_cubic("Petersen"), trace=trace)
    ok = not bad and checked >= 15
    report(2, ok, f"{checked} per-edge combinations in the Petersen run match 2/5, 9/10 x4, 4/5" + (f"; first mismatch {bad[0]}" if bad else ""))


def test_criterion_3_z_suite(report):
    problems = []
    times = {}
    for name, build in suite.Z_SUITE.items():
        x = build()
        start = time.perf_counter()
        cert = decompose_q(x)
        verdict = verify(cert)
        times[name] = time.perf_counter() - start
        h = validate_half_triangle(x)
        occ = cert.combination().occurrences()
        if occ != q_goal(h, cert.p_edge):
            problems.append(f"{name}: occurrences off target")
        if not verdict.accepted:
            problems.append(f"{name}: {verdict.failures[0]}")
        if times[name] > 120:
            problems.append(f"{name}: {times[name]:.1f} s > 120 s")
    x = suite.Z_SUITE["two-triangles"]()
    h = validate_half_triangle(x)
    base = decompose_q(x)
    found = find_convex_combination(enumerate_2ecss(x.graph, bounds=q_bounds(h, base.p_edge)), q_goal(h, base.p_edge))
    if found is None or found.terms != base.terms:
        problems.append("two-triangle base differs from the oracle combination")
    slowest = max(times, key=times.get)
    report(3, not problems, f"{len(times)} instances at 3/5, 4/5, 6/5 with copy bounds; base equals oracle; slowest {slowest} {times[slowest]:.2f} s" + (f"; {problems}" if problems else ""))


def test_criterion_4_sixfifth_end_to_end(report, sixfifth_certificates, tmp_path):
    problems = []
    lengths = set()
    for name, cert in sixfifth_certificates.items():
        x = FractionalSolution(cert.universe, cert.values)
        lengths |= {len(p) for p in validate_half_triangle(x).one_paths}
        occ = cert.combination().occurrences()
        if any(occ[e] != SIX_FIFTHS * x.value[e] for e in x.graph.edge_ids):
            problems.append(f"{name}: occurrence differs from 6/5 x*")
        path = tmp_path / f"{name}.json"
        path.write_text(cert.to_json())
        if cli_main(["verify", str(path)]) != 0:
            problems.append(f"{name}: verify exit code nonzero")
    enough = len(sixfifth_certificates) >= 10 and lengths >= {1, 2, 3}
    report(4, enough and not problems, f"{len(sixfifth_certificates)} instances, path lengths {sorted(lengths)}, all exactly 6/5 x*, verify exit 0" + (f"; {problems}" if problems else ""))


def _random_costs(g, rng):
    return {e: F(rng.randint(0, 50), rng.randint(1, 12)) for e in g.edge_ids}


def test_criterion_5_cost_bound(report, sixfifth_certificates):
    rng = random.Random(2024)
    problems = []
    opt_checked = 0
    for name, cert in sixfifth_certificates.items():
        g = cert.universe
        vectors = [_random_costs(g, rng) for _ in range(100)]
        for c in vectors:
            ok, _ = verify_cost_bound(cert, c)
            if not ok:
                problems.append(f"{name}: no term within 6/5 c.x")
                break
        if g.m <= 16:
            opts = opt_2ec_many(g, vectors)
            for c, opt in zip(vectors, opts):
                lp = sum((c[e] * cert.values[e] for e in g.edge_ids), F(0))
                if opt > SIX_FIFTHS * lp:
                    problems.append(f"{name}: OPT {opt} > 6/5 * {lp}")
                    break
            opt_checked += 1
    ok = not problems and opt_checked >= 1
    report(5, ok, f"100 cost vectors x {len(sixfifth_certificates)} instances; OPT <= 6/5 c.x on {opt_checked} instances with <= 16 edges" + (f"; {problems}" if problems else ""))


def test_criterion_6_oracle_cross_checks(report, sixfifth_certificates):
    problems = []
    for name, (g, cap) in SMALL.items():
        if list(enumerate_2ecss(g, max_copies=cap)) != definition_filter(g, cap):
            problems.append(f"enumeration disagrees on {name}")
    members = 0
    for name, cert in sixfifth_certificates.items():
        if cert.universe.m > 16:
            continue
        pool = enumerate_2ecss(cert.universe, max_copies=2)
        for _, t in cert.terms:
            if t not in pool:
                problems.append(f"{name}: term {t} not in pool")
            members += 1
    g = named_cubic("K4")
    combo = find_convex_combination(enumerate_2ecss(g, max_copies=1), {e: F(4, 5) for e in g.edge_ids})
    if combo is None:
        problems.append("K4 uniform 4/5 infeasible")
    elif not verify(Certificate(TargetKind.P, g, {e: F(1) for e in g.edge_ids}, combo.terms)).accepted:
        problems.append("K4 oracle combination rejected")
    report(6, not problems and members > 0, f"{len(SMALL)} graphs enumerate as defined; {members} certificate terms found in pools; K4 4/5 feasible and clean" + (f"; {problems}" if problems else ""))


def test_criterion_7_mutation_rejection(report, certificates):
    certs = [certificates[k] for k in sorted(certificates)]
    rates = {}
    for seed, (name, mutate) in enumerate(sorted(mutations.CLASSES.items())):
        rejected = 0
        for mutant, clause in mutations.mutants(certs, mutate, count=25, seed=seed):
            verdict = verify(mutant)
            rejected += (not verdict.accepted) and clause in verdict.clauses
        rates[name] = rejected
    ok = all(v == 25 for v in rates.values())
    report(7, ok, "rejected " + ", ".join(f"{k} {v}/25" for k, v in rates.items()))


def test_criterion_8_determinism(report, tmp_path):
    dirs = []
    for seed in ("1", "12345"):
        out = tmp_path / f"run-{seed}"
        env = dict(os.environ, PYTHONHASHSEED=seed)
        subprocess.run([sys.executable, str(HERE / "suite.py"), str(out)], check=True, env=env)
        dirs.append(out)
    names = sorted(p.name for p in dirs[0].iterdir())
    same_names = names == sorted(p.name for p in dirs[1].iterdir())
    match, mismatch, errors = filecmp.cmpfiles(dirs[0], dirs[1], names, shallow=False)
    ok = same_names and not mismatch and not errors and len(match) == len(names) > 0
    report(8, ok, f"{len(match)}/{len(names)} certificate files byte-identical across two runs")
