"""Command-line entry point.

Exit codes: 0 success, 1 certificate rejected, 2 parse error or malformed
certificate, 3 structural precondition, 4 size cap, 5 internal invariant.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .certificate import Certificate, TargetKind, certificate_from_json
from .combo import make_term
from .cubic import DEFAULT_SIZE_CAP, decompose_cubic
from .errors import (
    InternalInvariantFailure,
    MalformedCertificate,
    ParseError,
    PreconditionViolation,
    SizeCapExceeded,
    StructureViolation,
    TwoECError,
)
from .formats import (
    format_graph,
    format_rational,
    parse_config,
    parse_costs,
    parse_graph,
    parse_rational,
    parse_solution,
)
from .graph import FractionalSolution, MultiGraph
from .halftri import validate_half_triangle
from .ht import choose_p, decompose_q, decompose_sixfifth, q_bounds, q_goal
from .instances import KINDS, InstanceSpec, generate
from .oracle import enumerate_2ecss, find_convex_combination, opt_2ec_witness, ratio_experiment
from .verifier import verify

EXIT_OK, EXIT_REJECTED, EXIT_PARSE, EXIT_PRECONDITION, EXIT_SIZE_CAP, EXIT_INTERNAL = range(6)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    """Print, or write atomically (temp file in the target directory, then rename)."""
    if out is None:
        sys.stdout.write(text)
        return
    target = Path(out)
    fd, tmp = tempfile.mkstemp(dir=target.parent or Path("."), prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, target)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _sha(text: str) -> str:
    return "sha256:" + hashlib.sha256(text.encode()).hexdigest()


# -- decompose -----------------------------------------------------------------


def _decompose_p(text: str, args) -> Certificate:
    g, _ = parse_graph(text)
    combo = decompose_cubic(g, size_cap=args.size_cap)
    terms = tuple((lam, make_term(t)) for lam, t in combo.terms)
    return Certificate(TargetKind.P, g, {e: Fraction(1) for e in g.edge_ids}, terms)


def _decompose_q(text: str, args) -> Certificate:
    return decompose_q(parse_solution(text), p=args.p_edge, size_cap=args.size_cap)


def _decompose_sixfifth(text: str, args) -> Certificate:
    x = parse_solution(text)
    return decompose_sixfifth(x, p=args.p_edge, size_cap=args.size_cap)


def cmd_decompose(args) -> int:
    text = _read(args.file)
    started = time.perf_counter()
    build = {"P": _decompose_p, "Q": _decompose_q, "sixfifth": _decompose_sixfifth}[args.mode]
    cert = build(text, args)
    # timing goes to stderr only, so certificate bytes stay reproducible
    manifest = {
        "command": "decompose",
        "mode": args.mode,
        "input_hash": _sha(text),
        "size_cap": args.size_cap,
        "seed": args.seed,
        "version": __version__,
    }
    cert = Certificate(cert.kind, cert.universe, cert.values, cert.terms, cert.p_edge, cert.trace, manifest)
    verdict = verify(cert)
    if not verdict.accepted:
        for f in verdict.failures:
            print(f, file=sys.stderr)
        raise CliError(EXIT_INTERNAL, "self-verification failed; no certificate written")
    _emit(cert.to_json(), args.out)
    print(f"{len(cert.terms)} terms, {time.perf_counter() - started:.3f} s", file=sys.stderr)
    return EXIT_OK


# -- verify --------------------------------------------------------------------


def cmd_verify(args) -> int:
    text = _read(args.certificate)
    try:
        cert = certificate_from_json(text)
    except MalformedCertificate as exc:
        print(f"malformed\t{exc}")
        return EXIT_PARSE
    verdict = verify(cert)
    if verdict.accepted:
        print(f"accepted\t{len(cert.terms)} terms")
        return EXIT_OK
    for f in verdict.failures:
        print(f)
    return EXIT_REJECTED


# -- oracle --------------------------------------------------------------------


def _costs(g: MultiGraph, args) -> dict:
    if args.unit:
        return {e: Fraction(1) for e in g.edge_ids}
    if args.costs is None:
        raise CliError(EXIT_PARSE, "give a cost file or --unit")
    return parse_costs(_read(args.costs), g, missing_zero=args.missing_zero)


def _term_text(term) -> str:
    return " ".join(f"{e}" if k == 1 else f"{e}x{k}" for e, k in term)


def cmd_oracle(args) -> int:
    text = _read(args.file)
    lines: list[str] = []
    if args.which == "opt":
        g, _ = parse_graph(text)
        value, witness = opt_2ec_witness(g, _costs(g, args), edge_cap=args.edge_cap)
        lines += [format_rational(value), f"witness\t{_term_text(witness)}"]
    elif args.which == "ratio":
        x = parse_solution(text)
        report = ratio_experiment(x, _costs(x.graph, args), instance_id=args.file, edge_cap=args.edge_cap)
        lines += [
            f"lp_value\t{format_rational(report.lp_value)}",
            f"opt\t{format_rational(report.opt)}",
            f"ratio\t{'undefined' if report.ratio is None else format_rational(report.ratio)}",
            f"witness\t{_term_text(report.opt_witness)}",
            f"note\t{report.note}",
        ]
    else:
        lines += _feasibility(text, args)
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def _feasibility(text: str, args) -> list[str]:
    if (args.target is None) == (args.kind is None):
        raise CliError(EXIT_PARSE, "give exactly one of --target and --kind")
    if args.target is not None:
        g, _ = parse_graph(text)
        target = {e: parse_rational(args.target) for e in g.edge_ids}
        pool = enumerate_2ecss(g, max_copies=args.max_copies, edge_cap=args.edge_cap)
    elif args.kind == "P":
        g, _ = parse_graph(text)
        target = {e: Fraction(4, 5) for e in g.edge_ids}
        pool = enumerate_2ecss(g, max_copies=1, edge_cap=args.edge_cap)
    else:
        x = parse_solution(text)
        h = validate_half_triangle(x)
        g = x.graph
        if args.kind == "Q":
            if not h.is_simple:
                raise PreconditionViolation("kind Q needs every 1-path to be a single edge")
            p = choose_p(h) if args.p_edge is None else args.p_edge
            target, bounds = q_goal(h, p), q_bounds(h, p)
        else:
            target = {e: Fraction(6, 5) * x.value[e] for e in g.edge_ids}
            bounds = {e: (0, 1) if x.value[e] == Fraction(1, 2) else (1, 2) for e in g.edge_ids}
        pool = enumerate_2ecss(g, bounds=bounds, edge_cap=args.edge_cap)
    combo = find_convex_combination(pool, target, column_cap=args.column_cap)
    if combo is None:
        return ["infeasible", f"pool\t{len(pool)}"]
    out = ["feasible", f"pool\t{len(pool)}"]
    out += [f"{format_rational(lam)}\t{_term_text(t)}" for lam, t in combo.terms]
    return out


# -- generate ------------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.config is not None:
        spec = InstanceSpec.from_config(parse_config(_read(args.config)))
    else:
        if args.kind is None:
            raise CliError(EXIT_PARSE, "give --kind or --config")
        lengths = tuple(int(t) for t in args.path_lengths.replace(",", " ").split())
        spec = InstanceSpec(args.kind, args.base, lengths, args.k, args.n, args.seed)
    inst = generate(spec)
    text = format_graph(inst.graph, inst.value) if isinstance(inst, FractionalSolution) else format_graph(inst)
    header = f"# {spec.kind} base={spec.base} path_lengths={','.join(map(str, spec.path_lengths))} k={spec.k} n={spec.n} seed={spec.seed}\n"
    _emit(header + text, args.out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twoec", description="Exact 2EC convex-combination certificates.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decompose", help="build and self-verify a certificate")
    d.add_argument("file", help="graph file (values ignored in mode P)")
    d.add_argument("--mode", choices=("P", "Q", "sixfifth"), required=True)
    d.add_argument("--p-edge", type=int, default=None, help="edge id to use as p")
    d.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP, help="max vertices of a cubic (shrunken) graph")
    d.add_argument("--seed", type=int, default=0, help="recorded in the manifest; decomposition is deterministic")
    d.add_argument("--out", default=None)
    d.add_argument("--format", choices=("text",), default="text")
    d.set_defaults(run=cmd_decompose)

    v = sub.add_parser("verify", help="check a certificate file")
    v.add_argument("certificate")
    v.set_defaults(run=cmd_verify)

    o = sub.add_parser("oracle", help="brute-force OPT, ratio and feasibility")
    o.add_argument("which", choices=("opt", "ratio", "feas"))
    o.add_argument("file")
    o.add_argument("costs", nargs="?", default=None)
    o.add_argument("--unit", action="store_true", help="unit costs instead of a cost file")
    o.add_argument("--missing-zero", action="store_true", help="edges absent from the cost file cost 0")
    o.add_argument("--target", default=None, help="uniform target value for feas")
    o.add_argument("--kind", choices=("P", "Q", "sixfifth"), default=None, help="certificate target for feas")
    o.add_argument("--p-edge", type=int, default=None)
    o.add_argument("--max-copies", type=int, default=1, help="copy cap with --target")
    o.add_argument("--edge-cap", type=int, default=16)
    o.add_argument("--column-cap", type=int, default=5000)
    o.add_argument("--out", default=None)
    o.set_defaults(run=cmd_oracle)

    gen = sub.add_parser("generate", help="write an instance in graph format")
    gen.add_argument("--kind", choices=KINDS, default=None)
    gen.add_argument("--base", default="K4")
    gen.add_argument("--path-lengths", default="1")
    gen.add_argument("--k", type=int, default=1)
    gen.add_argument("--n", type=int, default=6)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--config", default=None, help="key = value file instead of flags")
    gen.add_argument("--out", default=None)
    gen.set_defaults(run=cmd_generate)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeCapExceeded as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_SIZE_CAP
    except (PreconditionViolation, StructureViolation) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (InternalInvariantFailure, TwoECError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
