"""Exact convex-combination certificates for 2-edge-connected spanning multi-subgraphs."""

__version__ = "0.1.0"

from .certificate import Certificate, TargetKind, certificate_from_json
from .combo import ConvexCombination, make_term, occurrence
from .cubic import decompose_cubic
from .graph import FractionalSolution, MultiGraph
from .halftri import cut_feasibility, validate_half_triangle
from .ht import decompose_ht, decompose_sixfifth
from .oracle import enumerate_2ecss, find_convex_combination, opt_2ec
from .verifier import verify, verify_cost_bound

__all__ = [
    "Certificate",
    "ConvexCombination",
    "FractionalSolution",
    "MultiGraph",
    "TargetKind",
    "certificate_from_json",
    "cut_feasibility",
    "decompose_cubic",
    "decompose_ht",
    "decompose_sixfifth",
    "enumerate_2ecss",
    "find_convex_combination",
    "make_term",
    "occurrence",
    "opt_2ec",
    "validate_half_triangle",
    "verify",
    "verify_cost_bound",
]
