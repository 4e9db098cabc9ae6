from fractions import Fraction

import pytest

from twoec.certificate import TargetKind
from twoec.errors import NotHalfTriangle, PreconditionViolation
from twoec.graph import CutKind, FractionalSolution, find_cuts
from twoec.halftri import validate_half_triangle
from twoec.ht import HTTrace, choose_p, decompose_ht, decompose_q, decompose_sixfifth, q_goal
from twoec.instances import named_cubic, triangle_expansion, two_cut_join, two_triangles
from twoec.verifier import verify

F = Fraction


def _joined():
    a = triangle_expansion(named_cubic("prism"))
    b = triangle_expansion(named_cubic("K4"))
    return two_cut_join(a, b, a.one_edges()[0], b.one_edges()[0])


def _check_q(cert):
    x = FractionalSolution(cert.universe, cert.values)
    h = validate_half_triangle(x)
    occ = cert.combination().occurrences()
    assert occ == q_goal(h, cert.p_edge)
    for _, t in cert.terms:
        d = dict(t)
        assert all(d.get(e, 0) <= 1 for e in h.half_edges)
        assert d.get(cert.p_edge, 0) <= 1
        assert all(d.get(e, 0) in (1, 2) for e in h.one_edges if e != cert.p_edge)
    assert verify(cert).accepted


def test_choose_p_two_triangles_least_id():
    h = validate_half_triangle(two_triangles())
    assert choose_p(h) == 6


def test_choose_p_avoids_two_cuts():
    h = validate_half_triangle(_joined())
    in_cut = {e for c in find_cuts(h.simple_form.graph, CutKind.TWO_EDGE) for e in c.edges}
    assert in_cut
    assert choose_p(h) not in in_cut


def test_p_in_two_cut_rejected():
    x = _joined()
    h = validate_half_triangle(x)
    cut = find_cuts(h.simple_form.graph, CutKind.TWO_EDGE)[0]
    with pytest.raises(PreconditionViolation):
        decompose_ht(h, cut.edges[0])


def test_p_must_be_one_edge():
    h = validate_half_triangle(two_triangles())
    with pytest.raises(PreconditionViolation):
        decompose_ht(h, 0)


def test_two_triangles_has_doubled_terms():
    cert = decompose_q(two_triangles())
    assert cert.trace == {"Q.base_two_triangles": 1}
    assert any(k == 2 for _, t in cert.terms for _, k in t)
    _check_q(cert)


@pytest.mark.parametrize("p", [12, 13, 17])
def test_k4_expansion_any_p(p):
    cert = decompose_q(triangle_expansion(named_cubic("K4")), p=p)
    assert cert.p_edge == p
    assert cert.combination().occurrences()[p] == F(4, 5)
    _check_q(cert)


def test_joined_instance_uses_cut_glue():
    trace = HTTrace()
    cert = decompose_q(_joined(), trace=trace)
    assert trace.branches["cut2_glue"] == 1
    _check_q(cert)
    # the two edges of the 2-edge cut end at 6/5
    h = validate_half_triangle(FractionalSolution(cert.universe, cert.values))
    occ = cert.combination().occurrences()
    for c in find_cuts(h.simple_form.graph, CutKind.TWO_EDGE):
        for e in c.edges:
            assert occ[e] == F(6, 5)


def test_double_join():
    inner = _joined()
    outer = triangle_expansion(named_cubic("K3_3"))
    x = two_cut_join(inner, outer, choose_p(validate_half_triangle(inner)), outer.one_edges()[0])
    trace = HTTrace()
    cert = decompose_q(x, trace=trace)
    assert trace.branches["cut2_glue"] >= 2
    _check_q(cert)


def test_sixfifth_prism_expansion_long_paths():
    x = triangle_expansion(named_cubic("prism"), (1, 2, 3))
    cert = decompose_sixfifth(x)
    assert cert.kind is TargetKind.SIXFIFTH
    occ = cert.combination().occurrences()
    for e in x.graph.edge_ids:
        assert occ[e] == F(6, 5) * x.value[e]
    assert verify(cert).accepted


def test_sixfifth_two_triangles():
    x = two_triangles()
    cert = decompose_sixfifth(x)
    occ = cert.combination().occurrences()
    assert all(occ[e] == F(3, 5) for e in x.half_edges())
    assert all(occ[e] == F(6, 5) for e in x.one_edges())
    assert cert.combination().mass == 1


def test_sixfifth_user_p_on_long_path():
    x = two_triangles((2, 2, 2))
    h = validate_half_triangle(x)
    path = h.one_paths[1]
    cert = decompose_sixfifth(x, p=path.edges[-1])
    assert cert.p_edge == path.id
    assert verify(cert).accepted


def test_sixfifth_rejects_non_half_triangle():
    g = named_cubic("K4")
    with pytest.raises(NotHalfTriangle):
        decompose_sixfifth(FractionalSolution(g, {e: F(2, 3) for e in g.edge_ids}))


def test_q_needs_simple_paths():
    with pytest.raises(PreconditionViolation):
        decompose_q(two_triangles((1, 2, 1)))
