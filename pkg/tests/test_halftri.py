from fractions import Fraction

import pytest

from twoec.errors import NotHalfTriangle, SizeCapExceeded
from twoec.graph import FractionalSolution, MultiGraph
from twoec.halftri import cut_feasibility, cut_value, validate_half_triangle
from twoec.instances import named_cubic, triangle_expansion, two_triangles

H = Fraction(1, 2)


def prism_solution(joining=(1, 1, 1)):
    g = named_cubic("prism")
    return FractionalSolution(g, {e: H if e < 6 else Fraction(joining[e - 6]) for e in g.edge_ids})


def test_prism_structure():
    h = validate_half_triangle(prism_solution())
    assert h.triangles == ((0, 1, 2), (3, 4, 5))
    assert len(h.one_paths) == 3 and all(len(p) == 1 for p in h.one_paths)
    assert h.is_simple and h.shrunken.n == 2


def test_joining_edge_at_half_breaks_degree_tightness():
    with pytest.raises(NotHalfTriangle) as err:
        validate_half_triangle(prism_solution((1, 1, H)))
    assert err.value.clause == "not-degree-tight"


def test_not_half_integer():
    g = named_cubic("prism")
    x = FractionalSolution(g, {e: Fraction(1, 3) if e == 0 else H if e < 6 else 1 for e in g.edge_ids})
    with pytest.raises(NotHalfTriangle) as err:
        validate_half_triangle(x)
    assert err.value.clause == "not-half-integer"


def test_half_cycle_is_not_a_triangle():
    g = MultiGraph.from_pairs([(i, (i + 1) % 4) for i in range(4)])
    x = FractionalSolution(g, {e: 1 for e in g.edge_ids})
    with pytest.raises(NotHalfTriangle) as err:
        validate_half_triangle(x)
    assert err.value.clause == "path-structure-broken"
    six = MultiGraph.from_pairs([(i, (i + 1) % 6) for i in range(6)] + [(0, 3)])
    bad = FractionalSolution(six, {e: H if e < 6 else Fraction(1) for e in six.edge_ids})
    with pytest.raises(NotHalfTriangle):
        validate_half_triangle(bad)


def test_k4_expansion_structure():
    x = triangle_expansion(named_cubic("K4"))
    h = validate_half_triangle(x)
    assert x.graph.n == 12
    assert len(h.triangles) == 4 and len(h.one_paths) == 6
    assert len(x.half_edges()) == 12 and len(x.one_edges()) == 6


def test_long_paths_have_simple_form():
    x = two_triangles((1, 2, 3))
    h = validate_half_triangle(x)
    assert sorted(len(p) for p in h.one_paths) == [1, 2, 3]
    assert not h.is_simple
    simple = h.simple_form
    assert simple.graph.n == 6 and simple.graph.m == 9
    assert validate_half_triangle(simple).is_simple


def test_cut_feasibility_prism():
    assert cut_feasibility(prism_solution())


def test_cut_feasibility_half_six_cycle():
    g = MultiGraph.from_pairs([(i, (i + 1) % 6) for i in range(6)])
    x = FractionalSolution(g, {e: H for e in g.edge_ids})
    assert not cut_feasibility(x)


def test_single_vertex_cut_is_two():
    x = triangle_expansion(named_cubic("K4"))
    for w in x.graph.vertices:
        assert cut_value(x, {w}) == 2


def test_cut_feasibility_cap():
    with pytest.raises(SizeCapExceeded):
        cut_feasibility(triangle_expansion(named_cubic("cube")))
