import pytest

from twoec.errors import ParseError, PreconditionViolation
from twoec.formats import parse_config
from twoec.graph import CutKind, MultiGraph, find_cuts, is_three_edge_connected
from twoec.halftri import cut_feasibility, validate_half_triangle
from twoec.instances import (
    InstanceSpec,
    chained_gadgets,
    generate,
    named_cubic,
    random_cubic,
    random_ht,
    triangle_expansion,
    two_triangles,
)


@pytest.mark.parametrize(
    "name,n,m,cuts", [("K4", 4, 6, 0), ("K3_3", 6, 9, 0), ("prism", 6, 9, 1), ("cube", 8, 12, None), ("Petersen", 10, 15, 0)]
)
def test_named_cubic(name, n, m, cuts):
    g = named_cubic(name)
    assert (g.n, g.m) == (n, m)
    assert g.is_simple() and g.is_cubic()
    if cuts is not None:
        assert len(find_cuts(g, CutKind.PROPER_THREE_EDGE)) == cuts


def test_unknown_name():
    with pytest.raises(PreconditionViolation):
        named_cubic("dodecahedron")


def test_k4_expansion_counts():
    x = triangle_expansion(named_cubic("K4"))
    assert x.graph.n == 12 and len(x.half_edges()) == 12 and len(x.one_edges()) == 6
    assert x.is_degree_tight()


def test_prism_expansion_path_lengths():
    x = triangle_expansion(named_cubic("prism"), (1, 2, 3))
    lengths = [1, 2, 3] * 3
    assert len(x.one_edges()) == sum(lengths)
    assert sorted(len(p) for p in validate_half_triangle(x).one_paths) == sorted(lengths)


def test_expansion_needs_cubic():
    with pytest.raises(PreconditionViolation):
        triangle_expansion(MultiGraph.from_pairs([(0, 1), (1, 2), (0, 2)]))


def test_chained_gadgets_growth():
    sizes = []
    for k in (1, 2, 3, 4, 5):
        x = chained_gadgets(k)
        h = validate_half_triangle(x)
        assert h.shrunken.n == 2 * k + 2
        sizes.append(x.graph.n)
    assert [b - a for a, b in zip(sizes, sizes[1:])] == [6] * 4


def test_generated_instances_validate():
    small = [two_triangles((1, 2, 3)), chained_gadgets(1), random_ht(4, 0, 2), triangle_expansion(named_cubic("K4"))]
    for x in small:
        validate_half_triangle(x)
        assert cut_feasibility(x)
    for x in (chained_gadgets(3, (1, 2)), random_ht(10, 5, 3)):
        assert x.is_half_integer() and x.is_degree_tight()
        validate_half_triangle(x)


@pytest.mark.parametrize("seed", range(6))
def test_random_cubic_properties(seed):
    g = random_cubic(12, seed)
    assert g.n == 12 and g.is_simple() and g.is_cubic() and is_three_edge_connected(g)
    assert g == random_cubic(12, seed)


def test_spec_from_config():
    cfg = parse_config("kind = random-ht\nn = 8\nseed = 4  # comment\npath_lengths = 1, 3\n")
    spec = InstanceSpec.from_config(cfg)
    assert spec == InstanceSpec("random-ht", n=8, seed=4, path_lengths=(1, 3))
    assert generate(spec).graph == random_ht(8, 4, 3).graph


def test_spec_errors():
    with pytest.raises(ParseError):
        InstanceSpec.from_config({"kind": "named-cubic", "colour": "red"})
    with pytest.raises(ParseError):
        InstanceSpec.from_config({"n": "8"})
    with pytest.raises(PreconditionViolation):
        generate(InstanceSpec("ladder"))
