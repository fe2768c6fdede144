import pytest
from hypothesis import given, settings, strategies as st

from vbshadow import (EdgeMultiplicity, MalformedCode, NonPlanar, OrientationConflict, add_kinks,
                      format_diagram, parse_diagram, reverse_orientation)
from vbshadow.diagram import braid_closure

VHOPF = "X+ 1 4 2 3 / V 2 4 1 3"
HOPF = "X+ 1 3 2 4 / X+ 3 1 4 2"
KINK = "X+ 2 2 1 1"


def test_free_loop():
    d = parse_diagram("O 1")
    assert d.n_components == 1 and d.nodes == () and len(d.regions) == 2


def test_virtual_hopf():
    d = parse_diagram(VHOPF)
    assert d.n_components == 2
    assert d.writhe_vector() == (0, 0)
    assert len(d.regions) == 4


def test_torus_code_is_not_planar():
    # both strands of the virtual crossing meet the classical one on the same side
    with pytest.raises(NonPlanar):
        parse_diagram("X- 1 3 2 4 / V 2 4 1 3").regions


def test_head_twice():
    with pytest.raises(EdgeMultiplicity) as e:
        parse_diagram("X+ 1 3 2 4 / X+ 4 1 3 2")
    assert e.value.edge == 3


def test_edge_three_times():
    with pytest.raises(EdgeMultiplicity):
        parse_diagram("X+ 1 2 3 4 / V 1 2 3 4 / O 5 / T 1 5")


def test_virtual_direction_conflict():
    with pytest.raises((OrientationConflict, EdgeMultiplicity)):
        parse_diagram("X+ 5 6 7 8 / V 8 6 5 7")


@pytest.mark.parametrize("text", ["X+ 1 2 3", "Q 1 2 3 4", "X+ a b c d", "O 1 2", "link comps=2\nO 1"])
def test_malformed(text):
    with pytest.raises(MalformedCode):
        parse_diagram(text)


def test_header_checked():
    with pytest.raises(MalformedCode):
        parse_diagram("link components=2\nO 1")
    assert parse_diagram("link components=2\n# comment\nO 1\nO 2").n_components == 2


def test_writhe():
    assert parse_diagram(HOPF).writhe_vector() == (0, 0)
    assert parse_diagram(KINK).writhe_vector() == (1,)
    assert parse_diagram("X- 1 2 2 1").writhe_vector() == (-1,)


def test_add_kinks_vhopf():
    d = add_kinks(parse_diagram(VHOPF), (1, 0))
    assert len(d.edges) == 6
    assert sorted(n.kind for n in d.nodes) == ["V", "X+", "X+"]
    assert d.writhe_vector() == (1, 0)
    assert add_kinks(parse_diagram(VHOPF), (0, 0)) == parse_diagram(VHOPF)


def test_add_kinks_keeps_numbering():
    d = parse_diagram(VHOPF)
    k = d.add_kinks((2, 1))
    assert set(d.edges) <= set(k.edges)
    assert min(set(k.edges) - set(d.edges)) > max(d.edges)


def test_curled_unknot():
    d = add_kinks(parse_diagram("O 1"), (2,))
    assert d.writhe_vector() == (2,)
    assert len(d.regions) == 4
    assert len(parse_diagram(KINK).regions) == 3


def test_reverse():
    loop = parse_diagram("O 1")
    assert reverse_orientation(loop) == loop
    k = parse_diagram(KINK)
    assert reverse_orientation(k).writhe_vector() == (1,)
    for text in (VHOPF, HOPF, "X- 1 4 2 3 / X- 3 2 4 1", "T 1 2 / T 2 1"):
        d = parse_diagram(text)
        assert reverse_orientation(reverse_orientation(d)) == d
        assert reverse_orientation(d).writhe_vector() == d.writhe_vector()


def test_reverse_components_all_is_reverse():
    for text in (VHOPF, HOPF, "X+ 4 6 1 5 / X+ 3 3 4 2 / V 1 6 2 5"):
        d = parse_diagram(text)
        assert d.reverse_components(d.edges) == reverse_orientation(d)


def test_reverse_one_component_flips_linking_signs():
    d = parse_diagram(HOPF).reverse_components([1])
    assert sorted(n.kind for n in d.nodes) == ["X-", "X-"]


def test_twist_bars_do_not_make_faces():
    d = parse_diagram("T 1 2 / T 2 1")
    assert len(d.regions) == 2


def test_print_parse_round_trip():
    for text in (VHOPF, HOPF, KINK, "O 3 / O 1", "T 1 2 / T 2 1"):
        d = parse_diagram(text)
        again = parse_diagram(format_diagram(d))
        assert again == d
        assert again.regions.faces == d.regions.faces


def test_braid_closure():
    assert braid_closure([], 2) == parse_diagram("O 1 / O 2")
    d = braid_closure([("X+", 0), ("V", 0)], 2)
    assert d.n_components == 2 and len(d.regions) == 4
    with pytest.raises(ValueError):
        braid_closure([("X+", 1)], 2)


WORD = st.lists(st.tuples(st.sampled_from(["X+", "X-", "V"]), st.integers(0, 1)), max_size=5)


@settings(max_examples=60, deadline=None)
@given(WORD, st.lists(st.integers(0, 2), min_size=3, max_size=3))
def test_face_counts(word, w):
    d = braid_closure(word, 3)
    w = tuple(w[: d.n_components])
    k = d.add_kinks(w)
    assert k.writhe_vector() == tuple(a + b for a, b in zip(d.writhe_vector(), w))
    for dd in (d, k):
        faces = dd.regions.faces
        assert sum(len(f) for f in faces) == 2 * len(dd.edges)
        darts = [x for f in faces for x in f]
        assert len(darts) == len(set(darts))
        assert reverse_orientation(reverse_orientation(dd)) == dd
