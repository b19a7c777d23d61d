import pytest
from hypothesis import given, settings, strategies as st

from ihfan.fan import Polytope
from ihfan.hvec import FaceLattice, NotEulerian, compare_ih, g_vector, generalized_h, simplicial_h


@pytest.mark.parametrize("n", range(0, 5))
def test_simplex_is_all_ones(n):
    assert generalized_h(FaceLattice.of_simplex(n)) == (1,) * (n + 1)


@pytest.mark.parametrize("name, h", [
    ("octahedron", (1, 3, 3, 1)), ("unit-cube", (1, 5, 5, 1)), ("pyramid", (1, 2, 2, 1)),
    ("unit-square", (1, 2, 1)), ("segment", (1, 1)), ("7-gon", (1, 5, 1)),
])
def test_polytope_h(polytopes, name, h):
    assert generalized_h(FaceLattice.of_polytope(polytopes(name))) == h


def test_simplicial_h_formula():
    assert simplicial_h([6, 12, 8], 3) == (1, 3, 3, 1)
    assert simplicial_h([4, 3], 2) == (1, 2, 0)  # a path, not a sphere


def test_simplicial_polytopes_agree_with_f_vector(polytopes):
    for name in ("octahedron", "simplex-3", "5-gon"):
        P = polytopes(name)
        h = generalized_h(FaceLattice.of_polytope(P))
        assert h == simplicial_h(P.f_vector(), P.n)


def test_g_vector():
    assert g_vector((1, 5, 5, 1)) == (1, 4)
    assert g_vector((1, 2, 2, 1)) == (1, 1)


def test_non_eulerian_rejected():
    # bottom < a, b < top with an extra middle element c: not Eulerian
    elems = ["0", "a", "b", "c", "1"]
    rank = {"0": 0, "a": 1, "b": 1, "c": 1, "1": 2}
    lat = FaceLattice(elems, rank, lambda x, y: x == y or x == "0" or y == "1")
    assert not lat.is_eulerian()
    with pytest.raises(NotEulerian):
        generalized_h(lat)


@pytest.mark.parametrize("name", ["square-fan", "cube-face-fan", "pyramid-fan", "cube-fan"])
def test_fan_poset_matches_ih(fans, name):
    fan, _ = fans(name)
    assert compare_ih(fan)["match"]


def test_cone_poset_of_normal_fan_is_polar_lattice(fans, polytopes):
    fan, _ = fans("cube-face-fan")
    assert generalized_h(FaceLattice.of_fan(fan)) == \
        generalized_h(FaceLattice.of_polytope(polytopes("unit-cube")))


pts3 = st.lists(st.tuples(*[st.integers(-3, 3)] * 3), min_size=5, max_size=9, unique=True)


@settings(max_examples=25, deadline=None)
@given(pts3)
def test_random_polytopes_symmetric_unimodal(pts):
    try:
        P = Polytope(pts)
    except ValueError:
        return
    h = generalized_h(FaceLattice.of_polytope(P))
    assert h == h[::-1] and h[0] == 1
    half = h[:len(h) // 2 + 1]
    assert all(a <= b for a, b in zip(half, half[1:]))
