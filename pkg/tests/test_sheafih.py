import pytest
from hypothesis import given, settings, strategies as st

from ihfan.fan import star_fan, validate_fan
from ihfan.hvec import simplicial_h
from oracles import boundary_residue_dims
from ihfan.sheafih import (SheafError, build_minimal_sheaf, convolve, ih, kunneth_check,
                           quasiconvex_certificate)


def quadrant():
    return validate_fan([(1, 0), (0, 1), (-1, 0), (0, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]])


def _ih(fan, relative=False):
    return ih(build_minimal_sheaf(fan), fan, relative=relative).dims


def test_stalk_generators_match_boundary_residue_oracle(fans):
    fan, _ = fans("cube-face-fan")
    sheaf = build_minimal_sheaf(fan)
    for sigma in fan.maximal:
        # truncation: generators live in cohomological degree < dim sigma = 3
        oracle = boundary_residue_dims(fan, sigma, 1)
        degs = [2 * k for k, d in enumerate(oracle) for _ in range(d)]
        assert list(sheaf.gens[sigma]) == degs == [0, 2]


def test_simplicial_stalks_are_rank_one(fans):
    fan, _ = fans("cube-fan")
    sheaf = build_minimal_sheaf(fan)
    assert all(sheaf.gens[c] == (0,) for c in fan.cones)
    assert sheaf.verify()


def test_sheaf_restrictions_commute(fans):
    fan, _ = fans("pyramid-fan")
    assert build_minimal_sheaf(fan).verify()


@pytest.mark.parametrize("name, expected", [
    ("f1", (1, 1)), ("square-fan", (1, 2, 1)), ("cube-fan", (1, 3, 3, 1)),
    ("triangle-fan", (1, 1, 1)), ("simplex-3-fan", (1, 1, 1, 1)),
    ("cube-face-fan", (1, 5, 5, 1)), ("pyramid-fan", (1, 2, 2, 1)),
    ("f1-x-square-fan", (1, 3, 3, 1)),
])
def test_ih_of_fixtures(fans, name, expected):
    fan, _ = fans(name)
    assert _ih(fan) == expected


@pytest.mark.parametrize("m", range(3, 8))
def test_mgon_ih_is_simplicial_h(fans, m):
    fan, _ = fans(f"{m}-gon-fan")
    assert _ih(fan) == simplicial_h([m, m], 2) == (1, m - 2, 1)


def test_single_cone_absolute_and_relative():
    fan = validate_fan([(1, 0), (1, 1)], [[0, 1]])
    assert _ih(fan) == (1, 0, 0)
    assert _ih(fan, relative=True) == (0, 0, 1)


def test_star_of_ray_relative_is_dual():
    sf = star_fan(quadrant(), {0})
    assert _ih(sf) == (1, 1, 0)
    assert _ih(sf, relative=True) == (0, 1, 1)


def test_complete_fan_relative_equals_absolute(fans):
    fan, _ = fans("pyramid-fan")
    assert _ih(fan, relative=True) == _ih(fan)


def test_non_pure_fan_refused():
    fan = validate_fan([(1, 0), (0, 1), (-1, -1)], [[0, 1], [2]])
    cert = quasiconvex_certificate(build_minimal_sheaf(fan), fan)
    assert not cert.accepted
    with pytest.raises(SheafError):
        ih(build_minimal_sheaf(fan), fan)


def test_hilbert_count(fans):
    fan, _ = fans("cube-face-fan")
    assert ih(build_minimal_sheaf(fan), fan).hilbert_check()


def test_kunneth_dims(fans):
    f1, _ = fans("f1")
    sq, _ = fans("square-fan")
    rep = kunneth_check(f1, sq)
    assert rep["absolute"]["match"] and rep["relative"]["match"]
    assert rep["absolute"]["product"] == (1, 3, 3, 1)


def test_convolve():
    assert convolve((1, 1), (1, 2, 1)) == (1, 3, 3, 1)


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 7))
def test_ih_is_palindromic_with_unit_ends(fans, m):
    fan, _ = fans(f"{m}-gon-fan")
    v = _ih(fan)
    assert v == v[::-1] and v[0] == 1


def test_star_of_square_cone_is_quasi_convex(fans):
    fan, _ = fans("cube-face-fan")
    sigma = next(c for c in fan.maximal if len(c) == 4)
    sf = star_fan(fan, sigma)
    assert quasiconvex_certificate(build_minimal_sheaf(sf), sf).accepted


def test_f1_times_f1_is_quadrant(fans):
    f1, _ = fans("f1")
    rep = kunneth_check(f1, f1)
    assert rep["absolute"]["convolution"] == rep["absolute"]["product"] == (1, 2, 1)
    assert _ih(quadrant()) == (1, 2, 1)
