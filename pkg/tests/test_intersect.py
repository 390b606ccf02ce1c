import warnings
from fractions import Fraction

import pytest

from localtoric.arith import GF
from localtoric.errors import NotArtinian, ZeroDenominator
from localtoric.intersect import (
    Ambient,
    IntersectionInput,
    chi,
    chi_from_mcm_lengths,
    localization_length_free_mcm,
    parse_poly,
    quotient_length,
    tensor_length,
    tor_vanishing_bound,
)

XY = Ambient(GF(7), ("x", "y"))
XYZW = Ambient(GF(7), ("x", "y", "z", "w"))


def test_parse_poly():
    assert parse_poly("y - x^2", XY) == {(0, 1): 1, (2, 0): 6}
    assert parse_poly("x/2", XY) == {(1, 0): 4}


def test_tensor_lengths():
    assert tensor_length(["x"], ["y"], XY) == 1
    assert tensor_length(["y - x^2"], ["y"], XY) == 2
    assert tensor_length(["x", "y"], ["z", "w"], XYZW) == 1
    assert tensor_length(["y - x^3"], ["y - x"], XY) == 3  # three reduced points, global length


def test_not_artinian():
    with pytest.raises(NotArtinian):
        quotient_length(["x"], XY)


def test_chi_formula():
    assert chi_from_mcm_lengths(1, 1, 1).value == 1
    assert chi_from_mcm_lengths(6, 3, 2).value == 1
    r = chi_from_mcm_lengths(5, 1, 2)
    assert r.value == Fraction(5, 2) and not r.integral
    with pytest.raises(ZeroDenominator):
        chi_from_mcm_lengths(1, 0, 1)


def test_cm_specialization():
    # with M = S/p the length of M at p is 1 and the formula is l(N/pN) / l(N_q)
    for tensor_len, len_n in ((4, 2), (9, 3), (7, 7)):
        assert chi_from_mcm_lengths(tensor_len, 1, len_n).value == Fraction(tensor_len, len_n)


def test_localization_length():
    assert localization_length_free_mcm(3, 3) == 1
    assert localization_length_free_mcm(6, 3) == 2
    with pytest.warns(UserWarning):
        localization_length_free_mcm(2, 3)
    with pytest.raises(ZeroDenominator):
        localization_length_free_mcm(1, 0)


def test_tor_bound():
    assert tor_vanishing_bound(2, 1, 3) == 0
    assert tor_vanishing_bound(0, 5, 4) == 1
    assert tor_vanishing_bound(0, 1, 4) == 0
    assert tor_vanishing_bound(2, 3, 4) == 1


def test_chi_pipeline():
    inp = IntersectionInput(XYZW, ("x", "y"), ("z", "w"))
    res = chi(inp)
    assert res.value == 1 and res.integral
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert chi(IntersectionInput(XY, ("y - x^2",), ("y",))).value == 2
