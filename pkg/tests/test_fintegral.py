from itertools import product

import pytest

from conftest import e3_data, genfam_data
from localtoric.errors import InfiniteIndex, NotFull
from localtoric.fintegral import (
    AffineSemigroup,
    FractionMonomial,
    base_semigroup,
    f_normalization,
    f_normalization_module,
    frac_degree,
    image_semigroup,
    in_group,
    is_power_integral,
    multiples_in,
    normalization,
    normalization_module,
    power_integral,
    power_integral_module,
    q_integral_closure,
    q_integral_module,
    semigroup_membership,
    semigroup_module,
)
from oracles import brute_member

G = AffineSemigroup(3, ((3, 0, 0), (0, 3, 0), (0, 0, 1), (1, 2, 1), (5, 1, 2)))
BOX = list(product(range(8), range(8), range(5)))


def test_image_semigroup_e3():
    assert image_semigroup(e3_data(7).phi) == G


def test_membership_against_brute_force():
    for v in BOX:
        assert semigroup_membership(v, G) == brute_member(v, G.generators)
    assert semigroup_membership((6, 3, 3), G) and not semigroup_membership((1, 0, 0), G)


def test_semigroup_module_matches_membership():
    mod = semigroup_module(G)
    assert all((v in mod) == semigroup_membership(v, G) for v in BOX)


def test_normalization_e3():
    assert normalization(G) == [(0, 0, 1), (0, 3, 0), (1, 2, 0), (2, 1, 0), (3, 0, 0)]
    mod = normalization_module(G)
    for v in BOX:
        assert (v in mod) == in_group(v, G)


@pytest.mark.parametrize("q", [3, 7, 9])
def test_q_integral_oracle(q):
    mod = q_integral_module(G, q)
    for v in BOX:
        expected = in_group(v, G) and semigroup_membership([q * x for x in v], G)
        assert (v in mod) == expected


def test_f_normalization_e3():
    p7 = [(0, 0, 1), (0, 3, 0), (1, 2, 1), (2, 1, 1), (3, 0, 0)]
    for p in (5, 7, 11, 13):
        assert f_normalization(G, p)[0] == p7
    assert f_normalization(G, 3)[0] == normalization(G)
    assert q_integral_closure(G, 7) == p7


def test_power_integral_e3():
    assert power_integral(G) == [(0, 0, 1), (0, 3, 0), (1, 2, 1), (2, 1, 1), (3, 0, 0)]
    assert is_power_integral((2, 1, 1), G)
    assert not is_power_integral((1, 2, 0), G)
    assert multiples_in((2, 1, 1), G, 6) == [2, 3, 4, 5, 6]
    assert multiples_in((1, 2, 0), G, 9) == [3, 6, 9]


def test_power_integral_oracle():
    # m v in Gamma for every m in a window past the conductor-sized bound
    mod = power_integral_module(G)
    for v in product(range(4), range(4), range(3)):
        if not in_group(v, G):
            continue
        window = all(semigroup_membership([m * x for x in v], G) for m in range(6, 12))
        assert (v in mod) == window


def test_chain_genfam():
    H = image_semigroup(genfam_data(11).phi)
    fn, _ = f_normalization_module(H, 11)
    pw = power_integral_module(H)
    assert fn.same_set(pw)
    assert pw.issubset(normalization_module(H)) and not normalization_module(H).issubset(pw)


def test_frac_degree():
    assert frac_degree(G, base_semigroup(G)) == 3
    Z2 = AffineSemigroup(2, ((1, 0), (0, 1)))
    assert frac_degree(Z2, AffineSemigroup(2, ((2, 0), (0, 1)))) == 2
    with pytest.raises(InfiniteIndex):
        frac_degree(AffineSemigroup(2, ((1, 1),)), AffineSemigroup(2, ((2, 2),)))


def test_not_full():
    with pytest.raises(NotFull):
        normalization(AffineSemigroup(2, ((1, 1), (1, 0))))


def test_fraction_monomial():
    assert FractionMonomial((2, 1, 1)).in_group_of(G)
    assert not FractionMonomial((1, 0, 0)).in_group_of(G)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_powint_against_f_normalization(p):
    fn, _ = f_normalization_module(G, p)
    pw = power_integral_module(G)
    assert pw.issubset(fn)
    # (1, 2, 0) is not power-integral, yet 3 * (1, 2, 0) lies in Gamma
    assert fn.same_set(pw) == (p != 3)
