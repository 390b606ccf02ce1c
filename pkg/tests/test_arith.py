import pytest
from hypothesis import given, settings, strategies as st

from localtoric.arith import (
    GF,
    PrimePower,
    adjusted_remainder,
    qadic_trace,
    scalar_qth_root,
    split_digits,
)
from oracles import digit_lemma_failures


@pytest.mark.parametrize("b,m,eps", [(2, 3, 2), (3, 3, 3), (6, 2, 2), (1, 1, 1), (10, 4, 2)])
def test_adjusted_remainder(b, m, eps):
    assert adjusted_remainder(b, m) == eps


@given(st.integers(1, 10**6), st.integers(1, 50))
def test_adjusted_remainder_range(b, m):
    e = adjusted_remainder(b, m)
    assert 1 <= e <= m and (b - e) % m == 0


@pytest.mark.parametrize("b,q,m,b1,b0", [(2, 7, 3, 0, 4), (5, 7, 3, 1, 3), (0, 7, 3, 0, 0)])
def test_split_digits_examples(b, q, m, b1, b0):
    s = split_digits(b, q, m)
    assert (s.b1, s.b0) == (b1, b0)


def test_split_digits_rejects():
    with pytest.raises(ValueError):
        split_digits(1, 8, 3)
    with pytest.raises(ValueError):
        split_digits(7, 7, 3)


def test_qadic_trace_examples():
    assert qadic_trace(0, 7) == 0
    assert qadic_trace(10, 7) == 4
    assert qadic_trace(5 * 48 // 3, 7) == 2 * qadic_trace(5 * 6 // 3, 7) == 8


@pytest.mark.parametrize("q,m", [(7, 3), (13, 4), (25, 12), (49, 6), (11, 5)])
def test_digit_lemma_small(q, m):
    assert digit_lemma_failures(q, m) == []


def test_prime_power():
    assert PrimePower.from_q(169) == PrimePower(13, 2)
    assert PrimePower(2, 3).q == 8
    with pytest.raises(ValueError):
        PrimePower.from_q(12)
    with pytest.raises(ValueError):
        PrimePower(9, 1)


@pytest.mark.parametrize("p,k", [(2, 1), (7, 1), (2, 3), (3, 2), (11, 2)])
def test_field_axioms(p, k):
    K = GF(p, k)
    els = list(K.elements())
    assert len(els) == p ** k
    g = K.primitive_element()
    assert len({K.pow(g, i) for i in range(K.order - 1)}) == K.order - 1
    for a in els[:12]:
        assert K.add(a, K.neg(a)) == 0
        if a:
            assert K.mul(a, K.inv(a)) == K.one
        for b in els[:12]:
            assert K.mul(a, b) == K.mul(b, a)


@pytest.mark.parametrize("p,k,e", [(7, 1, 1), (7, 1, 2), (2, 3, 1), (3, 2, 1), (3, 2, 3), (5, 2, 2)])
def test_qth_root_inverts_frobenius(p, k, e):
    K = GF(p, k)
    q = p ** e
    for c in K.elements():
        r = scalar_qth_root(K, c, q)
        assert K.pow(r, q) == c
        assert scalar_qth_root(K, K.pow(c, q), q) == c


def test_qth_root_trivial_cases():
    K = GF(7)
    assert K.qth_root(0, 7) == 0 and K.qth_root(1, 7) == 1 and K.qth_root(2, 7) == 2
    with pytest.raises(ValueError):
        K.qth_root(2, 9)


@settings(max_examples=50)
@given(st.integers(0, 10**9), st.sampled_from([2, 3, 7, 10, 49]))
def test_trace_matches_digit_sum(a, q):
    total, x = 0, a
    while x:
        total += x % q
        x //= q
    assert qadic_trace(a, q) == total
