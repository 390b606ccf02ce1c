import random

import pytest

from conftest import e3_data, exps, genfam_data
from localtoric.arith import GF
from localtoric.binomial import Monomial, ToricPresentation, bounded_syzygy_search
from localtoric.errors import ClosureFailure, FreenessRequired
from localtoric.frobenius import (
    FreenessCertificate,
    Inconclusive,
    SaturationModule,
    StarElement,
    annihilator_check,
    certify_freeness,
    choose_q,
    express,
    multiplicity_and_smallness,
    one_star,
    predicted_bodies,
    saturation_generators,
    star_action,
    verify_family_theorem,
)
from localtoric.toric import FamilyTParams, build_bipartite, parametrization_kernel


def bodies_match(pres, q, gens, expected):
    """Every expected body is R-equal (up to scalar) to some generator body, and vice versa."""
    stars = [StarElement(q, pres.field.one, e[: pres.n], e[pres.n:]) for e in expected]
    hits = [express(pres, q, gens, e) for e in expected]
    back = [express(pres, q, stars, g.body) for g in gens]
    return all(h is not None and h[1] == (0,) * pres.d for h in hits) and all(b is not None for b in back)


def test_e3_q7(e3):
    pres = e3(7)
    sm = saturation_generators(pres, 7)
    expected = [exps(pres), exps(pres, (1, 0), (2, 4, 6)), exps(pres, (2, 0), (4, 1, 5))]
    assert sm.rank == 3 and bodies_match(pres, 7, sm.generators, expected)
    cert = certify_freeness(sm, pres)
    assert isinstance(cert, FreenessCertificate) and cert.rank == 3
    small = multiplicity_and_smallness(sm, pres, cert)
    assert small == {"min_generators": 3, "pardeg_bound": 5, "very_small": True}


def test_star_action_examples(e3):
    pres = e3(7)
    K = pres.field
    f, s = star_action(Monomial(K.one, (1, 0), (0, 0, 0)), one_star(pres, 7), pres)
    assert s.body == exps(pres, (1, 0), (2, 4, 6)) and f == (0, 0, 0)
    assert star_action(Monomial(K.one, (0, 0), (1, 0, 0)), one_star(pres, 7), pres)[0] == (1, 0, 0)


@pytest.mark.parametrize("q", [7, 49])
def test_star_law(e3, q):
    # (r s) . x  ==  r . (s . x)
    pres = e3(7)
    K = pres.field
    rng = random.Random(q)
    x = one_star(pres, q)
    for _ in range(15):
        r = Monomial(K.coerce(rng.randint(1, 6)), (rng.randint(0, 2), rng.randint(0, 2)), tuple(rng.randint(0, 2) for _ in range(3)))
        s = Monomial(K.coerce(rng.randint(1, 6)), (rng.randint(0, 2), rng.randint(0, 2)), tuple(rng.randint(0, 2) for _ in range(3)))
        rs = Monomial(K.mul(r.coeff, s.coeff), tuple(a + b for a, b in zip(r.uexp, s.uexp)), tuple(a + b for a, b in zip(r.yexp, s.yexp)))
        f1, a = star_action(s, x, pres)
        f2, b = star_action(r, a, pres)
        f3, c = star_action(rs, x, pres)
        lhs = tuple(e + q * f for e, f in zip(b.body, (0, 0) + tuple(u + v for u, v in zip(f1, f2))))
        rhs = tuple(e + q * f for e, f in zip(c.body, (0, 0) + f3))
        assoc = pres.associate(lhs, rhs)  # x^lhs == assoc * x^rhs
        assert assoc is not None
        assert K.mul(K.pow(b.coeff, q), assoc) == K.pow(c.coeff, q)


def test_relation_table_e3_q7(e3):
    pres = e3(7)
    sm = saturation_generators(pres, 7)
    K = pres.field
    for b, j in sm.relation_table:
        s, c, k = sm.relation_table[(b, j)]
        f, star = star_action(Monomial(K.one, b, (0, 0, 0)), sm.generators[j], pres)
        target = sm.generators[k]
        lhs = tuple(e + 7 * x for e, x in zip(star.body, (0, 0) + f))
        rhs = tuple(e + 7 * x for e, x in zip(target.body, (0, 0) + s))
        assert pres.associate(lhs, rhs) is not None


def test_annihilator(e3):
    for p in (7, 11):
        pres = e3(p)
        par = parametrization_kernel(e3_data(p))
        sm = saturation_generators(pres, p)
        assert annihilator_check(sm, par.generators, pres)


def test_e3_at_three(e3):
    pres = e3(3)
    sm = saturation_generators(pres, 3)
    assert [g.body for g in sm.generators] == [exps(pres), exps(pres, (), (1, 2)), exps(pres, (), (2, 1))]
    table = sm.action_on_one()
    assert table[(0, 1)] == ((1, 0, 2), 1, 2) and table[(0, 2)] == ((3, 0, 4), 1, 1)
    # every binomial g of the prime has g^3 in I, since 3 * gamma lies in Gamma
    assert annihilator_check(sm, parametrization_kernel(e3_data(3)).generators, pres)
    assert certify_freeness(sm, pres).rank == 3


def test_planted_dependence_is_never_certified(e3):
    pres = e3(7)
    sm = saturation_generators(pres, 7)
    K = pres.field
    rng = random.Random(3)
    for _ in range(10):
        g = rng.choice(sm.generators)
        mu = tuple(rng.randint(0, 1) for _ in range(3))
        # a y-multiple of an existing generator written as its own star element
        extra = StarElement(7, K.one, g.uexp, tuple(d + 7 * m for d, m in zip(g.ydigits, mu)))
        planted = SaturationModule(7, list(sm.generators) + [extra], {}, sm.standard_basis, [])
        assert isinstance(certify_freeness(planted, pres), Inconclusive)
        syz = bounded_syzygy_search([{x.body: 1} for x in planted.generators], pres, sum(mu), q=7)
        assert syz
    # the R-equal alternative body for the third generator is also dependent
    alt = StarElement(7, K.one, (0, 1), (3, 2, 5))
    planted = SaturationModule(7, list(sm.generators) + [alt], {}, sm.standard_basis, [])
    assert isinstance(certify_freeness(planted, pres), Inconclusive)
    assert bounded_syzygy_search([{x.body: 1} for x in planted.generators], pres, 0, q=7)


def test_certified_has_no_oracle_syzygy(e3):
    pres = e3(7)
    sm = saturation_generators(pres, 7)
    assert isinstance(certify_freeness(sm, pres), FreenessCertificate)
    assert bounded_syzygy_search([{g.body: 1} for g in sm.generators], pres, 1, q=7) == []


def test_genfam_closure_over_R(genfam):
    pres = genfam(11)
    with pytest.raises(ClosureFailure) as info:
        saturation_generators(pres, 11)
    partial = info.value.details["partial"]
    assert partial.rank == 6
    assert isinstance(certify_freeness(partial, pres), Inconclusive)
    with pytest.raises(FreenessRequired):
        multiplicity_and_smallness(partial, pres)


def genfam_bar(p):
    R = build_bipartite(genfam_data(p))
    K = R.field
    extra = {exps(R, (1, 0), (2, 2, 0)): K.one, exps(R, (0, 3), (0, 0, 1)): K.neg(1)}
    return ToricPresentation(K, R.y_names, R.u_names, list(R.relation_polys) + [extra])


def test_genfam_over_domain_quotient():
    pres = genfam_bar(11)
    sm = saturation_generators(pres, 11)
    cert = certify_freeness(sm, pres)
    assert isinstance(cert, FreenessCertificate) and cert.rank == 6


def test_genfam_q13_closes(genfam):
    pres = genfam(13)
    sm = saturation_generators(pres, 13)
    assert sm.rank == 6
    assert isinstance(certify_freeness(sm, pres), FreenessCertificate)


def test_regular_ring_rank_one():
    pres = ToricPresentation(GF(5), ("x", "y"), (), [])
    sm = saturation_generators(pres, 5)
    assert sm.rank == 1
    assert multiplicity_and_smallness(sm, pres) == {"min_generators": 1, "pardeg_bound": 1, "very_small": True}


def test_choose_q():
    assert choose_q(7, 3, 6) == 49
    assert choose_q(11, 3, 6) == 121
    assert choose_q(13, 3, 6) == 169
    with pytest.raises(ValueError):
        choose_q(3, 3, 6)


def test_predicted_bodies_closed_form():
    P = FamilyTParams.odd(3, 3, (1, 2, 3), (5, 1, 6), (2, 1, 3))
    bodies, checks = predicted_bodies(P, 169)
    assert all(b0 == cf == low for _, b0, cf, low in checks)
    assert bodies[(0, 1)] == ((1, 0), (56, 112, 168))


@pytest.mark.parametrize("q,p", [(7, 7), (13, 13), (169, 13)])
def test_family_theorem_e3(q, p):
    P = FamilyTParams.odd(3, 3, (1, 2, 3), (5, 1, 6), (2, 1, 3))
    rep = verify_family_theorem(P, q, GF(p))
    assert rep["ok"] and rep["rank"] == 3
    assert rep["hypothesis_q_large"] == (q > 18)


def test_family_theorem_quadratic():
    P = FamilyTParams(1, 2, 2, ((2,), (2,)), {(0, 1): (2,)}, (1, 1), {(0, 1): 1})
    rep = verify_family_theorem(P, 3, GF(3))
    assert rep["ok"] and rep["eiej"] and rep["rank"] == 2
