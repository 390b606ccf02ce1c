"""The Frobenius pushforward F_{q*}R and the S-saturation of ``*1`` inside it.

Elements of F_{q*}R are written ``*a``; a ring element r acts by
``r . *a = *(r^q a)``.  For a positively graded binomial presentation the
saturation ``Q = sat_S(*1, F_{q*}R)`` is spanned by "star monomials", which
lets everything be decided with monomial normal forms and degree
bookkeeping.

When R is not a domain a graded piece of R can hold two monomials that
are not associates yet agree after multiplying by a y-monomial.  The
module built here keeps one maximally divided representative per
candidate, so it is the saturation modulo y-torsion; on the quotient by
the parametrization prime the choice disappears.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import PrimePower, adjusted_remainder, split_digits
from .binomial import Monomial, ToricPresentation, length_artinian, mono_mul
from .errors import ClosureFailure, FreenessRequired, NotGraded
from .toric import FamilyTParams, build_family_T


@dataclass(frozen=True)
class StarElement:
    """``coeff * *(u^uexp y^ydigits)`` with every y-digit below q."""

    q: int
    coeff: int
    uexp: tuple
    ydigits: tuple

    @property
    def body(self):
        return tuple(self.uexp) + tuple(self.ydigits)

    def describe(self, pres: ToricPresentation) -> str:
        return "*" + monomial_str(pres, self.body)


def monomial_str(pres: ToricPresentation, exps) -> str:
    parts = []
    for name, e in zip(pres.var_names, exps):
        if e:
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) or "1"


def one_star(pres: ToricPresentation, q: int) -> StarElement:
    return StarElement(q, pres.field.one, (0,) * pres.n, (0,) * pres.d)


def _split(pres, q, exps):
    y = exps[pres.n:]
    factor = tuple(e // q for e in y)
    return factor, tuple(exps[: pres.n]), tuple(e % q for e in y)


def star_of_monomial(pres: ToricPresentation, q: int, exps, coeff=None):
    """Write ``coeff * *(x^exps)`` as ``y^factor * StarElement`` (None if zero)."""
    K = pres.field
    coeff = K.one if coeff is None else coeff
    nf = pres.nf_monomial(exps)
    if nf is None or not coeff:
        return None
    c, e = nf
    factor, u, digits = _split(pres, q, e)
    return factor, StarElement(q, K.mul(coeff, K.qth_root(c, q)), u, digits)


def star_action(r: Monomial, x: StarElement, pres: ToricPresentation):
    """``r . x`` as ``(y-exponent factor, StarElement)``; None when it vanishes."""
    K = pres.field
    q = x.q
    rq = tuple(q * e for e in r.exps)
    return star_of_monomial(pres, q, mono_mul(rq, x.body), K.mul(x.coeff, K.coerce(r.coeff)))


def _require_grading(pres):
    if pres.grading() is None:
        raise NotGraded("presentation has no positive Z^d-grading with y_i of degree e_i")


def express(pres, q, gens, exps):
    """Find ``(k, s, c)`` with ``*(x^exps) = c * y^s * gens[k]``, else None."""
    K = pres.field
    deg = pres.degree(exps)
    for k, g in enumerate(gens):
        diff = [a - b for a, b in zip(deg, pres.degree(g.body))]
        if any(x < 0 or x.denominator != 1 or x.numerator % q for x in diff):
            continue
        s = tuple(int(x) // q for x in diff)
        lifted = mono_mul(g.body, (0,) * pres.n + tuple(q * x for x in s))
        c = pres.associate(lifted, exps)  # x^lifted == c * x^exps
        if c is None:
            continue
        # x^exps = c^{-1} y^{qs} body  =>  *x^exps = root(c^{-1}) y^s *body
        coeff = K.mul(K.qth_root(K.inv(c), q), K.inv(g.coeff))
        return k, s, coeff
    return None


def _u_candidates(pres):
    return list(pres.standard_monomials())


def maximal_divide(pres: ToricPresentation, star: StarElement):
    """Pull y-monomials out of a star element as far as R allows.

    Returns ``(factor, star')`` with ``star == y^factor * star'``.
    """
    K = pres.field
    q = star.q
    factor = [0] * pres.d
    cur = star
    ucands = _u_candidates(pres)
    grading = pres.grading()
    progress = True
    while progress:
        progress = False
        deg = pres.degree(cur.body)
        for i in range(pres.d):
            target = list(deg)
            target[i] -= q
            for b in ucands:
                y = [t - sum((b[j] * grading[j][l] for j in range(pres.n)), Fraction(0))
                     for l, t in enumerate(target)]
                if any(v < 0 or v.denominator != 1 for v in y):
                    continue
                w = tuple(b) + tuple(int(v) for v in y)
                lifted = list(w)
                lifted[pres.n + i] += q
                c = pres.associate(tuple(lifted), cur.body)  # y_i^q w == c * body
                if c is None:
                    continue
                res = star_of_monomial(pres, q, w, K.mul(cur.coeff, K.qth_root(K.inv(c), q)))
                f2, cur = res
                factor[i] += 1
                factor = [a + b for a, b in zip(factor, f2)]
                progress = True
                break
            if progress:
                break
    return tuple(factor), cur


@dataclass
class SaturationModule:
    q: int
    generators: list
    relation_table: dict  # (b, j) -> (s, c, k):  b . e_j = c * y^s * e_k
    standard_basis: tuple
    witnesses: list  # per generator: (s, (b, j), c) with y^s . e = c * b . e_j
    freeness: object = None

    @property
    def rank(self):
        return len(self.generators)

    def action_on_one(self):
        return {b: self.relation_table[(b, 0)] for b in self.standard_basis}


def saturation_generators(pres: ToricPresentation, q: int, check_closure: bool = True,
                          extend: bool = False, max_rounds: int = 8) -> SaturationModule:
    """Generators and relation table of ``sat_S(*1, F_{q*}R)``.

    The candidates are the maximally y-divided images ``b . *1`` for b in the
    standard basis.  Raises ClosureFailure when some ``b . e_j`` is not a
    y-monomial multiple of a collected generator (q too small for this
    ring).  With ``extend`` such targets are divided and adopted as new
    generators instead, for up to ``max_rounds`` rounds.
    """
    pp = PrimePower.from_q(q)
    if pp.p != pres.p:
        raise ValueError(f"q={q} is not a power of p={pres.p}")
    _require_grading(pres)
    K = pres.field
    basis = tuple(pres.standard_monomials())
    e0 = one_star(pres, q)
    gens = [e0]
    witnesses = [((0,) * pres.d, ((0,) * pres.n, 0), K.one)]

    def adopt(res, origin):
        f1, star = res
        f2, star = maximal_divide(pres, star)
        if express(pres, q, gens, star.body) is not None:
            return
        total = tuple(a + c for a, c in zip(f1, f2))
        # origin = y^total * coeff * *body  =>  y^total . e = coeff^{-1} origin
        gens.append(StarElement(q, K.one, star.uexp, star.ydigits))
        witnesses.append((total, origin, K.inv(star.coeff)))

    for b in basis:
        res = star_action(Monomial(K.one, b, (0,) * pres.d), e0, pres)
        if res is not None:
            adopt(res, (b, 0))
    for _ in range(max_rounds if extend else 1):
        table, failures = relation_table(pres, q, basis, gens)
        if not failures or not extend:
            break
        for b, j, star in failures:
            adopt(((0,) * pres.d, star), (b, j))
    sm = SaturationModule(q, gens, table, basis, witnesses)
    sm.closure_failures = failures
    if failures and check_closure:
        b, j, star = failures[0]
        raise ClosureFailure(
            f"{monomial_str(pres, tuple(b) + (0,) * pres.d)} . e{j} = {star.describe(pres)} "
            f"is not a multiple of a collected generator (q={q} too small?)",
            partial=sm,
            failures=failures,
        )
    return sm


def relation_table(pres, q, basis, gens):
    K = pres.field
    table, failures = {}, []
    for j, g in enumerate(gens):
        for b in basis:
            res = star_action(Monomial(K.one, b, (0,) * pres.d), g, pres)
            if res is None:
                continue
            f1, star = res
            hit = express(pres, q, gens, star.body)
            if hit is None:
                failures.append((b, j, star))
                continue
            k, s, c = hit
            table[(b, j)] = (tuple(a + x for a, x in zip(f1, s)), K.mul(star.coeff, c), k)
    return table, failures


@dataclass(frozen=True)
class FreenessCertificate:
    rank: int
    witness: tuple  # (j, k, degree difference, first incompatible coordinate)


@dataclass(frozen=True)
class Inconclusive:
    reason: str
    pairs: tuple = ()


def certify_freeness(sm: SaturationModule, pres: ToricPresentation):
    """Sound (incomplete) certificate that the generators are S-independent.

    A relation sum s_j e_j = 0 unfolds to sum s_j^q body_j = 0 in R; in each
    multidegree only generators whose body degrees agree modulo q can meet,
    so pairwise disagreement mod q plus nonvanishing of every monomial of R
    rules out all relations.
    """
    _require_grading(pres)
    if getattr(sm, "closure_failures", None):
        return Inconclusive("relation table is not closed")
    if pres.has_monomial_relations():
        return Inconclusive("ideal contains monomials")
    if any(not g.coeff for g in sm.generators):
        return Inconclusive("zero generator")
    q = sm.q
    degs = [pres.degree(g.body) for g in sm.generators]
    witness, bad = [], []
    for j in range(len(degs)):
        for k in range(j + 1, len(degs)):
            diff = tuple(a - b for a, b in zip(degs[j], degs[k]))
            coord = next(
                (i for i, x in enumerate(diff) if x.denominator != 1 or x.numerator % q),
                None,
            )
            if coord is None:
                bad.append((j, k, diff))
            else:
                witness.append((j, k, diff, coord))
    if bad:
        return Inconclusive("body degrees congruent modulo q", tuple(bad))
    return FreenessCertificate(len(degs), tuple(witness))


def annihilator_check(sm: SaturationModule, prime_gens, pres: ToricPresentation) -> bool:
    """True iff every prime generator kills every generator of the module."""
    K = pres.field
    q = sm.q
    for g in prime_gens:
        terms = [g.lead] + ([g.tail] if g.tail is not None else [])
        signs = [K.one, K.neg(K.one)]
        for e in sm.generators:
            f = {}
            for t, sign in zip(terms, signs):
                ex = mono_mul(tuple(q * x for x in t.exps), e.body)
                c = K.mul(sign, K.pow(K.coerce(t.coeff), q))
                f[ex] = K.add(f.get(ex, 0), c)
            if pres.normal_form(f):
                return False
    return True


def multiplicity_and_smallness(sm: SaturationModule, pres: ToricPresentation, certificate=None):
    certificate = certificate if certificate is not None else certify_freeness(sm, pres)
    if not isinstance(certificate, FreenessCertificate):
        raise FreenessRequired("freeness certificate required")
    ys = [Monomial(pres.field.one, (0,) * pres.n, tuple(int(i == j) for j in range(pres.d))) for i in range(pres.d)]
    pardeg = length_artinian(pres, ys)
    return {
        "min_generators": certificate.rank,
        "pardeg_bound": pardeg,
        "very_small": certificate.rank <= pardeg,
    }


def choose_q(p: int, m: int, max_exponent: int) -> int:
    """Smallest power q of p with q = 1 mod m and q > m * max_exponent."""
    if p % m == 0:
        raise ValueError("p divides m")
    q = p
    while (q - 1) % m or q <= m * max_exponent:
        q *= p
    return q


def predicted_bodies(params: FamilyTParams, q: int):
    """Closed-form generator bodies ``u_i^k y^(digit)`` of the family theorems.

    Returns a dict ``(i, k) -> (uexp, ydigits)`` and a list of closed-form
    cross-checks ``(entry, low digit, (q*eps - k*a)/m)``.
    """
    m = params.m
    if (q - 1) % m:
        raise ValueError(f"q={q} is not 1 modulo m={m}")
    r = (q - 1) // m
    bodies, checks = {}, []
    for i in range(params.n):
        for k in range(1, m):
            digits = []
            for a in params.alphas[i]:
                low = (r * k * a) % q
                digits.append(low)
                if k * a < q:
                    eps = adjusted_remainder(k * a, m)
                    checks.append((k * a, split_digits(k * a, q, m).b0, (q * eps - k * a) // m, low))
            u = [0] * params.n
            u[i] = k
            bodies[(i, k)] = (tuple(u), tuple(digits))
    return bodies, checks


def verify_family_theorem(params: FamilyTParams, q: int, field) -> dict:
    pres = build_family_T(params, field)
    bodies, checks = predicted_bodies(params, q)
    m = params.m
    max_entry = max(max(a) for a in params.alphas)
    report = {
        "q": q,
        "hypothesis_q_large": q > m * max_entry,
        "closed_form_ok": all(b0 == cf == low for _, b0, cf, low in checks),
        "predicted": {f"u{i + 1}^{k}": b for (i, k), b in sorted(bodies.items())},
    }
    def stars(xs):
        return [StarElement(q, field.one, x[: params.n], x[params.n:]) for x in xs]

    def related(x, y):
        # equal up to a scalar and a y^(q mu) factor, in either direction
        return express(pres, q, stars([y]), x) is not None or express(pres, q, stars([x]), y) is not None

    if m == 2:
        first = bodies[(0, 1)]
        report["eiej"] = all(related(first[0] + first[1], b[0] + b[1])
                             for (i, k), b in bodies.items())
    else:
        report["eimi"] = all(
            related(bodies[(1, k)][0] + bodies[(1, k)][1], bodies[(0, m - k)][0] + bodies[(0, m - k)][1])
            for k in range(1, m)
        )
    sm = saturation_generators(pres, q)
    computed = [g.body for g in sm.generators]
    pred = [(0,) * (params.n + params.d)] + [u + y for u, y in bodies.values()]
    report["predicted_in_computed"] = all(express(pres, q, sm.generators, x) is not None for x in pred)
    report["computed_in_predicted"] = all(express(pres, q, stars(pred), x) is not None for x in computed)
    report["rank"] = sm.rank
    report["expected_rank"] = m
    report["ok"] = (
        report["closed_form_ok"]
        and report.get("eiej", report.get("eimi"))
        and report["predicted_in_computed"]
        and report["computed_in_predicted"]
        and sm.rank == m
    )
    report["module"] = sm
    return report
