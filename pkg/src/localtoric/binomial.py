"""Binomial ideals in the polynomial model k[u_1..u_n, y_1..y_d].

Polynomials are sparse dicts ``{exponent tuple: coefficient}`` with the
u-exponents first; coefficients are raw elements of a :class:`GF`.
Gröbner bases of binomial ideals stay binomial, so every normal form of a
monomial is a scalar times a monomial (or zero).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement

from .arith import GF
from .errors import InfiniteBasis, NotArtinian
from .lattice import solve_rational


# ---------------------------------------------------------------- orders

def _grevlex_key(exps):
    return (sum(exps), tuple(-e for e in reversed(exps)))


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order, described by data so it can be serialized.

    ``blocks`` splits the variables into consecutive groups compared one after
    another, each by (weighted) degree-reverse-lexicographic order.
    """

    blocks: tuple[int, ...]
    weights: tuple[int, ...] | None = None

    def key(self, exps):
        out = []
        start = 0
        for size in self.blocks:
            part = exps[start:start + size]
            if self.weights is not None:
                w = self.weights[start:start + size]
                out.append((sum(a * b for a, b in zip(w, part)),
                            tuple(-e for e in reversed(part))))
            else:
                out.append(_grevlex_key(part))
            start += size
        return tuple(out)

    def describe(self) -> str:
        name = "block-grevlex" if len(self.blocks) > 1 else "grevlex"
        return f"{name}{list(self.blocks)}" + (f" weights={list(self.weights)}" if self.weights else "")


def block_order(n_u: int, n_y: int) -> MonomialOrder:
    """u-variables eliminated before y-variables; grevlex inside each block."""
    blocks = tuple(b for b in (n_u, n_y) if b)
    return MonomialOrder(blocks or (0,))


def grevlex(nvars: int, weights=None) -> MonomialOrder:
    return MonomialOrder((nvars,), tuple(weights) if weights is not None else None)


# ---------------------------------------------------------------- polynomials

def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def lead_term(f, order):
    return max(f, key=order.key)


def poly_add_scaled(f, g, coeff, shift, K: GF):
    """Return ``f + coeff * x^shift * g`` as a new dict."""
    out = dict(f)
    for e, c in g.items():
        e2 = mono_mul(e, shift)
        v = K.add(out.get(e2, 0), K.mul(coeff, c))
        if v:
            out[e2] = v
        else:
            out.pop(e2, None)
    return out


def make_monic(f, order, K: GF):
    lt = lead_term(f, order)
    inv = K.inv(f[lt])
    return {e: K.mul(c, inv) for e, c in f.items()}


def reduce_poly(f, basis, order, K: GF):
    """Fully reduce ``f`` modulo ``basis`` (list of monic polys with leads)."""
    f = dict(f)
    result = {}
    leads = [(lead_term(g, order), g) for g in basis]
    while f:
        lt = lead_term(f, order)
        c = f[lt]
        for lg, g in leads:
            if divides(lg, lt):
                f = poly_add_scaled(f, g, K.neg(c), mono_div(lt, lg), K)
                break
        else:
            result[lt] = c
            del f[lt]
    return result


def _s_poly(f, g, order, K):
    lf, lg = lead_term(f, order), lead_term(g, order)
    l = mono_lcm(lf, lg)
    a = poly_add_scaled({}, f, K.one, mono_div(l, lf), K)
    return poly_add_scaled(a, g, K.neg(K.one), mono_div(l, lg), K)


def buchberger(polys, order: MonomialOrder, K: GF):
    """Reduced Gröbner basis (monic, sorted by decreasing lead)."""
    basis = []
    for f in polys:
        f = {e: c for e, c in f.items() if c}
        if f:
            basis.append(make_monic(f, order, K))
    pairs = [(i, j) for j in range(len(basis)) for i in range(j)]
    while pairs:
        i, j = pairs.pop(0)
        li, lj = lead_term(basis[i], order), lead_term(basis[j], order)
        if all(not (a and b) for a, b in zip(li, lj)):
            continue  # coprime leads reduce to zero
        h = reduce_poly(_s_poly(basis[i], basis[j], order, K), basis, order, K)
        if h:
            basis.append(make_monic(h, order, K))
            n = len(basis) - 1
            pairs.extend((k, n) for k in range(n))
    return interreduce(basis, order, K)


def interreduce(basis, order, K):
    basis = [g for g in basis if g]
    # drop elements whose lead is divisible by another lead
    leads = [lead_term(g, order) for g in basis]
    keep = []
    for i, g in enumerate(basis):
        li = leads[i]
        redundant = any(
            j != i and divides(leads[j], li) and (leads[j] != li or j < i)
            for j in range(len(basis))
        )
        if not redundant:
            keep.append(g)
    out = []
    for i, g in enumerate(keep):
        lt = lead_term(g, order)
        rest = {e: c for e, c in g.items() if e != lt}
        others = keep[:i] + keep[i + 1:]
        tail = reduce_poly(rest, others, order, K)
        tail[lt] = g[lt]
        out.append(make_monic(tail, order, K))
    out.sort(key=lambda g: order.key(lead_term(g, order)), reverse=True)
    return out


def standard_exponents(leads, variables, nvars):
    """Monomials in ``variables`` (indices) outside the monomial ideal of ``leads``.

    Raises InfiniteBasis when the set is infinite.
    """
    var_set = set(variables)
    relevant = [l for l in leads if all(l[i] == 0 or i in var_set for i in range(nvars))]
    for v in variables:
        if not any(l[v] > 0 and all(l[i] == 0 for i in range(nvars) if i != v) for l in relevant):
            raise InfiniteBasis(f"no pure power of variable {v} among leading terms")
    zero = (0,) * nvars
    found = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for m in frontier:
            for v in variables:
                m2 = m[:v] + (m[v] + 1,) + m[v + 1:]
                if m2 in found:
                    continue
                if any(divides(l, m2) for l in relevant):
                    continue
                found.add(m2)
                nxt.append(m2)
        frontier = nxt
    return sorted(found, key=lambda e: (sum(e), tuple(-x for x in e)))


# ---------------------------------------------------------------- domain types

@dataclass(frozen=True)
class Monomial:
    """``coeff * u^uexp * y^yexp``; ``coeff`` is a raw field element."""

    coeff: int
    uexp: tuple
    yexp: tuple

    @property
    def exps(self):
        return tuple(self.uexp) + tuple(self.yexp)

    def as_poly(self):
        return {self.exps: self.coeff} if self.coeff else {}


@dataclass(frozen=True)
class BinomialElement:
    """``lead - tail``; a missing tail makes this a monomial element."""

    lead: Monomial
    tail: Monomial | None = None

    def as_poly(self, K: GF):
        f = self.lead.as_poly()
        if self.tail is not None:
            f = poly_add_scaled(f, self.tail.as_poly(), K.neg(K.one), (0,) * len(self.lead.exps), K)
        return f


def poly_to_binomial(f, n_u: int, order, K: GF) -> BinomialElement:
    if len(f) > 2:
        raise ValueError("not a binomial")
    terms = sorted(f.items(), key=lambda t: order.key(t[0]), reverse=True)
    (e1, c1), *rest = terms
    lead = Monomial(c1, e1[:n_u], e1[n_u:])
    if not rest:
        return BinomialElement(lead)
    e2, c2 = rest[0]
    return BinomialElement(lead, Monomial(K.neg(c2), e2[:n_u], e2[n_u:]))


@dataclass(frozen=True)
class StandardBasis:
    monomials: tuple  # u-exponent tuples

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)


class ToricPresentation:
    """``k[u, y] / I`` for a binomial ideal I with scalar coefficients.

    The reduced Gröbner basis is computed at construction; afterwards the
    object is treated as immutable.
    """

    def __init__(self, field: GF, y_names, u_names, relations, order: MonomialOrder | None = None):
        self.field = field
        self.y_names = tuple(y_names)
        self.u_names = tuple(u_names)
        self.n = len(self.u_names)
        self.d = len(self.y_names)
        self.nvars = self.n + self.d
        self.order = order or block_order(self.n, self.d)
        polys = []
        for r in relations:
            f = r.as_poly(field) if isinstance(r, BinomialElement) else dict(r)
            if any(len(e) != self.nvars for e in f):
                raise ValueError("relation exponent length does not match variable count")
            if len(f) > 2:
                raise ValueError("relations must be binomials or monomials")
            polys.append({e: field.coerce(c) for e, c in f.items() if field.coerce(c)})
        self.relation_polys = [f for f in polys if f]
        self.gb = buchberger(self.relation_polys, self.order, field)
        self._leads = [lead_term(g, self.order) for g in self.gb]
        self._nf_cache = {}
        self._std = None
        self._grading = False

    # -- naming helpers
    @property
    def p(self):
        return self.field.p

    @property
    def var_names(self):
        return self.u_names + self.y_names

    def exps(self, uexp=None, yexp=None):
        u = tuple(uexp) if uexp is not None else (0,) * self.n
        y = tuple(yexp) if yexp is not None else (0,) * self.d
        return u + y

    def relations(self):
        return [poly_to_binomial(f, self.n, self.order, self.field) for f in self.relation_polys]

    def gb_binomials(self):
        return [poly_to_binomial(g, self.n, self.order, self.field) for g in self.gb]

    def has_monomial_relations(self) -> bool:
        return any(len(g) == 1 for g in self.gb)

    # -- normal forms
    def nf_monomial(self, exps):
        """Normal form of the monomial ``x^exps``: ``(coeff, exps')`` or None if zero."""
        exps = tuple(exps)
        hit = self._nf_cache.get(exps)
        if hit is not None or exps in self._nf_cache:
            return hit
        K = self.field
        coeff, cur = K.one, exps
        while True:
            for lg, g in zip(self._leads, self.gb):
                if divides(lg, cur):
                    shift = mono_div(cur, lg)
                    if len(g) == 1:
                        self._nf_cache[exps] = None
                        return None
                    (te, tc), = ((e, c) for e, c in g.items() if e != lg)
                    coeff = K.mul(coeff, K.neg(tc))
                    cur = mono_mul(te, shift)
                    break
            else:
                break
        result = (coeff, cur)
        self._nf_cache[exps] = result
        return result

    def normal_form(self, f):
        """Canonical representative of a polynomial modulo I."""
        K = self.field
        out = {}
        for e, c in f.items():
            nf = self.nf_monomial(e)
            if nf is None or not c:
                continue
            cc, ee = nf
            v = K.add(out.get(ee, 0), K.mul(c, cc))
            if v:
                out[ee] = v
            else:
                out.pop(ee, None)
        return out

    def in_ideal(self, f) -> bool:
        return not self.normal_form(f)

    def monomials_equal_in_R(self, m1: Monomial, m2: Monomial) -> bool:
        return self.in_ideal(poly_add_scaled(m1.as_poly(), m2.as_poly(), self.field.neg(1), (0,) * self.nvars, self.field))

    def associate(self, e1, e2):
        """Scalar ``c`` with ``x^e1 == c * x^e2`` in R, or None."""
        a, b = self.nf_monomial(e1), self.nf_monomial(e2)
        if a is None or b is None or a[1] != b[1]:
            return None
        return self.field.mul(a[0], self.field.inv(b[0]))

    # -- bases and lengths
    def standard_monomials(self) -> StandardBasis:
        """Monomial basis (u-monomials) of R modulo the ideal of all y-variables."""
        if self._std is None:
            extra = []
            for i in range(self.d):
                e = [0] * self.nvars
                e[self.n + i] = 1
                extra.append({tuple(e): 1})
            gb = buchberger(self.relation_polys + extra, self.order, self.field)
            leads = [lead_term(g, self.order) for g in gb]
            exps = standard_exponents(leads, list(range(self.n)), self.nvars)
            self._std = StandardBasis(tuple(e[: self.n] for e in exps))
        return self._std

    def grading(self):
        """Degrees of the u-variables in Q^d making every relation homogeneous.

        y_i has degree e_i.  Returns a list of n Fraction-vectors, or None if
        no unique such grading exists.
        """
        if self._grading is not False:
            return self._grading
        rows, rhs_cols = [], []
        for f in self.relation_polys:
            if len(f) != 2:
                continue
            (e1, _), (e2, _) = f.items()
            rows.append([a - b for a, b in zip(e1[: self.n], e2[: self.n])])
            rhs_cols.append([b - a for a, b in zip(e1[self.n:], e2[self.n:])])
        if self.n == 0:
            self._grading = [] if all(all(v == 0 for v in r) for r in rhs_cols) else None
            return self._grading
        if not rows:
            self._grading = None
            return None
        cols = []
        for i in range(self.d):
            sol = solve_rational(rows, [r[i] for r in rhs_cols])
            if sol is None:
                self._grading = None
                return None
            cols.append(sol)
        self._grading = [[cols[i][j] for i in range(self.d)] for j in range(self.n)]
        return self._grading

    def degree(self, exps):
        g = self.grading()
        if g is None:
            return None
        deg = [Fraction(x) for x in exps[self.n:]]
        for j in range(self.n):
            if exps[j]:
                deg = [a + exps[j] * b for a, b in zip(deg, g[j])]
        return tuple(deg)

    def max_relation_degree(self) -> int:
        return max((sum(e) for f in self.relation_polys for e in f), default=1)

    def __repr__(self):
        return f"ToricPresentation({self.field!r}, u={self.u_names}, y={self.y_names}, {len(self.relation_polys)} relations)"


def length_artinian(pres: ToricPresentation, extra) -> int:
    """k-dimension of R modulo the extra generators (Monomials or polys)."""
    polys = list(pres.relation_polys)
    for g in extra:
        polys.append(g.as_poly() if isinstance(g, Monomial) else dict(g))
    gb = buchberger(polys, pres.order, pres.field)
    leads = [lead_term(g, pres.order) for g in gb]
    try:
        return len(standard_exponents(leads, list(range(pres.nvars)), pres.nvars))
    except InfiniteBasis as exc:
        raise NotArtinian(str(exc)) from None


def y_exponents_up_to(d: int, bound: int):
    out = []
    for deg in range(bound + 1):
        for combo in combinations_with_replacement(range(d), deg):
            e = [0] * d
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return out


def bounded_syzygy_search(generators, pres: ToricPresentation, bound: int, q: int = 1):
    """All k-linear relations among ``y^(q*mu) * g_j`` with ``|mu| <= bound``.

    Exhaustive Gaussian elimination over the field; no grading is used.
    Returns a basis of the relation space, each as ``{(j, mu): coeff}``.
    """
    K = pres.field
    mus = y_exponents_up_to(pres.d, bound)
    pivots = {}  # row monomial -> (vector, combination)
    syzygies = []
    for j, g in enumerate(generators):
        gpoly = g.as_poly() if isinstance(g, Monomial) else dict(g)
        for mu in mus:
            shift = (0,) * pres.n + tuple(q * m for m in mu)
            vec = pres.normal_form({mono_mul(e, shift): c for e, c in gpoly.items()})
            comb = {(j, mu): K.one}
            while vec:
                row = max(vec, key=pres.order.key)
                if row not in pivots:
                    pivots[row] = (vec, comb)
                    break
                pvec, pcomb = pivots[row]
                f = K.neg(K.mul(vec[row], K.inv(pvec[row])))
                vec = poly_add_scaled(vec, pvec, f, (0,) * pres.nvars, K)
                for key, c in pcomb.items():
                    v = K.add(comb.get(key, 0), K.mul(f, c))
                    if v:
                        comb[key] = v
                    else:
                        comb.pop(key, None)
            else:
                syzygies.append(comb)
    return syzygies
