"""Length-2 p-typical Witt vectors over truncated quotients, Teichmueller
lifts, and the relation check ``tau(m1) == +-tau(m2)`` for purely toric rings.

The component formulas are written for any commutative ring whose elements
support ``+ - * **`` and integer scaling, so the same code runs over Z (where
the ghost map is an injective oracle) and over Artinian quotients.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .binomial import ToricPresentation, buchberger, poly_add_scaled, reduce_poly
from .binomial import y_exponents_up_to
from .errors import BaseMismatch, NotPurelyToric


# ---------------------------------------------------------------- generic formulas

def _carry(p, a0, b0):
    # sum_{i=1}^{p-1} (C(p,i)/p) a0^i b0^(p-i); C(p,i)/p is an exact integer
    total = None
    for i in range(1, p):
        term = (comb(p, i) // p) * (a0 ** i) * (b0 ** (p - i))
        total = term if total is None else total + term
    return total


def add_components(p, a, b):
    a0, a1 = a
    b0, b1 = b
    return a0 + b0, a1 + b1 - _carry(p, a0, b0)


def mul_components(p, a, b):
    a0, a1 = a
    b0, b1 = b
    return a0 * b0, (a0 ** p) * b1 + a1 * (b0 ** p) + p * (a1 * b1)


def neg_components(p, a):
    a0, a1 = a
    return -a0, _carry(p, a0, -a0) - a1


def ghost(p, a):
    """Ghost components ``(a0, a0^p + p a1)``; injective over Z."""
    a0, a1 = a
    return a0, a0 ** p + p * a1


# ---------------------------------------------------------------- truncated quotients

class ArtinianQuotient:
    """``k[u, y] / (I + (y)^N)``, a finite-dimensional algebra."""

    def __init__(self, pres: ToricPresentation, N: int):
        if N < 1:
            raise ValueError("truncation order must be positive")
        self.pres = pres
        self.N = N
        self.field = pres.field
        self.p = pres.p
        extra = [{(0,) * pres.n + mu: 1} for mu in y_exponents_up_to(pres.d, N) if sum(mu) == N]
        self.gb = buchberger(list(pres.relation_polys) + extra, pres.order, pres.field)

    def reduce(self, f):
        return reduce_poly(f, self.gb, self.pres.order, self.field)

    def element(self, f) -> "AElem":
        return AElem(self, self.reduce(dict(f)))

    def scalar(self, c) -> "AElem":
        c = self.field.coerce(c)
        return AElem(self, {(0,) * self.pres.nvars: c} if c else {})

    def variable(self, i) -> "AElem":
        e = [0] * self.pres.nvars
        e[i] = 1
        return self.element({tuple(e): self.field.one})

    def monomial(self, exps, coeff=1) -> "AElem":
        return self.element({tuple(exps): self.field.coerce(coeff)})

    def zero(self):
        return AElem(self, {})

    def one(self):
        return self.scalar(1)


class AElem:
    __slots__ = ("base", "f")

    def __init__(self, base: ArtinianQuotient, f):
        self.base = base
        self.f = f

    def _lift(self, other):
        if isinstance(other, AElem):
            if other.base is not self.base:
                raise BaseMismatch("elements of different quotients")
            return other
        return self.base.scalar(other)

    def __add__(self, other):
        other = self._lift(other)
        K = self.base.field
        zero = (0,) * self.base.pres.nvars
        return AElem(self.base, poly_add_scaled(self.f, other.f, K.one, zero, K))

    __radd__ = __add__

    def __neg__(self):
        K = self.base.field
        return AElem(self.base, {e: K.neg(c) for e, c in self.f.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            K = self.base.field
            c = K.coerce(other)
            return AElem(self.base, {e: K.mul(c, v) for e, v in self.f.items() if K.mul(c, v)})
        other = self._lift(other)
        K = self.base.field
        out = {}
        for e1, c1 in self.f.items():
            for e2, c2 in other.f.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = K.add(out.get(e, 0), K.mul(c1, c2))
        return self.base.element({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result, base = self.base.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (AElem, int)):
            return (self - self._lift(other)).is_zero()
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted(self.f.items())))

    def is_zero(self):
        return not self.f

    def __repr__(self):
        return f"AElem({self.f})"


# ---------------------------------------------------------------- Witt vectors

@dataclass(frozen=True)
class Witt2Element:
    a0: object
    a1: object
    p: int

    def _check(self, other):
        if not isinstance(other, Witt2Element) or other.p != self.p:
            raise BaseMismatch("Witt vectors over different primes")
        b0 = getattr(self.a0, "base", None)
        if b0 is not None and getattr(other.a0, "base", None) is not b0:
            raise BaseMismatch("Witt vectors over different bases")

    def __add__(self, other):
        return witt2_add(self, other)

    def __mul__(self, other):
        return witt2_mul(self, other)

    def __neg__(self):
        return witt2_neg(self)

    def __sub__(self, other):
        return witt2_add(self, witt2_neg(other))

    def is_zero(self):
        z = lambda x: x.is_zero() if hasattr(x, "is_zero") else x == 0
        return z(self.a0) and z(self.a1)

    def __eq__(self, other):
        if not isinstance(other, Witt2Element):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        return hash(self.p)

    def components(self):
        return self.a0, self.a1


def witt2_add(x: Witt2Element, y: Witt2Element) -> Witt2Element:
    x._check(y)
    return Witt2Element(*add_components(x.p, x.components(), y.components()), x.p)


def witt2_mul(x: Witt2Element, y: Witt2Element) -> Witt2Element:
    x._check(y)
    return Witt2Element(*mul_components(x.p, x.components(), y.components()), x.p)


def witt2_neg(x: Witt2Element) -> Witt2Element:
    return Witt2Element(*neg_components(x.p, x.components()), x.p)


def witt2_pow(x: Witt2Element, n: int) -> Witt2Element:
    result = witt2_one(x)
    for _ in range(n):
        result = witt2_mul(result, x)
    return result


def teichmuller(a, p: int) -> Witt2Element:
    zero = a * 0 if not isinstance(a, AElem) else a.base.zero()
    return Witt2Element(a, zero, p)


def witt2_one(x: Witt2Element) -> Witt2Element:
    one = x.a0.base.one() if isinstance(x.a0, AElem) else 1
    return teichmuller(one, x.p)


def witt2_integer(n: int, like: Witt2Element) -> Witt2Element:
    """The integer n inside W_2 of the base of ``like``."""
    one = witt2_one(like)
    acc = Witt2Element(like.a0 * 0, like.a1 * 0, like.p)
    step = one if n >= 0 else witt2_neg(one)
    for _ in range(abs(n)):
        acc = witt2_add(acc, step)
    return acc


def _symmetric_rep(field, c):
    # integer representative of a prime-field scalar in (-p/2, p/2]
    for n in range(field.p):
        if field.coerce(n) == c:
            return n if n <= field.p // 2 else n - field.p
    return None


def _tau_monomial(A: ArtinianQuotient, exps) -> Witt2Element:
    result = teichmuller(A.one(), A.p)
    for i, e in enumerate(exps):
        if e:
            result = witt2_mul(result, witt2_pow(teichmuller(A.variable(i), A.p), e))
    return result


@dataclass(frozen=True)
class RelationCheck:
    relation: str
    coefficient: int
    passed: bool
    difference: tuple


def witt_transform_check(pres: ToricPresentation, N: int | None = None, require_pure: bool = True):
    """For each relation ``m1 = c m2`` test ``tau(m1) == c tau(m2)`` in W_2(R/(I + y^N)).

    ``c`` must be +-1 unless ``require_pure`` is off; other prime-field
    scalars are then used through their integer representative.
    """
    K = pres.field
    if N is None:
        N = 2 * pres.max_relation_degree()
    A = ArtinianQuotient(pres, N)
    reports = []
    for f in pres.relation_polys:
        if len(f) != 2:
            raise NotPurelyToric("relation is not a binomial")
        (e1, c1), (e2, c2) = sorted(f.items(), key=lambda t: pres.order.key(t[0]), reverse=True)
        c = K.neg(K.mul(c2, K.inv(c1)))  # m1 = c * m2
        n = _symmetric_rep(K, c)
        if n not in (1, -1):
            if require_pure:
                raise NotPurelyToric(f"relation coefficient {K.format(c)} is not +-1")
        lhs = _tau_monomial(A, e1)
        m2 = _tau_monomial(A, e2)
        if n is None:
            rhs = witt2_mul(teichmuller(A.scalar(c), A.p), m2)
        else:
            rhs = witt2_mul(witt2_integer(n, m2), m2)
        diff = witt2_add(lhs, witt2_neg(rhs))
        name = f"{_mono(pres, e1)} = {'' if n == 1 else str(n) + '*'}{_mono(pres, e2)}"
        reports.append(RelationCheck(name, n if n is not None else c, diff.is_zero(), (diff.a0.f, diff.a1.f)))
    return {"N": N, "p": pres.p, "relations": reports, "ok": all(r.passed for r in reports)}


def _mono(pres, exps):
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(pres.var_names, exps) if e]
    return "*".join(parts) or "1"
