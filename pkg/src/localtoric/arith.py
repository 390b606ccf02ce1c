"""Integer and finite-field arithmetic.

q-adic digit manipulation (adjusted remainders, digit splits, digit traces)
and the finite scalar fields F_{p^k} the engine computes over.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import sympy


@dataclass(frozen=True)
class PrimePower:
    p: int
    e: int

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.e < 1:
            raise ValueError("exponent must be positive")

    @property
    def q(self) -> int:
        return self.p ** self.e

    @classmethod
    def from_q(cls, q: int) -> "PrimePower":
        fac = sympy.factorint(q)
        if len(fac) != 1:
            raise ValueError(f"{q} is not a prime power")
        (p, e), = fac.items()
        return cls(int(p), int(e))


@dataclass(frozen=True)
class DigitSplit:
    b1: int
    b0: int
    q: int


def adjusted_remainder(b: int, m: int) -> int:
    """Representative of ``b`` modulo ``m`` taken in ``[1, m]``."""
    if m < 1:
        raise ValueError("modulus must be positive")
    r = b % m
    return r if r else m


def split_digits(b: int, q: int, m: int) -> DigitSplit:
    """Two-digit base-q expansion of ``b*(q-1)/m``."""
    if (q - 1) % m:
        raise ValueError(f"q={q} is not 1 modulo m={m}")
    if not 0 <= b < q:
        raise ValueError(f"b={b} must satisfy 0 <= b < q={q}")
    b1, b0 = divmod(b * ((q - 1) // m), q)
    return DigitSplit(b1, b0, q)


def qadic_digits(a: int, q: int) -> list[int]:
    if a < 0 or q < 2:
        raise ValueError("need a >= 0 and q >= 2")
    digits = []
    while a:
        a, r = divmod(a, q)
        digits.append(r)
    return digits


def qadic_trace(a: int, q: int) -> int:
    """Sum of the base-q digits of ``a``."""
    return sum(qadic_digits(a, q))


def _find_irreducible(p: int, k: int) -> tuple[int, ...]:
    # lowest monic irreducible of degree k in lexicographic coefficient order
    x = sympy.Symbol("x")
    for tail in product(range(p), repeat=k):
        coeffs = (1,) + tail
        if coeffs[-1] == 0:
            continue
        poly = sympy.Poly(list(coeffs), x, modulus=p)
        if poly.is_irreducible:
            return tuple(int(c) for c in reversed(coeffs))  # low degree first
    raise ValueError(f"no irreducible polynomial of degree {k} mod {p}")


class GF:
    """The field with ``p**k`` elements.

    Elements are plain ints in ``range(p**k)``; for ``k > 1`` the int encodes
    the coefficient vector (base p, low degree first) of a polynomial modulo
    a fixed irreducible.  Use :meth:`__call__` to get operator-friendly
    :class:`GFElement` wrappers.
    """

    _TABLE_LIMIT = 1 << 16

    def __init__(self, p: int, k: int = 1):
        if not sympy.isprime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        self.p = p
        self.k = k
        self.order = p ** k
        self.modulus = _find_irreducible(p, k) if k > 1 else (0, 1)
        self._exp = self._log = None
        if k > 1 and self.order <= self._TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((GF, self.p, self.k))

    def __call__(self, value) -> "GFElement":
        return GFElement(self, self.coerce(value))

    def coerce(self, value) -> int:
        if isinstance(value, GFElement):
            if value.field != self:
                raise ValueError("element of a different field")
            return value.value
        if self.k == 1:
            return int(value) % self.p
        return self._poly_to_int([int(value) % self.p])

    # -- raw polynomial encoding helpers (k > 1) --
    def _int_to_poly(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def _poly_to_int(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)[: self.k]):
            v = v * self.p + c
        return v

    def _poly_mul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        x, y = self._int_to_poly(a), self._int_to_poly(b)
        prod = [0] * (2 * k - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] = (prod[i + j] + xi * yj) % p
        mod = self.modulus
        for deg in range(2 * k - 2, k - 1, -1):
            c = prod[deg]
            if c:
                for i in range(k + 1):
                    prod[deg - k + i] = (prod[deg - k + i] - c * mod[i]) % p
        return self._poly_to_int(prod[:k])

    def _build_tables(self):
        n = self.order - 1
        for g in range(2, self.order):
            exp = [1] * n
            seen = {1}
            ok = True
            for i in range(1, n):
                exp[i] = self._poly_mul(exp[i - 1], g)
                if exp[i] in seen:
                    ok = False
                    break
                seen.add(exp[i])
            if ok:
                self._exp = exp
                self._log = {v: i for i, v in enumerate(exp)}
                return
        raise RuntimeError("no primitive element found")

    # -- field operations on raw ints --
    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        x, y = self._int_to_poly(a), self._int_to_poly(b)
        return self._poly_to_int((s + t) % self.p for s, t in zip(x, y))

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._poly_to_int((-c) % self.p for c in self._int_to_poly(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]
        return self._poly_mul(a, b)

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.k == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 1 if n == 0 else 0
        if self._exp is not None:
            return self._exp[self._log[a] * n % (self.order - 1)]
        result, base = self.one, a
        while n:
            if n & 1:
                result = self._poly_mul(result, base)
            base = self._poly_mul(base, base)
            n >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def int_mul(self, n: int, a: int) -> int:
        """The integer ``n`` acting on ``a`` (i.e. ``a + ... + a``)."""
        return self.mul(self.coerce(n), a)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1

    def elements(self):
        return range(self.order)

    def primitive_element(self) -> int:
        if self.k == 1:
            return int(sympy.primitive_root(self.p)) if self.p > 2 else 1
        if self._exp is None:
            raise NotImplementedError("field too large for table-based logarithms")
        return self._exp[1] if self.order > 2 else 1

    def log(self, a: int) -> int:
        """Discrete logarithm to the base :meth:`primitive_element`."""
        if a == 0:
            raise ValueError("log of zero")
        if self.k > 1:
            return self._log[a]
        return _prime_field_log(self.p, a)

    def qth_root(self, a: int, q: int) -> int:
        return scalar_qth_root(self, a, q)

    def format(self, a: int) -> str:
        if self.k == 1:
            return str(a)
        terms = [
            (f"{c}" if i == 0 else f"{'' if c == 1 else c}g" + (f"^{i}" if i > 1 else ""))
            for i, c in enumerate(self._int_to_poly(a)) if c
        ]
        return "+".join(reversed(terms)) or "0"


@lru_cache(maxsize=None)
def _prime_log_table(p: int) -> dict[int, int]:
    g = int(sympy.primitive_root(p)) if p > 2 else 1
    table, x = {}, 1
    for i in range(p - 1):
        table[x] = i
        x = x * g % p
    return table


def _prime_field_log(p: int, a: int) -> int:
    return _prime_log_table(p)[a % p]


def scalar_qth_root(field: GF, c: int, q: int) -> int:
    """Unique ``c'`` in ``field`` with ``c'**q == c``."""
    pp = PrimePower.from_q(q)
    if pp.p != field.p:
        raise ValueError(f"q={q} is not a power of the characteristic {field.p}")
    # Frobenius x -> x^p has order k; invert x -> x^(p^e) via x -> x^(p^(k - e mod k))
    t = (-pp.e) % field.k
    return field.pow(c, field.p ** t)


class GFElement:
    """Operator wrapper around a raw field element."""

    __slots__ = ("field", "value")

    def __init__(self, field: GF, value: int):
        self.field = field
        self.value = value

    def _other(self, other) -> int:
        return self.field.coerce(other)

    def __add__(self, other):
        return GFElement(self.field, self.field.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return GFElement(self.field, self.field.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return GFElement(self.field, self.field.sub(self._other(other), self.value))

    def __neg__(self):
        return GFElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return GFElement(self.field, self.field.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return GFElement(self.field, self.field.mul(self.value, self.field.inv(self._other(other))))

    def __pow__(self, n: int):
        return GFElement(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        try:
            return self.value == self._other(other)
        except (ValueError, TypeError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field.format(self.value)} in {self.field!r}"
