"""Naive intersection lengths and the length-quotient formula for chi."""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import sympy

from .arith import GF
from .binomial import InfiniteBasis, buchberger, grevlex, lead_term, standard_exponents
from .errors import NotArtinian, ZeroDenominator


@dataclass(frozen=True)
class Ambient:
    field: GF
    names: tuple

    @property
    def nvars(self):
        return len(self.names)


@dataclass(frozen=True)
class IntersectionInput:
    ambient: Ambient
    A: tuple
    B: tuple
    len_M_at_p: int | None = None
    len_N_at_q: int | None = None


def parse_poly(text: str, ambient: Ambient):
    """Polynomial text (sympy syntax, ``^`` allowed) to an exponent dict over the field."""
    K = ambient.field
    gens = sympy.symbols(ambient.names)
    expr = sympy.sympify(text.replace("^", "**"), locals={n: g for n, g in zip(ambient.names, gens)})
    out = {}
    for exps, c in sympy.Poly(expr, *gens).as_dict().items():
        c = sympy.Rational(c)
        val = K.mul(K.coerce(int(c.p)), K.inv(K.coerce(int(c.q))))
        if val:
            out[tuple(int(e) for e in exps)] = val
    return out


def _as_poly(f, ambient):
    return parse_poly(f, ambient) if isinstance(f, str) else dict(f)


def quotient_length(ideal, ambient: Ambient) -> int:
    order = grevlex(ambient.nvars)
    gb = buchberger([_as_poly(f, ambient) for f in ideal], order, ambient.field)
    leads = [lead_term(g, order) for g in gb]
    try:
        return len(standard_exponents(leads, list(range(ambient.nvars)), ambient.nvars))
    except InfiniteBasis as exc:
        raise NotArtinian(str(exc)) from None


def tensor_length(A, B, ambient: Ambient) -> int:
    """``l(P/A (x) P/B) = dim P/(A+B)`` for ideals of the ambient polynomial ring."""
    return quotient_length(list(A) + list(B), ambient)


@dataclass(frozen=True)
class ChiResult:
    value: Fraction
    integral: bool


def chi_from_mcm_lengths(tensor_len, len_M_at_p, len_N_at_q) -> ChiResult:
    if not len_M_at_p or not len_N_at_q:
        raise ZeroDenominator("localization lengths must be positive")
    if Fraction(len_M_at_p) < 0 or Fraction(len_N_at_q) < 0:
        raise ZeroDenominator("localization lengths must be positive")
    v = Fraction(tensor_len) / (Fraction(len_M_at_p) * Fraction(len_N_at_q))
    return ChiResult(v, v.denominator == 1)


def localization_length_free_mcm(rank: int, frac_deg: int) -> Fraction:
    """Length of Q at the minimal prime for Q free of this rank over S."""
    if not frac_deg:
        raise ZeroDenominator("fraction-field degree must be positive")
    v = Fraction(rank, frac_deg)
    if v.denominator != 1:
        warnings.warn(f"rank {rank} is not divisible by degree {frac_deg}", stacklevel=2)
    return v


def tor_vanishing_bound(pd_M: int, pd_N: int, d: int) -> int:
    return max(pd_M + pd_N - d, 0)


def chi(inp: IntersectionInput) -> ChiResult:
    ell = tensor_length(inp.A, inp.B, inp.ambient)
    return chi_from_mcm_lengths(ell, inp.len_M_at_p or 1, inp.len_N_at_q or 1)
