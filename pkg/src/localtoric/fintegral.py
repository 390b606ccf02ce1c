"""Affine semigroups: normalization, q-integral and F-integral closures,
power-integral elements and fraction-field degrees.

All closures are computed exactly.  When every coordinate axis contains a
generator multiple ``a_i e_i`` the base semigroup ``B = (+) a_i N e_i`` lies
in the semigroup, and every set handled here is a finite union of
translates ``rho + B``.  Such a set is stored by its minimal translates per
residue class modulo ``L = (+) a_i Z e_i`` (:class:`ClassModule`).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import gcd, lcm

from .errors import InfiniteIndex, NotFull
from .lattice import hermite_basis, lattice_index, lattice_rank


@dataclass(frozen=True)
class AffineSemigroup:
    rank: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(sorted({tuple(int(x) for x in g) for g in self.generators}))
        object.__setattr__(self, "generators", gens)
        if any(len(g) != self.rank for g in gens):
            raise ValueError("generator length does not match rank")
        if any(x < 0 for g in gens for x in g):
            raise ValueError("generators must lie in N^e")
        if any(not any(g) for g in gens):
            raise ValueError("generators must be nonzero")

    def axis_steps(self):
        """Smallest ``a_i`` with ``a_i e_i`` a generator, or None when some axis has none."""
        steps = []
        for i in range(self.rank):
            cands = [g[i] for g in self.generators if g[i] and all(x == 0 for j, x in enumerate(g) if j != i)]
            if not cands:
                return None
            steps.append(min(cands))
        return tuple(steps)


@dataclass(frozen=True)
class FractionMonomial:
    """A Laurent monomial, i.e. an exponent vector in Z^e."""

    exps: tuple

    def in_group_of(self, gamma: AffineSemigroup) -> bool:
        return in_group(self.exps, gamma)


def image_semigroup(phi) -> AffineSemigroup:
    """Image of the parametrization ``y_i -> t_i^(s_i)``, ``u_j -> t^(s * row_j)``.

    ``s_i`` is the least common denominator of column i of the matrix, so
    every generator is integral and the base semigroup is ``(+) s_i N e_i``.
    """
    d = phi.d
    scales = [lcm(*(row[i].denominator for row in phi.rows)) for i in range(d)]
    gens = [tuple(s * int(i == j) for j, s in enumerate(scales)) for i in range(d)]
    gens += [tuple(int(s * x) for s, x in zip(scales, row)) for row in phi.rows]
    return AffineSemigroup(d, tuple(gens))


def base_semigroup(gamma: AffineSemigroup) -> AffineSemigroup:
    steps = _require_steps(gamma)
    return AffineSemigroup(gamma.rank, tuple(tuple(a * int(i == j) for j in range(gamma.rank))
                                             for i, a in enumerate(steps)))


def group_hull(gamma: AffineSemigroup):
    return hermite_basis(gamma.generators)


def in_group(v, gamma: AffineSemigroup) -> bool:
    basis = group_hull(gamma)
    return hermite_basis(list(basis) + [list(v)]) == basis


def semigroup_membership(v, gamma: AffineSemigroup) -> bool:
    """Exact membership by recursion on generators (no bound needed)."""
    return _member(tuple(int(x) for x in v), gamma.generators)


@lru_cache(maxsize=None)
def _member(v, gens) -> bool:
    if any(x < 0 for x in v):
        return False
    if not any(v):
        return True
    return any(
        _member(tuple(a - b for a, b in zip(v, g)), gens)
        for g in gens
        if all(b <= a for a, b in zip(v, g))
    )


# ---------------------------------------------------------------- class modules

def _leq(a, b):
    return all(x <= y for x, y in zip(a, b))


def _minimal(points):
    pts = sorted(set(points), key=sum)
    out = []
    for p in pts:
        if not any(_leq(r, p) for r in out):
            out.append(p)
    return tuple(sorted(out))


@dataclass(frozen=True)
class ClassModule:
    """Union of translates ``rho + B`` stored as minimal rho per residue class."""

    steps: tuple
    reps: tuple  # sorted tuple of (class key, tuple of minimal reps)

    @classmethod
    def build(cls, steps, points):
        by_key = {}
        for p in points:
            by_key.setdefault(tuple(x % a for x, a in zip(p, steps)), []).append(tuple(p))
        return cls(tuple(steps), tuple(sorted((k, _minimal(v)) for k, v in by_key.items())))

    def key(self, w):
        return tuple(x % a for x, a in zip(w, self.steps))

    def class_reps(self, key):
        return dict(self.reps).get(tuple(key), ())

    def all_reps(self):
        return [r for _, rs in self.reps for r in rs]

    def __contains__(self, w):
        w = tuple(w)
        if any(x < 0 for x in w):
            return False
        return any(_leq(r, w) for r in self.class_reps(self.key(w)))

    def issubset(self, other: "ClassModule") -> bool:
        return all(r in other for r in self.all_reps())

    def same_set(self, other: "ClassModule") -> bool:
        return self.issubset(other) and other.issubset(self)

    def generators(self):
        """Irreducible elements, assuming the set is closed under addition."""
        cands = set(self.all_reps())
        for i, a in enumerate(self.steps):
            e = [0] * len(self.steps)
            e[i] = a
            cands.add(tuple(e))
        out = []
        for w in sorted(c for c in cands if any(c)):
            if w in self and not self._reducible(w):
                out.append(w)
        return sorted(out)

    def _reducible(self, w):
        for x in product(*(range(c + 1) for c in w)):
            if any(x) and x != w and x in self and tuple(a - b for a, b in zip(w, x)) in self:
                return True
        return False


def _require_steps(gamma: AffineSemigroup):
    steps = gamma.axis_steps()
    if steps is None:
        raise NotFull("every coordinate axis must contain a generator multiple")
    return steps


def _order_mod(g, steps):
    o = 1
    for x, a in zip(g, steps):
        k = a // gcd(a, x % a) if x % a else 1
        o = o * k // gcd(o, k)
    return o


def semigroup_module(gamma: AffineSemigroup) -> ClassModule:
    steps = _require_steps(gamma)
    gens = [g for g in gamma.generators if _order_mod(g, steps) > 1]
    points = []
    for coeffs in product(*(range(_order_mod(g, steps)) for g in gens)):
        points.append(tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(gamma.rank)))
    return ClassModule.build(steps, points)


def _group_classes(gamma: AffineSemigroup, steps):
    """Residues of grp(Gamma) modulo L, as minimal nonnegative vectors."""
    seen = {tuple(0 for _ in steps)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for c in frontier:
            for g in gamma.generators:
                k = tuple((x + y) % a for x, y, a in zip(c, g, steps))
                if k not in seen:
                    seen.add(k)
                    nxt.append(k)
        frontier = nxt
    return sorted(seen)


def normalization_module(gamma: AffineSemigroup) -> ClassModule:
    steps = _require_steps(gamma)
    return ClassModule.build(steps, _group_classes(gamma, steps))


def normalization(gamma: AffineSemigroup):
    """Generators of grp(Gamma) intersected with the (orthant) cone of Gamma."""
    return normalization_module(gamma).generators()


def _ceil_div(a, b):
    return -(-a // b)


def q_integral_module(gamma: AffineSemigroup, q: int) -> ClassModule:
    if q < 2:
        raise ValueError("q must be at least 2")
    steps = _require_steps(gamma)
    base = semigroup_module(gamma)
    points = []
    for r in _group_classes(gamma, steps):
        target = base.key(tuple(q * x for x in r))
        for rho in base.class_reps(target):
            t = [max(0, _ceil_div(p - q * x, q * a)) for p, x, a in zip(rho, r, steps)]
            points.append(tuple(x + a * ti for x, a, ti in zip(r, steps, t)))
    return ClassModule.build(steps, points)


def q_integral_closure(gamma: AffineSemigroup, q: int):
    """Generators of ``{g in grp(Gamma) : q g in Gamma}``."""
    return q_integral_module(gamma, q).generators()


def f_normalization_module(gamma: AffineSemigroup, p: int):
    """Stable q-integral closure along q = p, p^2, ... and the stabilizing q.

    ``P_q == P_{qp}`` forces ``P_{qp} == P_{qp^2}``, so the first repeat is final.
    """
    q = p
    cur = q_integral_module(gamma, q)
    while True:
        nxt = q_integral_module(gamma, q * p)
        if nxt.same_set(cur):
            return cur, q
        q *= p
        cur = nxt


def f_normalization(gamma: AffineSemigroup, p: int):
    mod, q = f_normalization_module(gamma, p)
    return mod.generators(), q


def _support(v):
    return {i for i, x in enumerate(v) if x}


def is_power_integral(v, gamma: AffineSemigroup) -> bool:
    """``m v in Gamma`` for all large m (membership read in the ring, not its fractions).

    The multiples in a fixed residue class of m modulo the order of v are
    either eventually all in Gamma or none are, and the good residues form a
    subgroup; so it suffices to find a translate of v's own class supported
    inside supp(v).
    """
    v = tuple(v)
    if any(x < 0 for x in v) or not in_group(v, gamma):
        return False
    base = semigroup_module(gamma)
    supp = _support(v)
    return any(_support(rho) <= supp for rho in base.class_reps(base.key(v)))


def power_integral_module(gamma: AffineSemigroup) -> ClassModule:
    steps = _require_steps(gamma)
    points = []
    for r in _group_classes(gamma, steps):
        for t in product((0, 1), repeat=gamma.rank):
            v = tuple(x + a * ti for x, a, ti in zip(r, steps, t))
            if is_power_integral(v, gamma):
                points.append(v)
    return ClassModule.build(steps, points)


def power_integral(gamma: AffineSemigroup):
    return power_integral_module(gamma).generators()


def multiples_in(v, gamma: AffineSemigroup, bound: int):
    """``{m <= bound : m v in Gamma}`` by direct membership."""
    return [m for m in range(1, bound + 1) if semigroup_membership([m * x for x in v], gamma)]


def frac_degree(gamma: AffineSemigroup, base: AffineSemigroup) -> int:
    """Index ``[grp(Gamma) : grp(base)]``."""
    if base.rank != gamma.rank:
        raise ValueError("rank mismatch")
    if lattice_rank(base.generators) != base.rank or lattice_rank(gamma.generators) != gamma.rank:
        raise InfiniteIndex("semigroup is not full rank")
    if not all(in_group(g, gamma) for g in base.generators):
        raise ValueError("base is not contained in the group of Gamma")
    return lattice_index(base.generators, base.rank) // lattice_index(gamma.generators, gamma.rank)
