"""Bipartite toric presentations R(S, Gamma, phi, chi) and the families T_{d,n,m}."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .arith import GF
from .binomial import (
    ToricPresentation,
    buchberger,
    grevlex,
    lead_term,
    poly_to_binomial,
)
from .errors import (
    ConstraintViolated,
    InconsistentCharacter,
    NoSolutionInField,
    NotFull,
    NotIntegral,
    Wild,
)
from .lattice import integer_kernel, lattice_rank, solve_mod


@dataclass(frozen=True)
class Semigroup:
    """Finitely generated full sub-semigroup of N^n, given by generators."""

    rank: int
    generators: tuple

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        if any(len(g) != self.rank for g in gens):
            raise ValueError("generator length does not match rank")
        if any(x < 0 for g in gens for x in g):
            raise ValueError("generators must lie in N^n")
        if lattice_rank(gens) != self.rank:
            raise NotFull("generators do not span Q^n")
        for i in range(self.rank):
            if self.axis_multiple(i) is None:
                raise NotFull(f"no generator is a multiple of the axis vector e_{i}")

    def axis_multiple(self, i):
        """Smallest generator that is a positive multiple of the i-th axis vector."""
        best = None
        for g in self.generators:
            if g[i] > 0 and all(x == 0 for j, x in enumerate(g) if j != i):
                best = g[i] if best is None else min(best, g[i])
        return best


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class PhiMatrix:
    """Rational n x d matrix; a semigroup element gamma maps to gamma @ A."""

    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(_frac(x) for x in r) for r in self.rows))

    @property
    def n(self):
        return len(self.rows)

    @property
    def d(self):
        return len(self.rows[0]) if self.rows else 0

    def image(self, gamma):
        return tuple(
            sum((g * self.rows[j][i] for j, g in enumerate(gamma)), Fraction(0))
            for i in range(self.d)
        )

    def common_denominator(self) -> int:
        return lcm(*(x.denominator for r in self.rows for x in r)) if self.rows else 1


@dataclass(frozen=True)
class BipartiteData:
    semigroup: Semigroup
    phi: PhiMatrix
    field: GF
    chi: tuple | None = None  # one field element per generator; None is trivial
    y_names: tuple | None = None
    u_names: tuple | None = None

    def character(self):
        gens = self.semigroup.generators
        if self.chi is None:
            return (self.field.one,) * len(gens)
        return tuple(self.field.coerce(c) for c in self.chi)

    def names(self):
        n, d = self.phi.n, self.phi.d
        u = self.u_names or (("u", "v")[:n] if n <= 2 else tuple(f"u{i + 1}" for i in range(n)))
        y = self.y_names or (("x", "y", "z")[:d] if d <= 3 else tuple(f"y{i + 1}" for i in range(d)))
        return tuple(y), tuple(u)


@dataclass(frozen=True)
class IntegralityReport:
    images: tuple  # (generator, image) pairs; image entries are Fractions
    failures: tuple

    @property
    def ok(self):
        return not self.failures


def check_integral(A: PhiMatrix, gamma: Semigroup) -> IntegralityReport:
    images, failures = [], []
    for g in gamma.generators:
        img = A.image(g)
        images.append((g, img))
        if any(x.denominator != 1 or x < 0 for x in img):
            failures.append(g)
    return IntegralityReport(tuple(images), tuple(failures))


def _check_character(data: BipartiteData):
    K = data.field
    chi = data.character()
    gens = data.semigroup.generators
    if len(chi) != len(gens):
        raise InconsistentCharacter("one character value per generator required")
    if any(c == 0 for c in chi):
        raise InconsistentCharacter("character values must be units")
    cols = [[g[i] for g in gens] for i in range(data.semigroup.rank)]
    for rel in integer_kernel(cols):
        val = K.one
        for c, e in zip(chi, rel):
            val = K.mul(val, K.pow(c, e))
        if val != K.one:
            raise InconsistentCharacter(f"character violates the generator relation {rel}")


def build_bipartite(data: BipartiteData) -> ToricPresentation:
    if data.phi.n != data.semigroup.rank:
        raise ValueError("matrix row count must equal semigroup rank")
    report = check_integral(data.phi, data.semigroup)
    if not report.ok:
        raise NotIntegral(f"matrix not integral on generators {list(report.failures)}", failures=report.failures)
    _check_character(data)
    K = data.field
    n, d = data.phi.n, data.phi.d
    polys = []
    for (g, img), c in zip(report.images, data.character()):
        lead = tuple(g) + (0,) * d
        tail = (0,) * n + tuple(int(x) for x in img)
        polys.append({lead: K.one, tail: K.neg(c)})
    y_names, u_names = data.names()
    return ToricPresentation(K, y_names, u_names, polys)


@dataclass(frozen=True)
class NoetherReport:
    finite: bool
    reduction: bool
    row_sums: tuple
    norm_inequality: bool


def check_noether_normalization(data: BipartiteData) -> NoetherReport:
    """Finiteness over k[y] and whether (y) is a reduction of the maximal ideal."""
    gamma, A = data.semigroup, data.phi
    finite = all(gamma.axis_multiple(i) is not None for i in range(gamma.rank))
    row_sums = tuple(sum(r, Fraction(0)) for r in A.rows)
    norm_ok = all(sum(A.image(g)) >= sum(g) for g in gamma.generators)
    return NoetherReport(finite, all(s > 1 for s in row_sums), row_sums, norm_ok)


def is_tame(A: PhiMatrix, p: int) -> bool:
    if lattice_rank([[x * A.common_denominator() for x in r] for r in A.rows]) != A.n:
        return False
    return all(x.denominator % p for r in A.rows for x in r)


# ---------------------------------------------------------------- families

@dataclass(frozen=True)
class FamilyTParams:
    """Data of a ring in T_{d,n,m}.

    Relations ``u_i^m - a_i y^alpha_i`` and ``u_i u_j - b_ij y^beta_ij`` with
    ``a_i a_j = b_ij^m`` and ``alpha_i + alpha_j = m beta_ij``.  For odd m
    only n = 2 is allowed.
    """

    d: int
    n: int
    m: int
    alphas: tuple
    betas: dict  # (i, j) with i < j -> exponent tuple
    a: tuple
    b: dict  # (i, j) -> scalar

    @classmethod
    def odd(cls, d, m, alpha1, alpha2, beta, a=1, b=1, c=1):
        return cls(d, 2, m, (tuple(alpha1), tuple(alpha2)), {(0, 1): tuple(beta)}, (a, b), {(0, 1): c})

    def pairs(self):
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]

    def validate(self, K: GF):
        if self.m < 2:
            raise ConstraintViolated("m must be at least 2")
        if self.m != 2 and (self.m % 2 == 0 or self.n != 2):
            raise ConstraintViolated("odd-m families require n = 2; even m must be 2")
        if len(self.alphas) != self.n or len(self.a) != self.n:
            raise ConstraintViolated("need one alpha and one a per u-variable")
        if any(len(al) != self.d for al in self.alphas):
            raise ConstraintViolated("alpha length must be d")
        for i, j in self.pairs():
            beta = self.betas.get((i, j))
            if beta is None or (i, j) not in self.b:
                raise ConstraintViolated(f"missing beta/b for pair {(i, j)}")
            if tuple(x + y for x, y in zip(self.alphas[i], self.alphas[j])) != tuple(self.m * x for x in beta):
                raise ConstraintViolated(f"alpha{i + 1} + alpha{j + 1} != {self.m}*beta{i + 1}{j + 1}")
            lhs = K.mul(K.coerce(self.a[i]), K.coerce(self.a[j]))
            if lhs != K.pow(K.coerce(self.b[(i, j)]), self.m):
                raise ConstraintViolated(f"a{i + 1}*a{j + 1} != b{i + 1}{j + 1}^{self.m}")
        if any(K.coerce(x) == 0 for x in list(self.a) + list(self.b.values())):
            raise ConstraintViolated("coefficients must be units")

    def to_bipartite(self, K: GF, y_names=None, u_names=None) -> BipartiteData:
        gens, chi = [], []
        for i in range(self.n):
            g = [0] * self.n
            g[i] = self.m
            gens.append(tuple(g))
            chi.append(K.coerce(self.a[i]))
        for i, j in self.pairs():
            g = [0] * self.n
            g[i] = g[j] = 1
            gens.append(tuple(g))
            chi.append(K.coerce(self.b[(i, j)]))
        rows = [tuple(Fraction(x, self.m) for x in al) for al in self.alphas]
        return BipartiteData(Semigroup(self.n, tuple(gens)), PhiMatrix(tuple(rows)), K, tuple(chi), y_names, u_names)


def build_family_T(params: FamilyTParams, K: GF, y_names=None, u_names=None) -> ToricPresentation:
    params.validate(K)
    n, d = params.n, params.d
    polys = []
    for i in range(n):
        lead = [0] * (n + d)
        lead[i] = params.m
        polys.append({tuple(lead): K.one, (0,) * n + tuple(params.alphas[i]): K.neg(K.coerce(params.a[i]))})
    for i, j in params.pairs():
        lead = [0] * (n + d)
        lead[i] = lead[j] = 1
        polys.append({tuple(lead): K.one, (0,) * n + tuple(params.betas[(i, j)]): K.neg(K.coerce(params.b[(i, j)]))})
    data = params.to_bipartite(K, y_names, u_names)
    y, u = data.names()
    return ToricPresentation(K, y, u, polys)


def relation_set(pres: ToricPresentation):
    """Relations as a set of monic normalized term tuples, for comparisons."""
    K = pres.field
    out = set()
    for f in pres.relation_polys:
        lt = lead_term(f, pres.order)
        inv = K.inv(f[lt])
        out.add(tuple(sorted((e, K.mul(c, inv)) for e, c in f.items())))
    return out


# ---------------------------------------------------------------- characters

@dataclass(frozen=True)
class CharacterTrivialization:
    h: tuple  # raw elements of ``field``; new variable y'_i = h_i * y_i
    field: GF
    extension_degree: int  # degree of ``field`` over the input field
    presentation: ToricPresentation  # trivial-character presentation over ``field``
    original: ToricPresentation  # the input presentation, over ``field``


def _embedding(small: GF, big: GF):
    """A field embedding small -> big as a function on raw ints."""
    if small == big:
        return lambda a: a
    if small.k == 1:
        return big.coerce
    mod = small.modulus
    for r in big.elements():
        acc, power = 0, big.one
        for c in mod:
            acc = big.add(acc, big.mul(big.coerce(c), power))
            power = big.mul(power, r)
        if acc == 0:
            root = r
            break
    else:
        raise ValueError("no embedding found")

    def embed(a):
        acc, power = 0, big.one
        for c in small._int_to_poly(a):
            acc = big.add(acc, big.mul(big.coerce(c), power))
            power = big.mul(power, root)
        return acc

    return embed


def substitute_y(pres: ToricPresentation, h, field: GF | None = None) -> ToricPresentation:
    """Apply ``y_i -> h_i * y_i`` to every relation."""
    K = field or pres.field
    polys = []
    for f in pres.relation_polys:
        g = {}
        for e, c in f.items():
            v = K.coerce(c) if field is None else c
            for i, hi in enumerate(h):
                v = K.mul(v, K.pow(hi, e[pres.n + i]))
            g[e] = v
        polys.append(g)
    return ToricPresentation(K, pres.y_names, pres.u_names, polys, pres.order)


def _change_field(pres: ToricPresentation, K: GF, embed) -> ToricPresentation:
    polys = [{e: embed(c) for e, c in f.items()} for f in pres.relation_polys]
    return ToricPresentation(K, pres.y_names, pres.u_names, polys, pres.order)


def trivialize_character(data: BipartiteData, max_extension: int = 6) -> CharacterTrivialization:
    """Find h with h^phi(gamma) = chi(gamma) and the purely toric presentation."""
    K = data.field
    if not is_tame(data.phi, K.p):
        raise Wild(f"matrix is not tame at p={K.p}")
    original = build_bipartite(data)
    gens = data.semigroup.generators
    images = [[int(x) for x in data.phi.image(g)] for g in gens]
    chi = data.character()
    d = data.phi.d
    for j in range(1, max_extension + 1):
        if K.order ** j > GF._TABLE_LIMIT and j > 1:
            break
        big = K if j == 1 else GF(K.p, K.k * j)
        embed = _embedding(K, big)
        N = big.order - 1
        rhs = [big.log(embed(c)) for c in chi]
        x = solve_mod(images, rhs, N) if N > 1 else [0] * d
        if x is None:
            continue
        g = big.primitive_element()
        h = tuple(big.pow(g, xi) for xi in x)
        for img, c in zip(images, chi):
            val = big.one
            for hi, e in zip(h, img):
                val = big.mul(val, big.pow(hi, e))
            assert val == embed(c)
        orig_big = _change_field(original, big, embed)
        trivial = BipartiteData(data.semigroup, data.phi, big, None, *data.names())
        return CharacterTrivialization(h, big, j, build_bipartite(trivial), orig_big)
    raise NoSolutionInField(
        f"no solution in extensions of degree <= {max_extension}",
        max_degree_attempted=max_extension,
    )


# ---------------------------------------------------------------- kernel

@dataclass(frozen=True)
class Parametrization:
    scale: int  # y_i -> y_i^scale
    u_images: tuple  # u_j -> y^(scale * row_j)
    generators: tuple  # BinomialElements generating the kernel
    presentation: ToricPresentation  # k[u, y] / kernel


def _permute(f, perm):
    return {tuple(e[i] for i in perm): c for e, c in f.items()}


def saturate_by_variables(polys, weights, K: GF):
    """``(polys) : (x_1 ... x_N)^infinity`` for an ideal homogeneous w.r.t. positive weights."""
    nv = len(weights)
    current = [dict(f) for f in polys]
    for k in range(nv):
        perm = [i for i in range(nv) if i != k] + [k]
        inv = [perm.index(i) for i in range(nv)]
        order = grevlex(nv, [weights[i] for i in perm])
        gb = buchberger([_permute(f, perm) for f in current], order, K)
        divided = []
        for g in gb:
            t = min(e[-1] for e in g)
            divided.append({e[:-1] + (e[-1] - t,): c for e, c in g.items()})
        current = [_permute(f, inv) for f in divided]
    return current


def parametrization_kernel(data: BipartiteData) -> Parametrization:
    """Prime kernel of ``u_j -> y^(a*row_j), y_i -> y_i^a`` (trivial character)."""
    if data.chi is not None and any(c != data.field.one for c in data.character()):
        raise ValueError("trivialize the character first")
    K = data.field
    a = data.phi.common_denominator()
    n, d = data.phi.n, data.phi.d
    u_images = tuple(tuple(int(a * x) for x in row) for row in data.phi.rows)
    columns = list(u_images) + [tuple(a * int(i == j) for j in range(d)) for i in range(d)]
    matrix = [[col[i] for col in columns] for i in range(d)]
    polys = []
    for v in integer_kernel(matrix):
        plus = tuple(max(x, 0) for x in v)
        minus = tuple(max(-x, 0) for x in v)
        polys.append({plus: K.one, minus: K.neg(K.one)})
    weights = [sum(col) for col in columns]
    gens = saturate_by_variables(polys, weights, K)
    y_names, u_names = data.names()
    pres = ToricPresentation(K, y_names, u_names, gens)
    gens_b = tuple(poly_to_binomial(g, n, pres.order, pres.field) for g in pres.gb)
    return Parametrization(a, u_images, gens_b, pres)
