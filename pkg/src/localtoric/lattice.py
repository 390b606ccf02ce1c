"""Integer lattice helpers: kernels, Smith form with transforms, Hermite bases."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form


def _copy(a):
    return [list(map(int, row)) for row in a]


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a):
    """Return ``(U, D, V)`` with ``U @ a @ V == D`` and U, V unimodular.

    ``D`` is diagonal with d_1 | d_2 | ... (nonnegative).
    """
    A = _copy(a)
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _identity(m), _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, f):  # row_dst += f * row_src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, f):
        for row in A:
            row[dst] += f * row[src]
        for row in V:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        done = False
                        if abs(A[i][t]) < abs(A[t][t]):
                            swap_rows(t, i)
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        done = False
                        if abs(A[t][j]) < abs(A[t][t]):
                            swap_cols(t, j)
            if done:
                # divisibility condition on the remaining block
                bad = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                     if A[i][j] % A[t][t]),
                    None,
                )
                if bad is None:
                    break
                add_row(bad[0], t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, A, V


def integer_kernel(a):
    """A Z-basis of ``{x in Z^n : a @ x == 0}`` for an integer m x n matrix."""
    if not a:
        return []
    n = len(a[0])
    U, D, V = smith_normal_form(a)
    rank = sum(1 for i in range(min(len(D), n)) if D[i][i])
    return [[V[r][c] for r in range(n)] for c in range(rank, n)]


def hermite_basis(vectors):
    """Canonical (row-style Hermite) basis of the subgroup of Z^e spanned by ``vectors``."""
    vectors = [list(map(int, v)) for v in vectors if any(v)]
    if not vectors:
        return []
    # sympy's HNF works on column spans; feed the generators as columns
    h = hermite_normal_form(Matrix(vectors).T)
    basis = [list(map(int, h.col(j))) for j in range(h.cols) if any(h.col(j))]
    return sorted(basis, reverse=True)


def lattice_rank(vectors) -> int:
    vectors = [list(v) for v in vectors]
    if not vectors:
        return 0
    return Matrix(vectors).rank()


def lattice_index(vectors, dim: int) -> int | None:
    """Index of the span of ``vectors`` in Z^dim, or None when it has lower rank."""
    basis = hermite_basis(vectors)
    if len(basis) != dim:
        return None
    return abs(int(Matrix(basis).det()))


def solve_mod(a, b, modulus: int):
    """One solution ``x`` of ``a @ x == b (mod modulus)``, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    U, D, V = smith_normal_form(a)
    c = [sum(U[i][j] * b[j] for j in range(m)) % modulus for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i] % modulus:
                return None
            continue
        g = gcd(d, modulus)
        if c[i] % g:
            return None
        y[i] = (c[i] // g) * pow(d // g, -1, modulus // g) % (modulus // g) if modulus // g > 1 else 0
    return [sum(V[i][j] * y[j] for j in range(n)) % modulus for i in range(n)]


def solve_rational(rows, rhs):
    """Unique rational solution of a linear system, or None if not unique/inconsistent."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    aug = [[Fraction(x) for x in row] + [Fraction(r)] for row, r in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if any(all(x == 0 for x in row[:n]) and row[n] != 0 for row in aug):
        return None
    if len(piv_cols) < n:
        return None
    sol = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        sol[c] = aug[i][n]
    return sol
