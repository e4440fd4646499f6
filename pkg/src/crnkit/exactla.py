"""Exact rational linear algebra, integer lattice kernels and LP feasibility.

Matrices are plain lists of row lists holding ``int`` or ``Fraction``
entries. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[Fraction]]


def as_matrix(A: Iterable[Iterable]) -> Matrix:
    """Copy ``A`` into a fresh list-of-lists of Fractions."""
    M = [[Fraction(a) for a in row] for row in A]
    if M:
        width = len(M[0])
        if any(len(row) != width for row in M):
            raise ValueError("ragged matrix")
    return M


def shape(A: Sequence[Sequence]) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def transpose(A: Sequence[Sequence], cols: int | None = None) -> list[list]:
    if not A:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def rref(A: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns. Zero rows are dropped."""
    M = as_matrix(A)
    rows, cols = shape(M)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A: Sequence[Sequence]) -> int:
    return len(rref(A)[1])


def right_kernel(A: Sequence[Sequence], cols: int | None = None) -> Matrix:
    """Basis of ``{x : A x = 0}`` as rows, in reduced echelon form.

    ``cols`` is required when ``A`` has no rows.
    """
    n = shape(A)[1] if A else cols
    if n is None:
        raise ValueError("column count of an empty matrix is ambiguous")
    R, pivots = rref(A) if A else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return rref(basis)[0] if basis else []


def left_kernel(A: Sequence[Sequence]) -> Matrix:
    """Basis of ``{y : y^T A = 0}`` as rows, in reduced echelon form."""
    rows = len(A)
    return right_kernel(transpose(A), cols=rows)


def det(A: Sequence[Sequence]):
    """Determinant by fraction-free (Bareiss) elimination.

    Works for any exact ring of Python numbers; integer input gives an
    integer result.
    """
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0 * M[0][0]
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = M[i][j] * M[k][k] - M[i][k] * M[k][j]
                M[i][j] = num // prev if isinstance(num, int) and isinstance(prev, int) else num / prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def solve(A: Sequence[Sequence], b: Sequence) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(A)
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular system")
    return [R[i][n] for i in range(n)]


def primitive(v: Sequence) -> list[int]:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints] if g else ints


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(A: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form of an integer matrix.

    Pivots are positive, entries above a pivot lie in ``[0, pivot)``, zero
    rows are dropped. The result is a canonical basis of the row lattice.
    """
    M = [[int(x) for x in row] for row in A]
    if not M:
        return []
    rows, cols = len(M), len(M[0])
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if M[i][c] == 0:
                continue
            a, b = M[r][c], M[i][c]
            g, p, q = _xgcd(a, b)
            ra, rb = M[r], M[i]
            M[r] = [p * x + q * y for x, y in zip(ra, rb)]
            M[i] = [(a // g) * y - (b // g) * x for x, y in zip(ra, rb)]
        if M[r][c] == 0:
            continue
        if M[r][c] < 0:
            M[r] = [-x for x in M[r]]
        piv = M[r][c]
        for i in range(r):
            f = M[i][c] // piv
            if f:
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
    return M[:r]


def integer_kernel(A: Sequence[Sequence[int]], cols: int | None = None) -> list[list[int]]:
    """Saturated basis of ``ker(A) ∩ Z^cols`` in Hermite normal form.

    The basis comes from the unimodular column transform that brings ``A``
    to column echelon form, so every integer kernel vector is an integer
    combination of it.
    """
    M = [[int(x) for x in row] for row in A]
    if any(Fraction(x) != int(x) for row in A for x in row):
        raise ValueError("integer_kernel needs an integer matrix")
    n = len(M[0]) if M else cols
    if n is None:
        raise ValueError("column count of an empty matrix is ambiguous")
    # work on columns: keep C = A^T and U^T side by side as rows
    C = transpose(M, cols=n)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    k = 0
    for i in range(len(M)):
        if k == n:
            break
        for j in range(k + 1, n):
            if C[j][i] == 0:
                continue
            a, b = C[k][i], C[j][i]
            g, p, q = _xgcd(a, b)
            ck, cj, uk, uj = C[k], C[j], U[k], U[j]
            C[k] = [p * x + q * y for x, y in zip(ck, cj)]
            C[j] = [(a // g) * y - (b // g) * x for x, y in zip(ck, cj)]
            U[k] = [p * x + q * y for x, y in zip(uk, uj)]
            U[j] = [(a // g) * y - (b // g) * x for x, y in zip(uk, uj)]
        if C[k][i] != 0:
            k += 1
    return hermite_normal_form(U[k:])


def lp_feasible(A_eq, b_eq, nonneg_set=None, positive_sum_set=None, cols=None):
    """Exact feasibility of a linear system with sign constraints.

    Finds ``x`` with ``A_eq x = b_eq``, ``x_i >= 0`` for ``i`` in
    ``nonneg_set`` (default: every variable) and, when ``positive_sum_set``
    is given, ``sum(x_i for i in positive_sum_set) = 1``. Variables outside
    ``nonneg_set`` are free.

    Returns ``(feasible, witness)``; the witness is ``None`` when infeasible.
    Phase-one simplex with Bland's rule, so it always terminates.
    """
    A = [list(row) for row in A_eq]
    b = list(b_eq)
    n = len(A[0]) if A else cols
    if n is None:
        raise ValueError("column count of an empty system is ambiguous")
    if len(b) != len(A):
        raise ValueError("A_eq and b_eq disagree in length")
    nonneg = set(range(n)) if nonneg_set is None else set(nonneg_set)
    if positive_sum_set is not None:
        A.append([1 if j in set(positive_sum_set) else 0 for j in range(n)])
        b.append(1)
    # split free variables as x = x+ - x-
    free = [j for j in range(n) if j not in nonneg]
    std = [list(row) + [-row[j] for j in free] for row in A]
    ok, y = _phase_one(std, b, n + len(free))
    if not ok:
        return False, None
    x = y[:n]
    for t, j in enumerate(free):
        x[j] -= y[n + t]
    return True, x


def _phase_one(A, b, n):
    """Feasibility of ``{y >= 0 : A y = b}`` by the phase-one simplex."""
    m = len(A)
    if m == 0:
        return True, [Fraction(0)] * n
    T = []
    for i in range(m):
        row = [Fraction(a) for a in A[i]]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-a for a in row]
            rhs = -rhs
        T.append(row + [Fraction(int(k == i)) for k in range(m)] + [rhs])
    width = n + m
    basis = [n + i for i in range(m)]
    # reduced costs of the auxiliary objective: minimize the artificial sum
    cost = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if T[i][enter] > 0:
                ratio = T[i][width] / T[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # unbounded auxiliary objective cannot happen
            break
        _pivot(T, cost, best[1], enter)
        basis[best[1]] = enter
    if cost[width] != 0:
        return False, None
    y = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            y[j] = T[i][width]
    return True, y


def _pivot(T, cost, r, c):
    piv = T[r][c]
    T[r] = [x / piv for x in T[r]]
    for i, row in enumerate(T):
        if i != r and row[c] != 0:
            f = row[c]
            T[i] = [x - f * y for x, y in zip(row, T[r])]
    if cost[c] != 0:
        f = cost[c]
        cost[:] = [x - f * y for x, y in zip(cost, T[r])]
