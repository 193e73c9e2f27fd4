"""Exact linear algebra for small dense matrices.

Integer determinants use fraction-free (Bareiss) elimination, rational
solves use plain Gaussian elimination over `Fraction`, and the Smith normal
form keeps the left transform together with its inverse so cokernel
coordinates and generator pullbacks stay exact.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import InternalError


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def determinant(rows) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(r) for r in rows]
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def is_positive_definite(rows) -> bool:
    """True iff every leading principal minor of the integer matrix is > 0."""
    n = len(rows)
    for k in range(1, n + 1):
        minor = determinant([r[:k] for r in rows[:k]])
        if minor <= 0:
            return False
    return True


def solve(rows, rhs) -> list[Fraction]:
    """Solve A x = b exactly; raises ValueError on a singular matrix."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


def invert(rows) -> list[list[Fraction]]:
    """Exact inverse of a square integer or rational matrix."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("singular matrix")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def smith_normal_form(rows):
    """Diagonalise an integer matrix by unimodular row/column operations.

    Returns ``(d, u, uinv, v)`` with ``u @ A @ v`` diagonal with entries
    ``d`` satisfying ``d[i] >= 0`` and ``d[i] | d[i+1]``, ``u`` and ``v``
    unimodular, and ``uinv`` the exact inverse of ``u``.
    """
    a = [list(r) for r in rows]
    n = len(a)
    m = len(a[0]) if n else 0
    u = identity(n)
    uinv = identity(n)
    v = identity(m)

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def row_negate(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    def row_add(i, j, q):
        # row_i += q * row_j;  uinv column_j -= q * column_i
        a[i] = [x + q * y for x, y in zip(a[i], a[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        for r in uinv:
            r[j] -= q * r[i]

    def col_swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def col_negate(j):
        for r in a:
            r[j] = -r[j]
        for r in v:
            r[j] = -r[j]

    def col_add(j, k, q):
        # col_j += q * col_k
        for r in a:
            r[j] += q * r[k]
        for r in v:
            r[j] += q * r[k]

    def pivot_position(t):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    while t < min(n, m):
        pos = pivot_position(t)
        if pos is None:
            break
        while True:
            i, j = pos
            if i != t:
                row_swap(t, i)
            if j != t:
                col_swap(t, j)
            p = a[t][t]
            reduced = True
            for i in range(t + 1, n):
                if a[i][t]:
                    q, r = divmod(a[i][t], p)
                    row_add(i, t, -q)
                    if r:
                        reduced = False
            for j in range(t + 1, m):
                if a[t][j]:
                    q, r = divmod(a[t][j], p)
                    col_add(j, t, -q)
                    if r:
                        reduced = False
            if reduced and all(a[i][t] == 0 for i in range(t + 1, n)) \
                    and all(a[t][j] == 0 for j in range(t + 1, m)):
                # force the divisibility chain before moving on
                culprit = None
                for i in range(t + 1, n):
                    for j in range(t + 1, m):
                        if a[i][j] % p:
                            culprit = i
                            break
                    if culprit is not None:
                        break
                if culprit is None:
                    break
                row_add(t, culprit, 1)
            pos = pivot_position(t)
        if a[t][t] < 0:
            row_negate(t)
        t += 1
    for i in range(t, n):
        if any(a[i][j] for j in range(m)):  # pragma: no cover - loop invariant
            raise InternalError("smith normal form left a nonzero row behind")
    d = [a[i][i] if i < m else 0 for i in range(min(n, m))]
    return d, u, uinv, v
