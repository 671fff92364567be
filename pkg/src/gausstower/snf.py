"""Integer matrix normal forms and lattice solving.

Provides Smith normal form with unimodular transform tracking, and the exact
solver for A z = c over the integers built on it, returning one solution plus
a kernel lattice basis.
"""

from __future__ import annotations

__all__ = ["smith_normal_form", "solve_integer_system"]


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(A: list[list[int]]) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (S, U, V) with U*A*V = S, U and V unimodular, S diagonal.

    The diagonal is nonnegative and each entry divides the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    S = [row[:] for row in A]
    U = _identity(m)
    V = _identity(n)

    def row_op(i, j, q):
        # row i -= q * row j
        S[i] = [a - q * b for a, b in zip(S[i], S[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_op(i, j, q):
        # col i -= q * col j
        for row in S:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        if i != j:
            S[i], S[j] = S[j], S[i]
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        if i == j:
            return
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def trailing_min(k):
        piv, best = None, None
        for i in range(k, m):
            for j in range(k, n):
                v = abs(S[i][j])
                if v and (best is None or v < best):
                    best, piv = v, (i, j)
        return piv

    k = 0
    while k < min(m, n):
        piv = trailing_min(k)
        if piv is None:
            break
        swap_rows(k, piv[0])
        swap_cols(k, piv[1])
        # Euclidean passes: reduce row/column k modulo the pivot, re-selecting a
        # smaller pivot whenever a nonzero remainder appears
        while True:
            for i in range(m):
                if i != k and S[i][k]:
                    row_op(i, k, S[i][k] // S[k][k])
            for j in range(n):
                if j != k and S[k][j]:
                    col_op(j, k, S[k][j] // S[k][k])
            if all(S[i][k] == 0 for i in range(m) if i != k) and all(
                S[k][j] == 0 for j in range(n) if j != k
            ):
                break
            piv = trailing_min(k)
            swap_rows(k, piv[0])
            swap_cols(k, piv[1])
        # enforce divisibility of the trailing block by the pivot
        d = S[k][k]
        offender = None
        for i in range(k + 1, m):
            if any(S[i][j] % d for j in range(k + 1, n)):
                offender = i
                break
        if offender is not None:
            row_op(k, offender, -1)
            continue
        if d < 0:
            S[k] = [-v for v in S[k]]
            U[k] = [-v for v in U[k]]
        k += 1
    return S, U, V


def solve_integer_system(
    A: list[list[int]], c: list[int]
) -> tuple[list[int], list[list[int]]]:
    """Solve A z = c over Z; return (one solution, kernel basis as rows).

    Raises ValueError when no integer solution exists.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    if len(c) != m:
        raise ValueError("dimension mismatch")
    S, U, V = smith_normal_form(A)
    d = [sum(U[i][j] * c[j] for j in range(m)) for i in range(m)]
    r = 0
    while r < min(m, n) and S[r][r]:
        r += 1
    y = [0] * n
    for i in range(r):
        if d[i] % S[i][i]:
            raise ValueError("no integer solution")
        y[i] = d[i] // S[i][i]
    for i in range(r, m):
        if d[i]:
            raise ValueError("no integer solution")
    z = [sum(V[i][j] * y[j] for j in range(n)) for i in range(n)]
    kernel = [[V[i][j] for i in range(n)] for j in range(r, n)]
    return z, kernel
