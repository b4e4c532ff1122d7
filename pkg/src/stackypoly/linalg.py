"""Exact Gaussian elimination over a field.

Works for any scalar type with exact ``+ - * /`` and ``== 0``; in practice
:class:`fractions.Fraction` and :class:`~stackypoly.scalar.FieldElement`.
Matrices are lists of rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Optional, Sequence


def rref(rows: Sequence[Sequence]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(M):
            break
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], ncols: Optional[int] = None, one=None) -> list[list]:
    """Basis of ``{x : A x = 0}`` in reduced-echelon normalized form.

    One vector per free column ``j``: entry 1 at ``j``, zeros at the other
    free columns, and minus the RREF entries at pivot columns.
    """
    if rows:
        ncols = len(rows[0])
        one = rows[0][0] * 0 + 1 if one is None else one
    elif ncols is None:
        raise ValueError("ncols required for an empty matrix")
    if one is None:
        one = Fraction(1)
    zero = one - one
    R, pivots = rref(rows)
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for j in free:
        v = [zero] * ncols
        v[j] = one
        for i, p in enumerate(pivots):
            v[p] = -R[i][j]
        basis.append(v)
    return basis


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[list]:
    """One solution of ``A x = b`` (free variables set to zero), or ``None``."""
    if not A:
        return None if any(x != 0 for x in b) else []
    ncols = len(A[0])
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if ncols in pivots:
        return None
    zero = A[0][0] * 0
    x = [zero] * ncols
    for i, p in enumerate(pivots):
        x[p] = R[i][ncols]
    return x


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        out_row = []
        for j in range(cols):
            acc = row[0] * B[0][j]
            for k in range(1, len(row)):
                acc = acc + row[k] * B[k][j]
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    out = []
    for row in A:
        acc = row[0] * x[0]
        for a, b in zip(row[1:], x[1:]):
            acc = acc + a * b
        out.append(acc)
    return out


def dot(u: Sequence, v: Sequence):
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def transpose(A: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*A)]


def inverse(A: Sequence[Sequence]) -> Optional[list[list]]:
    n = len(A)
    one = A[0][0] * 0 + 1
    zero = one - one
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(A)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        return None
    return [row[n:] for row in R]


def det(A: Sequence[Sequence]):
    M = [list(r) for r in A]
    n = len(M)
    result = M[0][0] * 0 + 1
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return result * 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            result = -result
        result = result * M[c][c]
        inv = 1 / M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] * inv
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return result


def clear_denominators(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each rational row by the lcm of its denominators."""
    out = []
    for row in rows:
        m = lcm(*(Fraction(x).denominator for x in row)) if row else 1
        out.append([int(Fraction(x) * m) for x in row])
    return out
