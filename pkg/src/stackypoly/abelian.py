"""Integer matrices, Hermite and Smith normal forms, and f.g. abelian groups.

Matrices are plain lists of rows of Python ints.  Subgroups of ``Z^k`` are
passed around either as such matrices (generators in columns, as for
:func:`cokernel`) or as lists of generator vectors.

Conventions
-----------
* :func:`hnf` is the *row* Hermite form: ``U @ A == H`` with ``H`` upper
  echelon, positive pivots, zero rows last, and every entry above a pivot
  reduced into ``[0, pivot)``.
* :func:`snf` picks the entry of smallest absolute value as pivot and
  returns ``S, U, V`` with ``U @ A @ V == S``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod
from typing import Optional, Sequence

IntMatrix = list  # list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy_matrix(A: Sequence[Sequence[int]]) -> IntMatrix:
    return [[int(x) for x in row] for row in A]


def shape(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[int, int]:
    rows = len(A)
    cols = len(A[0]) if rows else (ncols or 0)
    return rows, cols


def transpose(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> IntMatrix:
    r, c = shape(A, ncols)
    return [[A[i][j] for i in range(r)] for j in range(c)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]]) -> IntMatrix:
    cols = len(B[0]) if B else 0
    return [[sum(a * B[k][j] for k, a in enumerate(row)) for j in range(cols)] for row in A]


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def det(A: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    M = copy_matrix(A)
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


# -- row operations that also update a transform ------------------------------


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _add_row(M, dst, src, q):
    """row[dst] += q * row[src]"""
    if q:
        rs = M[src]
        M[dst] = [a + q * b for a, b in zip(M[dst], rs)]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_col(M, dst, src, q):
    """col[dst] += q * col[src]"""
    if q:
        for row in M:
            row[dst] += q * row[src]


def hnf(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: return ``(H, U)`` with ``U @ A == H``."""
    H = copy_matrix(A)
    r, c = shape(H, ncols)
    U = identity(r)
    p = 0
    for col in range(c):
        if p == r:
            break
        while True:
            rows = [i for i in range(p, r) if H[i][col] != 0]
            if not rows:
                break
            best = min(rows, key=lambda i: (abs(H[i][col]), i))
            if best != p:
                _swap_rows(H, p, best)
                _swap_rows(U, p, best)
            clean = True
            for i in range(p + 1, r):
                if H[i][col]:
                    q = H[i][col] // H[p][col]
                    _add_row(H, i, p, -q)
                    _add_row(U, i, p, -q)
                    if H[i][col]:
                        clean = False
            if clean:
                break
        if H[p][col] == 0:
            continue
        if H[p][col] < 0:
            H[p] = [-x for x in H[p]]
            U[p] = [-x for x in U[p]]
        for i in range(p):
            q = H[i][col] // H[p][col]
            _add_row(H, i, p, -q)
            _add_row(U, i, p, -q)
        p += 1
    return H, U


def hnf_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[list[int]]:
    """Canonical basis (nonzero HNF rows) of the subgroup generated by ``vectors``."""
    if not vectors:
        return []
    H, _ = hnf(vectors, dim)
    return [row for row in H if any(row)]


def snf(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: return ``(S, U, V)`` with ``U @ A @ V == S``."""
    S = copy_matrix(A)
    r, c = shape(S, ncols)
    if not r:
        S = []
    U = identity(r)
    V = identity(c)
    t = 0
    while t < min(r, c):
        entries = [(abs(S[i][j]), i, j) for i in range(t, r) for j in range(t, c) if S[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        if i0 != t:
            _swap_rows(S, t, i0)
            _swap_rows(U, t, i0)
        if j0 != t:
            _swap_cols(S, t, j0)
            _swap_cols(V, t, j0)
        pivot = S[t][t]
        dirty = False
        for i in range(t + 1, r):
            if S[i][t]:
                q = S[i][t] // pivot
                _add_row(S, i, t, -q)
                _add_row(U, i, t, -q)
                dirty = dirty or S[i][t] != 0
        for j in range(t + 1, c):
            if S[t][j]:
                q = S[t][j] // pivot
                _add_col(S, j, t, -q)
                _add_col(V, j, t, -q)
                dirty = dirty or S[t][j] != 0
        if dirty:
            continue
        bad = next(
            (i for i in range(t + 1, r) for j in range(t + 1, c) if S[i][j] % pivot),
            None,
        )
        if bad is not None:
            _add_row(S, t, bad, 1)
            _add_row(U, t, bad, 1)
            continue
        if pivot < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return S, U, V


def diagonal(S: Sequence[Sequence[int]]) -> list[int]:
    r, c = shape(S)
    return [S[i][i] for i in range(min(r, c))]


# -- finitely generated abelian groups ----------------------------------------


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors (each >= 2, dividing chain) of ``Z/o1 x Z/o2 x ...``."""
    orders = [abs(int(o)) for o in orders if abs(int(o)) != 1]
    if any(o == 0 for o in orders):
        raise ValueError("infinite cyclic factors are not torsion")
    if not orders:
        return ()
    k = len(orders)
    D = [[orders[i] if i == j else 0 for j in range(k)] for i in range(k)]
    S, _, _ = snf(D)
    return tuple(d for d in diagonal(S) if d > 1)


@dataclass(frozen=True)
class FgAbelianGroup:
    """``Z^free_rank x Z/d1 x ... x Z/dk`` with ``d1 | d2 | ... | dk``, each ``>= 2``."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(d) for d in self.torsion))
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")
        if any(d < 2 for d in self.torsion):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def from_cyclic(cls, free_rank: int = 0, orders: Sequence[int] = ()) -> "FgAbelianGroup":
        return cls(free_rank, invariant_factors(orders))

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return FgAbelianGroup.from_cyclic(
            self.free_rank + other.free_rank, self.torsion + other.torsion
        )

    __add__ = direct_sum

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> Optional[int]:
        """Group order, or ``None`` when the group is infinite."""
        return None if self.free_rank else prod(self.torsion)

    def __str__(self) -> str:
        if self.is_trivial:
            return "trivial"
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " x ".join(parts)

    def to_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def cokernel(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> FgAbelianGroup:
    """``Z^rows / colspan(A)`` as invariant factors."""
    r, _ = shape(A, ncols)
    S, _, _ = snf(A, ncols)
    d = [x for x in diagonal(S) if x != 0] if r else []
    return FgAbelianGroup(r - len(d), tuple(x for x in d if x > 1))


def quotient(ambient_dim: int, generators: Sequence[Sequence[int]]) -> FgAbelianGroup:
    """``Z^ambient_dim`` modulo the subgroup generated by ``generators``."""
    A = [[g[i] for g in generators] for i in range(ambient_dim)]
    return cokernel(A, len(generators))


def solve_integer(
    A: Sequence[Sequence[int]], b: Sequence[int], ncols: Optional[int] = None
) -> tuple[Optional[list[int]], list[list[int]]]:
    """Solve ``A x = b`` over ``Z``.

    Returns ``(x, kernel)`` where ``x`` is one integer solution or ``None``
    and ``kernel`` is the HNF-normalized basis of the integer kernel of ``A``.
    """
    r, c = shape(A, ncols)
    if len(b) != r:
        raise ValueError("right-hand side has the wrong length")
    S, U, V = snf(A, c)
    d = diagonal(S) if r else []
    rank = sum(1 for x in d if x != 0)
    kernel = [[V[i][j] for i in range(c)] for j in range(rank, c)]
    kernel = hnf_basis(kernel, c)
    Ub = matvec(U, b)
    y = [0] * c
    for i in range(r):
        if i < rank:
            if Ub[i] % d[i]:
                return None, kernel
            y[i] = Ub[i] // d[i]
        elif Ub[i] != 0:
            return None, kernel
    x = matvec(V, y)
    return x, kernel


def integer_kernel(A: Sequence[Sequence[int]], ncols: Optional[int] = None) -> list[list[int]]:
    r, c = shape(A, ncols)
    return solve_integer(A, [0] * r, c)[1]


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    return g
