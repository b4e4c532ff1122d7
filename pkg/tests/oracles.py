"""Deliberately naive reference computations used to cross-check the package.

Nothing here calls into the normal-form code of the package: lattices are
reduced with plain Euclidean row operations, ranks are computed over
``Fraction``, and group orders are obtained by enumerating cosets.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import mpmath


def rational_rank(rows: Sequence[Sequence]) -> int:
    M = [[Fraction(x) for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(M[0]) if M else 0
    while rank < len(M) and col < ncols:
        piv = next((i for i in range(rank, len(M)) if M[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        M[rank], M[piv] = M[piv], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][col] != 0:
                f = M[i][col] / M[rank][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rank])]
        rank += 1
        col += 1
    return rank


def echelon(gens: Iterable[Sequence[int]], dim: int) -> list[list[int]]:
    """Row echelon basis of the lattice spanned by ``gens`` using Euclid on each column."""
    rows = [list(g) for g in gens if any(g)]
    basis = []
    for col in range(dim):
        while True:
            live = [r for r in rows if r[col] != 0]
            if len(live) <= 1:
                break
            live.sort(key=lambda r: abs(r[col]))
            p = live[0]
            for r in live[1:]:
                q = r[col] // p[col]
                for k in range(dim):
                    r[k] -= q * p[k]
            rows = [r for r in rows if any(r)]
        live = [r for r in rows if r[col] != 0]
        if live:
            p = live[0]
            if p[col] < 0:
                p[:] = [-x for x in p]
            basis.append(p)
            rows = [r for r in rows if r is not p]
    return basis


def reduce_mod(x: Sequence[int], basis: list[list[int]]) -> tuple:
    """Canonical coset representative of ``x`` modulo an echelon basis."""
    x = list(x)
    for b in basis:
        col = next(i for i, v in enumerate(b) if v != 0)
        q = x[col] // b[col]
        x = [a - q * c for a, c in zip(x, b)]
    return tuple(x)


def in_lattice(x: Sequence[int], gens: Sequence[Sequence[int]], dim: int) -> bool:
    return not any(reduce_mod(x, echelon(gens, dim)))


def coset_count(gens: Sequence[Sequence[int]], dim: int, cap: int = 200) -> Optional[int]:
    """Order of ``Z^dim / <gens>`` found by walking the Cayley graph; ``None`` past ``cap``."""
    if dim == 0:
        return 1
    if not gens or rational_rank(gens) < dim:
        return None
    basis = echelon(gens, dim)
    start = reduce_mod([0] * dim, basis)
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for x in frontier:
            for i in range(dim):
                for s in (1, -1):
                    y = list(x)
                    y[i] += s
                    r = reduce_mod(y, basis)
                    if r not in seen:
                        seen.add(r)
                        if len(seen) > cap:
                            return None
                        nxt.append(r)
        frontier = nxt
    return len(seen)


def coset_classes(points: Sequence[Sequence[int]], gens: Sequence[Sequence[int]], dim: int) -> int:
    """Number of classes of ``points`` modulo the lattice spanned by ``gens`` (pairwise test)."""
    reps: list = []
    for p in points:
        if not any(in_lattice([a - b for a, b in zip(p, r)], gens, dim) for r in reps):
            reps.append(p)
    return len(reps)


def box(m: int, radius: int):
    return itertools.product(range(-radius, radius + 1), repeat=m)


def in_span(vectors: Sequence[Sequence], x: Sequence) -> bool:
    """``x`` in the real span of ``vectors`` (field elements), by comparing ranks."""
    from stackypoly import linalg

    rows = [list(v) for v in vectors]
    return linalg.rank(rows + [list(x)]) == linalg.rank(rows) if rows else all(c == 0 for c in x)


def numeric_root(min_poly: Sequence[int], lo, hi, prec: int = 64):
    """The unique root of ``min_poly`` in ``[lo, hi]`` at ``prec`` bits."""
    with mpmath.workprec(prec):
        f = lambda t: mpmath.polyval(list(reversed(min_poly)), t)  # noqa: E731
        return mpmath.findroot(f, (mpmath.mpf(lo.numerator) / lo.denominator, mpmath.mpf(hi.numerator) / hi.denominator), solver="anderson")


def numeric_value(coeffs: Sequence[Fraction], root, prec: int = 64):
    with mpmath.workprec(prec):
        acc = mpmath.mpf(0)
        for c in reversed(coeffs):
            acc = acc * root + mpmath.mpf(c.numerator) / c.denominator
        return acc
