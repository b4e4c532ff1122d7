"""Delzant construction data for a decorated polytope.

With facets ``f_1 .. f_d`` the map ``lambda: R^d -> R^n`` sends ``e_i`` to
the facet normal ``lambda_i``.  Its kernel ``k`` is the Lie algebra of the
group that is quotiented out, and the level set is cut out of ``C^d`` by

    sum_j v_j * t_j == sum_j v_j * L_j      for every v in k,

where ``t_j = pi |z_j|^2 >= 0``.  Writing the constraint in ``t`` keeps
everything exact: a point ``xi`` of the polytope gives the admissible
``t_j = L_j - <xi, lambda_j>``.
"""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Sequence

from . import decorated, linalg
from .decorated import DecoratedPolytope
from .scalar import FieldElement, RealAlgebraicField


class EmptyInterior(ValueError):
    pass


@dataclass(frozen=True)
class Quadric:
    coeffs: tuple  # kernel vector v
    rhs: FieldElement  # sum v_j L_j

    def holds(self, t: Sequence) -> bool:
        return linalg.dot(self.coeffs, list(t)) == self.rhs

    def __str__(self) -> str:
        terms = [f"({c})*t{j + 1}" for j, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) + f" = {self.rhs}"


@dataclass(frozen=True)
class DelzantData:
    field: RealAlgebraicField
    n: int
    d: int
    lam: tuple  # n x d, column i is lambda_i
    offsets: tuple
    kernel_basis: tuple
    quadrics: tuple
    bounding_box: tuple  # (lo, hi) rationals per coordinate

    def normal(self, i: int) -> tuple:
        return tuple(row[i] for row in self.lam)


def compile_data(D: DecoratedPolytope) -> DelzantData:
    decorated.require_valid(D)
    Q = D.quasilattice
    markers = linalg.transpose([[Q.field(c) for c in q] for q in D.markers])  # m x d
    lam = linalg.matmul(Q.gen_matrix, markers)
    kernel = linalg.nullspace(lam)
    quadrics = tuple(
        Quadric(tuple(v), linalg.dot(v, list(D.offsets))) for v in kernel
    )
    eps = Fraction(1, 1000)
    coords = [[x.approx(eps) for x in v.point] for v in D.polytope.vertices()]
    box = tuple(
        (min(c[i] for c in coords) - eps, max(c[i] for c in coords) + eps) for i in range(D.n)
    )
    return DelzantData(
        Q.field,
        D.n,
        D.d,
        tuple(tuple(r) for r in lam),
        tuple(D.offsets),
        tuple(tuple(v) for v in kernel),
        quadrics,
        box,
    )


@dataclass(frozen=True)
class Sample:
    index: int
    t: tuple
    xi: tuple
    exact: bool


def moment_coordinates(data: DelzantData, xi: Sequence) -> tuple:
    """``t_j = L_j - <xi, lambda_j>``."""
    return tuple(
        data.offsets[j] - linalg.dot(list(xi), list(data.normal(j))) for j in range(data.d)
    )


def check_point(data: DelzantData, t: Sequence) -> bool:
    return all(x.sign() >= 0 for x in t) and all(q.holds(t) for q in data.quadrics)


def recover_point(data: DelzantData, t: Sequence):
    """Solve ``<xi, lambda_f> = L_f - t_f`` for ``xi``; ``None`` if inconsistent."""
    A = [list(data.normal(j)) for j in range(data.d)]
    b = [data.offsets[j] - t[j] for j in range(data.d)]
    if linalg.rank(A) != data.n:
        return None
    xi = linalg.solve(A, b)
    return None if xi is None else tuple(xi)


def sample_level_set(data: DelzantData, count: int, seed: int) -> list[Sample]:
    """Rejection-sample rational points of the polytope and lift them to the level set."""
    rng = random.Random(seed)
    K = data.field
    out: list[Sample] = []
    attempts, limit = 0, 200 * count + 1000
    while len(out) < count:
        attempts += 1
        if attempts > limit:
            raise EmptyInterior(f"only {len(out)} of {count} samples after {limit} draws")
        xi = tuple(
            K(lo + (hi - lo) * Fraction(rng.getrandbits(30), 2**30)) for lo, hi in data.bounding_box
        )
        t = moment_coordinates(data, xi)
        if any(x.sign() < 0 for x in t):
            continue
        out.append(Sample(len(out), t, xi, check_point(data, t)))
    return out


def write_samples_csv(samples: Sequence[Sample], seed: int, stream: IO[str]) -> None:
    w = csv.writer(stream, lineterminator="\n")
    if not samples:
        w.writerow(["seed", "index", "exact"])
        return
    d, n = len(samples[0].t), len(samples[0].xi)
    w.writerow(
        ["seed", "index"] + [f"t{j + 1}" for j in range(d)] + [f"xi{i + 1}" for i in range(n)] + ["exact"]
    )
    for s in samples:
        w.writerow(
            [seed, s.index]
            + [f"{float(x):.12f}" for x in s.t]
            + [f"{float(x):.12f}" for x in s.xi]
            + ["ok" if s.exact else "FAIL"]
        )


def same_lattice(A: Sequence[Sequence], B: Sequence[Sequence]) -> bool:
    """Whether two bases of the same rank generate the same subgroup of ``R^n``."""
    if len(A) != len(B):
        return False
    if not A:
        return True
    cols = linalg.transpose([list(a) for a in A])
    for b in B:
        c = linalg.solve(cols, list(b))
        if c is None or not all(x.is_rational() and x.to_fraction().denominator == 1 for x in c):
            return False
    change = [linalg.solve(cols, list(b)) for b in B]
    return abs(linalg.det(change)) == 1


@dataclass(frozen=True)
class VertexLatticeCheck:
    active_set: tuple
    ok: bool
    detail: str


def verify_vertex_lattices(D: DecoratedPolytope, data: DelzantData) -> list[VertexLatticeCheck]:
    """Compare ``sum_i Z lambda_i`` over the facets at each vertex with the face label of ``D``."""
    checks = []
    for v in D.vertices():
        mine = [data.normal(i) for i in v.active_set]
        theirs = decorated.face_label_image(D, v)
        ok = same_lattice(mine, theirs) and linalg.rank(mine) == data.n
        detail = " + ".join(f"Z({', '.join(str(x) for x in g)})" for g in mine)
        checks.append(VertexLatticeCheck(v.active_set, ok, detail))
    return checks
