"""Decorated stacky moment polytopes.

A decorated polytope is stored through its facet data: a quasilattice
``d: Q -> R^n``, one marker ``q_f`` in the free part ``Z^m`` of ``Q`` per
facet, and one offset ``L_f`` per facet.  The facet normal is
``lambda_f = d(q_f)``, the polytope is ``{x : <x, lambda_f> <= L_f}``, and
the label of a face is the subgroup of ``d(Q)`` generated by the normals of
the facets containing it.

Isotropy of a face ``f`` is computed as::

    ker d  x  (d(Q) & ann f) / Lambda_f

In ``Z^m`` coordinates the quotient is ``S / (K + <markers>)`` where ``S``
is the preimage of ``ann f`` and ``K`` the integer kernel of ``d``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Optional, Sequence

from . import abelian, linalg
from .abelian import FgAbelianGroup
from .polytope import Face, HPolytope, PolytopeError
from .quasilattice import Quasilattice


class NotALattice(ValueError):
    pass


class InvalidDecoration(ValueError):
    pass


class Kind(str, Enum):
    SMOOTH_MANIFOLD = "SmoothManifold"
    EFFECTIVE_ORBIFOLD = "EffectiveOrbifold"
    INEFFECTIVE_ORBIFOLD = "IneffectiveOrbifold"
    QUASIFOLD = "Quasifold"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Classification:
    kind: Kind
    global_isotropy: FgAbelianGroup

    def __str__(self) -> str:
        if self.kind is Kind.INEFFECTIVE_ORBIFOLD:
            return f"{self.kind}(global isotropy {self.global_isotropy})"
        return str(self.kind)


@dataclass(frozen=True, eq=False)
class DecoratedPolytope:
    quasilattice: Quasilattice
    markers: tuple
    offsets: tuple

    def __post_init__(self):
        Q = self.quasilattice
        markers = tuple(tuple(int(c) for c in q) for q in self.markers)
        offsets = tuple(Q.field(L) for L in self.offsets)
        if len(markers) != len(offsets):
            raise ValueError("need one offset per facet marker")
        for i, q in enumerate(markers):
            if len(q) != Q.m:
                raise ValueError(f"marker of f{i + 1} must have {Q.m} integer entries")
        object.__setattr__(self, "markers", markers)
        object.__setattr__(self, "offsets", offsets)

    @property
    def field(self):
        return self.quasilattice.field

    @property
    def n(self) -> int:
        return self.quasilattice.n

    @property
    def d(self) -> int:
        return len(self.markers)

    @cached_property
    def normals(self) -> tuple:
        return tuple(self.quasilattice.apply(q) for q in self.markers)

    @cached_property
    def polytope(self) -> HPolytope:
        return HPolytope(self.field, self.normals, self.offsets)

    def faces(self) -> list[Face]:
        return self.polytope.face_lattice()

    def vertices(self) -> list[Face]:
        return self.polytope.vertex_faces()

    def __eq__(self, other) -> bool:
        if not isinstance(other, DecoratedPolytope):
            return NotImplemented
        return (
            self.quasilattice == other.quasilattice
            and self.markers == other.markers
            and self.offsets == other.offsets
        )

    def __hash__(self) -> int:
        return hash((self.quasilattice, self.markers, self.offsets))


# -- validation ------------------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)
    error: Optional[Exception] = None

    @property
    def valid(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def __str__(self) -> str:
        lines = [f"{'ok  ' if c.ok else 'FAIL'} {c.name}: {c.detail}" for c in self.checks]
        return "\n".join(lines)


def validate(D: DecoratedPolytope) -> ValidationReport:
    report = ValidationReport()
    Q = D.quasilattice

    report.checks.append(
        Check("markers in Q", all(len(q) == Q.m for q in D.markers), f"{D.d} markers in Z^{Q.m}")
    )
    zero = [i for i, v in enumerate(D.normals) if all(x == 0 for x in v)]
    report.checks.append(
        Check(
            "quasirational",
            not zero,
            "every facet normal is nonzero" if not zero else f"f{zero[0] + 1} has d(q_f) = 0",
        )
    )
    if zero:
        return report

    try:
        D.polytope.validate()
        faces = D.faces()
    except PolytopeError as exc:
        report.error = exc
        report.checks.append(Check("polytope", False, f"{type(exc).__name__}: {exc}"))
        return report
    report.checks.append(
        Check("polytope", True, f"simple, bounded, {len(D.vertices())} vertices, {D.d} facets")
    )

    bad = [
        f
        for f in faces
        if f.active_set and linalg.rank(D.polytope.ann(f)) != len(f.active_set)
    ]
    report.checks.append(
        Check(
            "face labels span ann(f)",
            not bad,
            f"checked {len(faces)} faces" if not bad else f"dependent labels at {bad[0].label()}",
        )
    )
    short = [v for v in D.vertices() if linalg.rank(D.polytope.ann(v)) != D.n]
    report.checks.append(
        Check(
            "vertex labels full rank",
            not short,
            "every vertex label has rank n" if not short else f"rank deficit at {short[0].label()}",
        )
    )
    return report


def require_valid(D: DecoratedPolytope) -> None:
    report = validate(D)
    if not report.valid:
        if report.error is not None:
            raise report.error
        raise InvalidDecoration("; ".join(f"{c.name}: {c.detail}" for c in report.failures()))


# -- labels and isotropy --------------------------------------------------------


def face_label(D: DecoratedPolytope, face: Face) -> list[tuple]:
    """Generators of ``Lambda_f`` in ``Z^m``: the markers of the facets containing ``face``."""
    return [D.markers[i] for i in face.active_set]


def face_label_image(D: DecoratedPolytope, face: Face) -> list[tuple]:
    return [D.normals[i] for i in face.active_set]


def face_isotropy(D: DecoratedPolytope, face: Face) -> FgAbelianGroup:
    Q = D.quasilattice
    S = Q.intersect_subspace(D.polytope.ann(face))
    gens = list(Q.kernel_basis) + [list(q) for q in face_label(D, face)]
    # coordinates of each generator in the basis S (columns of Smat)
    Smat = [[s[i] for s in S] for i in range(Q.m)]
    coords = []
    for g in gens:
        c, _ = abelian.solve_integer(Smat, g, len(S))
        if c is None:
            raise AssertionError(f"label generator {g} is not in the preimage of ann f")
        coords.append(c)
    quotient = abelian.quotient(len(S), coords)
    return Q.kernel() + quotient


def isotropy_table(D: DecoratedPolytope) -> list[tuple[Face, FgAbelianGroup]]:
    return [(f, face_isotropy(D, f)) for f in D.faces()]


def lt_labels(D: DecoratedPolytope) -> tuple[int, ...]:
    """Positive integers ``k_f`` with ``lambda_f = k_f * (primitive outward normal)``.

    Needs ``d(Q) == Z^n`` in the given coordinates.
    """
    Q = D.quasilattice
    if not Q.is_discrete():
        raise NotALattice(f"d(Q) has rank {Q.image_rank()} > n = {Q.n}; not a lattice")
    if not Q.image_is_standard_lattice():
        raise NotALattice("d(Q) is a lattice but not Z^n in these coordinates")
    labels = []
    for v in D.normals:
        labels.append(abelian.content([x.to_fraction().numerator for x in v]))
    return tuple(labels)


def vertex_label_is_everything(D: DecoratedPolytope, vertex: Face) -> bool:
    """Whether ``Lambda_v == d(Q)``: every generator is an integer combination of the vertex normals."""
    Q = D.quasilattice
    basis = face_label_image(D, vertex)
    A = linalg.transpose(basis)
    for g in Q.generators:
        c = linalg.solve(A, list(g))
        if c is None or not all(x.is_rational() and x.to_fraction().denominator == 1 for x in c):
            return False
    return True


def classify(D: DecoratedPolytope) -> Classification:
    Q = D.quasilattice
    K = Q.kernel()
    if not Q.is_discrete():
        return Classification(Kind.QUASIFOLD, K)
    if not K.is_trivial:
        return Classification(Kind.INEFFECTIVE_ORBIFOLD, K)
    if all(vertex_label_is_everything(D, v) for v in D.vertices()):
        return Classification(Kind.SMOOTH_MANIFOLD, K)
    return Classification(Kind.EFFECTIVE_ORBIFOLD, K)


def from_normals(field, normals: Sequence[Sequence], offsets: Sequence, torsion=()) -> DecoratedPolytope:
    """Convenience: quasilattice generated by the facet normals themselves, markers ``e_i``."""
    Q = Quasilattice(field, tuple(tuple(v) for v in normals), tuple(torsion))
    d = len(normals)
    markers = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    return DecoratedPolytope(Q, tuple(markers), tuple(offsets))
