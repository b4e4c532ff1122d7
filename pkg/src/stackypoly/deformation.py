"""Affine one-parameter families of decorated polytopes.

A family keeps ``Q`` and the facet markers fixed and moves the generator
images and the offsets linearly in ``tau``::

    d_i(tau) = (1 - tau) * start_i + tau * end_i
    L_f(tau) = (1 - tau) * a_f + tau * b_f

so every evaluation at a rational ``tau`` is exact.  Validity is checked on
a sample grid; for families with rational data :func:`certify_family` gives
an exact certificate on all of ``[0, 1]`` via Sturm sequences.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import decorated, linalg, poly
from .abelian import FgAbelianGroup
from .decorated import Classification, DecoratedPolytope, Kind
from .polytope import Empty, NotFullDimensional, NotSimple
from .quasilattice import Quasilattice, QuasilatticeError
from .scalar import FieldElement

log = logging.getLogger(__name__)

DEFAULT_SAMPLES = 101
DENOMINATOR_CEILING = 2**20


class DeformationError(ValueError):
    pass


class CombinatorialChange(DeformationError):
    def __init__(self, tau, message=""):
        self.tau = Fraction(tau)
        super().__init__(f"combinatorial change at tau={self.tau}" + (f": {message}" if message else ""))


class InvalidAt(DeformationError):
    def __init__(self, tau, message=""):
        self.tau = Fraction(tau)
        super().__init__(f"invalid datum at tau={self.tau}" + (f": {message}" if message else ""))


class RoundingBreaksCombinatorics(DeformationError):
    pass


class NotFullRank(DeformationError):
    pass


class PipelineExhausted(DeformationError):
    pass


@dataclass(frozen=True, eq=False)
class DeformationFamily:
    start: Quasilattice
    end: Quasilattice
    markers: tuple
    offset_paths: tuple  # (a_f, b_f) per facet

    def __post_init__(self):
        if self.start.field != self.end.field:
            raise ValueError("start and end quasilattices must share a field")
        if (self.start.n, self.start.m) != (self.end.n, self.end.m):
            raise ValueError("start and end quasilattices must have equal n and m")
        if self.start.torsion != self.end.torsion:
            raise ValueError("start and end quasilattices must have equal torsion")
        K = self.start.field
        object.__setattr__(self, "markers", tuple(tuple(int(c) for c in q) for q in self.markers))
        object.__setattr__(
            self, "offset_paths", tuple((K(a), K(b)) for a, b in self.offset_paths)
        )
        if len(self.markers) != len(self.offset_paths):
            raise ValueError("need one offset path per facet marker")

    @classmethod
    def between(cls, start: DecoratedPolytope, end_generators, end_offsets) -> "DeformationFamily":
        Q = start.quasilattice
        end = Quasilattice(Q.field, tuple(tuple(g) for g in end_generators), Q.torsion)
        return cls(Q, end, start.markers, tuple(zip(start.offsets, end_offsets)))

    @classmethod
    def constant(cls, D: DecoratedPolytope) -> "DeformationFamily":
        return cls(D.quasilattice, D.quasilattice, D.markers, tuple(zip(D.offsets, D.offsets)))

    @property
    def field(self):
        return self.start.field

    def evaluate(self, tau) -> DecoratedPolytope:
        tau = Fraction(tau)
        if not 0 <= tau <= 1:
            raise ValueError("tau must lie in [0, 1]")
        if tau == 0:
            Q = self.start
        elif tau == 1:
            Q = self.end
        else:
            gens = tuple(
                tuple((1 - tau) * a + tau * b for a, b in zip(u, w))
                for u, w in zip(self.start.generators, self.end.generators)
            )
            Q = Quasilattice(self.field, gens, self.start.torsion)
        offsets = tuple((1 - tau) * a + tau * b for a, b in self.offset_paths)
        return DecoratedPolytope(Q, self.markers, offsets)

    def start_datum(self) -> DecoratedPolytope:
        return self.evaluate(0)

    def end_datum(self) -> DecoratedPolytope:
        return self.evaluate(1)


@dataclass
class FamilyReport:
    samples: int
    taus: list = field(default_factory=list)
    incidence: Optional[tuple] = None  # vertex active sets shared by all samples
    failure: Optional[DeformationError] = None

    @property
    def ok(self) -> bool:
        return self.failure is None

    def __str__(self) -> str:
        if self.ok:
            return f"family valid at {self.samples} samples; {len(self.incidence)} vertices throughout"
        return str(self.failure)


_DEGENERATE = (NotSimple, Empty, NotFullDimensional)


def _check_at(F: DeformationFamily, tau: Fraction):
    try:
        D = F.evaluate(tau)
    except QuasilatticeError as exc:
        raise InvalidAt(tau, str(exc)) from exc
    report = decorated.validate(D)
    if not report.valid:
        if isinstance(report.error, _DEGENERATE):
            raise CombinatorialChange(tau, str(report.error))
        raise InvalidAt(tau, "; ".join(f"{c.name}: {c.detail}" for c in report.failures()))
    return tuple(v.active_set for v in D.polytope.vertices())


def validate_family(F: DeformationFamily, samples: int = DEFAULT_SAMPLES) -> FamilyReport:
    """Validate at ``tau = k/(samples-1)`` and require one shared face lattice."""
    if samples < 2:
        raise ValueError("need at least two samples")
    report = FamilyReport(samples)
    for k in range(samples):
        tau = Fraction(k, samples - 1)
        report.taus.append(tau)
        try:
            incidence = _check_at(F, tau)
        except DeformationError as exc:
            report.failure = exc
            return report
        if report.incidence is None:
            report.incidence = incidence
        elif incidence != report.incidence:
            report.failure = CombinatorialChange(tau, "vertex active sets changed")
            return report
    return report


# -- exact certificate for rational families --------------------------------------


def _poly_det(M: list[list[poly.Poly]]) -> poly.Poly:
    if len(M) == 1:
        return M[0][0]
    total: poly.Poly = ()
    for j, entry in enumerate(M[0]):
        if not entry:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = poly.mul(entry, _poly_det(minor))
        total = poly.add(total, term) if j % 2 == 0 else poly.sub(total, term)
    return total


@dataclass
class Certificate:
    certified: bool
    detail: str


def certify_family(F: DeformationFamily) -> Certificate:
    """Exact proof that the combinatorial type is constant on ``[0, 1]``.

    For every vertex at ``tau = 0`` the determinant of its facet normals and
    the slack numerators of all other facets are polynomials in ``tau``;
    if none of them has a root in ``[0, 1]``, every vertex persists with the
    same active set, which fixes the face lattice.  Only rational families
    are supported.
    """
    entries = [x for g in F.start.generators + F.end.generators for x in g]
    entries += [x for pair in F.offset_paths for x in pair]
    if not all(x.is_rational() for x in entries):
        raise ValueError("exact certificates need rational family data; use validate_family")
    start = F.evaluate(0)
    report = decorated.validate(start)
    if not report.valid:
        return Certificate(False, f"start datum invalid: {report}")

    def path(a: FieldElement, b: FieldElement) -> poly.Poly:
        a, b = a.to_fraction(), b.to_fraction()
        return poly.normalize([a, b - a])

    gen_paths = [[path(a, b) for a, b in zip(u, w)] for u, w in zip(F.start.generators, F.end.generators)]
    normals = []
    for q in F.markers:
        vec = []
        for i in range(F.start.n):
            acc: poly.Poly = ()
            for c, g in zip(q, gen_paths):
                if c:
                    acc = poly.add(acc, poly.scale(g[i], c))
            vec.append(acc)
        normals.append(vec)
    offsets = [path(a, b) for a, b in F.offset_paths]

    one, zero = Fraction(1), Fraction(0)
    for v in start.polytope.vertices():
        S = v.active_set
        A = [normals[i] for i in S]
        det = _poly_det(A)
        if not det or poly.count_roots_closed(det, zero, one):
            return Certificate(False, f"normals at vertex {S} become dependent on [0, 1]")
        for j in range(F.evaluate(0).d):
            if j in S:
                continue
            M = [normals[i] + [offsets[i]] for i in S] + [normals[j] + [offsets[j]]]
            slack = _poly_det(M)
            if not slack or poly.count_roots_closed(slack, zero, one):
                return Certificate(False, f"facet f{j + 1} reaches vertex {S} on [0, 1]")
    return Certificate(True, "no vertex degenerates on [0, 1]")


# -- rationalization -----------------------------------------------------------


def _floor(x: FieldElement) -> int:
    f = x.approx(Fraction(1, 4))
    k = f.numerator // f.denominator
    while x < k:
        k -= 1
    while x >= k + 1:
        k += 1
    return k


def _last_true(pred, limit: int) -> int:
    """Largest ``k`` in ``[0, limit]`` with ``pred(k)``, for ``pred`` monotone decreasing and ``pred(0)`` true."""
    lo, step = 0, 1
    while lo + step <= limit and pred(lo + step):
        lo += step
        step *= 2
    hi = min(lo + step, limit + 1)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo


def nearest_rational(x: FieldElement, max_denominator: int) -> Fraction:
    """The rational with denominator ``<= max_denominator`` closest to ``x``.

    Stern-Brocot descent with runs of equal moves taken in one batch.
    """
    N = int(max_denominator)
    if N < 1:
        raise ValueError("max_denominator must be positive")
    if x.is_rational():
        return x.to_fraction().limit_denominator(N)
    f = _floor(x)
    lp, lq, hp, hq = f, 1, f + 1, 1
    while lq + hq <= N:
        if x > Fraction(lp + hp, lq + hq):
            k = _last_true(
                lambda k: x > Fraction(lp + k * hp, lq + k * hq), (N - lq) // hq
            )
            lp, lq = lp + k * hp, lq + k * hq
        else:
            k = _last_true(
                lambda k: x < Fraction(hp + k * lp, hq + k * lq), (N - hq) // lq
            )
            hp, hq = hp + k * lp, hq + k * lq
    lo, hi = Fraction(lp, lq), Fraction(hp, hq)
    return lo if (2 * x - lo - hi).sign() < 0 else hi


def _rationalize(D: DecoratedPolytope, denom_bound: int, samples: int):
    Q = D.quasilattice
    K = Q.field
    rounded = [[nearest_rational(x, denom_bound) for x in g] for g in Q.generators]
    end_offsets = [K(nearest_rational(L, denom_bound)) for L in D.offsets]
    try:
        rough = Quasilattice(K, tuple(tuple(K(x) for x in g) for g in rounded), Q.torsion)
    except QuasilatticeError as exc:
        raise NotFullRank(f"rounded generators at denominator {denom_bound} do not span R^n") from exc
    basis = rough.image_lattice_basis()
    if len(basis) != Q.n:
        raise NotFullRank("rounded image lattice has rank < n")
    B = linalg.transpose(basis)  # columns are lattice basis vectors
    if linalg.det(B) < 0:
        for row in B:
            row[-1] = -row[-1]
    A = linalg.inverse(B)
    end_gens = tuple(tuple(K(x) for x in linalg.matvec(A, g)) for g in rounded)
    end = Quasilattice(K, end_gens, Q.torsion)
    F = DeformationFamily(Q, end, D.markers, tuple(zip(D.offsets, end_offsets)))
    report = validate_family(F, samples)
    if not report.ok:
        raise RoundingBreaksCombinatorics(
            f"denominator bound {denom_bound} is insufficient: {report.failure}"
        )
    return F, report


def rationalize(D: DecoratedPolytope, denom_bound: int, samples: int = DEFAULT_SAMPLES) -> DeformationFamily:
    """Family from ``D`` to a rational datum whose image lattice is exactly ``Z^n``."""
    decorated.require_valid(D)
    return _rationalize(D, denom_bound, samples)[0]


@dataclass
class OrbifoldReport:
    family: DeformationFamily
    denom_bound: int
    family_report: FamilyReport
    endpoint: DecoratedPolytope
    classification: Classification
    attempts: list

    @property
    def global_isotropy(self) -> FgAbelianGroup:
        return self.classification.global_isotropy

    def __str__(self) -> str:
        return (
            f"endpoint: {self.classification.kind}, global isotropy {self.global_isotropy} "
            f"(denominator bound {self.denom_bound}, {self.family_report.samples} samples)"
        )


def to_orbifold_pipeline(
    D: DecoratedPolytope,
    samples: int = DEFAULT_SAMPLES,
    ceiling: int = DENOMINATOR_CEILING,
) -> OrbifoldReport:
    """Rationalize with denominator bounds 1, 2, 4, ... until the family is valid."""
    decorated.require_valid(D)
    attempts = []
    N = 1
    while N <= ceiling:
        try:
            F, report = _rationalize(D, N, samples)
        except (RoundingBreaksCombinatorics, NotFullRank) as exc:
            log.debug("denominator bound %d rejected: %s", N, exc)
            attempts.append((N, str(exc)))
            N *= 2
            continue
        attempts.append((N, "ok"))
        endpoint = F.end_datum()
        cls = decorated.classify(endpoint)
        if cls.kind is Kind.QUASIFOLD:
            raise AssertionError("rational endpoint classified as quasifold")
        return OrbifoldReport(F, N, report, endpoint, cls, attempts)
    raise PipelineExhausted(f"no valid rationalization with denominator <= {ceiling}")
