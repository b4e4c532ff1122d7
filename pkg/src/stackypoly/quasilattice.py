"""Quasilattices ``d: Q -> R^n`` with ``Q = R x Z^m``.

``R`` is the torsion part of ``Q``; it is stored as invariant factors and
never enters the linear algebra since ``d`` kills it.  The free part is
described by the ``m`` generator images ``d(e_1), ..., d(e_m)`` whose
coordinates live in a :class:`~stackypoly.scalar.RealAlgebraicField`.

Integer questions about ``d`` (membership, kernel, preimages of subspaces)
are answered by expanding every field coordinate over the rational power
basis of the field, which turns a linear condition with field
coefficients into ``D`` rational conditions, and then solving over ``Z``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm
from typing import Optional, Sequence

from . import abelian, linalg
from .abelian import FgAbelianGroup
from .scalar import FieldElement, RealAlgebraicField


class QuasilatticeError(ValueError):
    pass


class DependentBasis(QuasilatticeError):
    pass


def expand(field_rows: Sequence[Sequence[FieldElement]]) -> list[list[Fraction]]:
    """Replace each row of field elements by ``D`` rows of rational coordinates."""
    out = []
    for row in field_rows:
        if not row:
            continue
        D = row[0].field.degree
        for k in range(D):
            out.append([x.coeffs[k] for x in row])
    return out


@dataclass(frozen=True, eq=False)
class Quasilattice:
    field: RealAlgebraicField
    generators: tuple  # m vectors d(e_i), each of length n
    torsion: tuple = ()

    def __post_init__(self):
        gens = tuple(tuple(self.field(x) for x in g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "torsion", FgAbelianGroup(0, self.torsion).torsion)
        if not gens:
            raise QuasilatticeError("a quasilattice needs at least one generator")
        n = len(gens[0])
        if n == 0 or any(len(g) != n for g in gens):
            raise QuasilatticeError("generators must be nonempty vectors of one common length")
        if len(gens) < n:
            raise QuasilatticeError(f"need at least n={n} generators, got {len(gens)}")
        if linalg.rank(self.gen_matrix) != n:
            raise QuasilatticeError("generator images do not span R^n")

    @property
    def n(self) -> int:
        return len(self.generators[0])

    @property
    def m(self) -> int:
        return len(self.generators)

    @cached_property
    def gen_matrix(self) -> list[list[FieldElement]]:
        """The ``n x m`` matrix whose column ``i`` is ``d(e_i)``."""
        return linalg.transpose(self.generators)

    @cached_property
    def _expanded(self) -> list[list[Fraction]]:
        return expand(self.gen_matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quasilattice):
            return NotImplemented
        return (
            self.field == other.field
            and self.generators == other.generators
            and self.torsion == other.torsion
        )

    def __hash__(self) -> int:
        return hash((self.generators, self.torsion))

    # -- evaluation ---------------------------------------------------------

    def apply(self, q: Sequence[int]) -> tuple:
        """``d(q)`` for an integer vector ``q`` in the free part."""
        if len(q) != self.m:
            raise ValueError(f"expected {self.m} integer coordinates")
        out = []
        for row in self.gen_matrix:
            acc = self.field.zero
            for a, c in zip(row, q):
                if c:
                    acc = acc + a * int(c)
            out.append(acc)
        return tuple(out)

    # -- integer linear algebra --------------------------------------------

    def contains(self, x: Sequence) -> Optional[list[int]]:
        """An integer ``q`` with ``d(q) == x``, or ``None`` if ``x`` is not in ``d(Q)``."""
        x = [self.field(v) for v in x]
        if len(x) != self.n:
            raise ValueError(f"expected a vector of length {self.n}")
        rhs = [xi.coeffs[k] for xi in x for k in range(self.field.degree)]
        rows = [r + [b] for r, b in zip(self._expanded, rhs)]
        ints = linalg.clear_denominators(rows)
        A = [r[:-1] for r in ints]
        b = [r[-1] for r in ints]
        q, _ = abelian.solve_integer(A, b, self.m)
        return q

    @cached_property
    def kernel_basis(self) -> list[list[int]]:
        """HNF basis of the integer kernel of the generator matrix."""
        return abelian.integer_kernel(linalg.clear_denominators(self._expanded), self.m)

    def kernel(self) -> FgAbelianGroup:
        """``ker d`` = torsion of ``Q`` plus the integer kernel on the free part."""
        return FgAbelianGroup(len(self.kernel_basis), self.torsion)

    def image_rank(self) -> int:
        return self.m - len(self.kernel_basis)

    def is_discrete(self) -> bool:
        return self.image_rank() == self.n

    def intersect_subspace(self, W: Sequence[Sequence]) -> list[list[int]]:
        """Basis of ``{q in Z^m : d(q) in span(W)}``.

        Its image under ``d`` is ``d(Q) & span(W)``.
        """
        W = [[self.field(x) for x in w] for w in W]
        if W and linalg.rank(W) != len(W):
            raise DependentBasis("subspace basis is linearly dependent")
        if any(len(w) != self.n for w in W):
            raise ValueError(f"subspace vectors must have length {self.n}")
        if W:
            annihilator = linalg.nullspace(W)
        else:
            annihilator = [
                [self.field.one if i == j else self.field.zero for j in range(self.n)]
                for i in range(self.n)
            ]
        if not annihilator:
            return abelian.identity(self.m)
        conditions = linalg.matmul(annihilator, self.gen_matrix)
        rows = linalg.clear_denominators(expand(conditions))
        return abelian.integer_kernel(rows, self.m)

    # -- rational image lattices -------------------------------------------

    def is_rational(self) -> bool:
        return all(x.is_rational() for g in self.generators for x in g)

    def image_lattice_basis(self) -> Optional[list[list[Fraction]]]:
        """HNF basis of ``d(Q)`` when all generator coordinates are rational."""
        if not self.is_rational():
            return None
        gens = [[x.to_fraction() for x in g] for g in self.generators]
        M = lcm(*(x.denominator for g in gens for x in g))
        basis = abelian.hnf_basis([[int(x * M) for x in g] for g in gens], self.n)
        return [[Fraction(x, M) for x in b] for b in basis]

    def image_is_standard_lattice(self) -> bool:
        """True iff ``d(Q) == Z^n`` in the given coordinates."""
        if not self.is_rational():
            return False
        if any(x.to_fraction().denominator != 1 for g in self.generators for x in g):
            return False
        basis = self.image_lattice_basis()
        if basis != [[Fraction(int(i == j)) for j in range(self.n)] for i in range(self.n)]:
            return False
        one = self.field.one
        zero = self.field.zero
        return all(
            self.contains([one if i == j else zero for j in range(self.n)]) is not None
            for i in range(self.n)
        )

