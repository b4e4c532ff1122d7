"""Simple convex polytopes in H-representation over a real number field.

A polytope is the set ``{x : <x, normal_i> <= offset_i for all i}``.  Only
bounded, full-dimensional, irredundant and simple polytopes are accepted;
anything else raises a specific :class:`PolytopeError`.

Vertices are found by brute force over ``n``-subsets of facets, which is
fine for the documented size limit of 12 facets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Sequence

from . import linalg
from .scalar import FieldElement, RealAlgebraicField

MAX_FACETS = 12


class PolytopeError(ValueError):
    pass


class NotSimple(PolytopeError):
    pass


class Unbounded(PolytopeError):
    pass


class Empty(PolytopeError):
    pass


class NotFullDimensional(PolytopeError):
    pass


class RedundantFacet(PolytopeError):
    pass


class ZeroNormal(PolytopeError):
    pass


@dataclass(frozen=True)
class Vertex:
    point: tuple
    active_set: tuple


@dataclass(frozen=True, order=True)
class Face:
    """A closed face, named by the facets containing it."""

    dim: int
    active_set: tuple

    @property
    def codim(self) -> int:
        return len(self.active_set)

    def label(self) -> str:
        if not self.active_set:
            return "interior"
        return "∩".join(f"f{i + 1}" for i in self.active_set)


class HPolytope:
    def __init__(self, field: RealAlgebraicField, normals: Sequence[Sequence], offsets: Sequence):
        self.field = field
        self.normals = tuple(tuple(field(x) for x in v) for v in normals)
        self.offsets = tuple(field(x) for x in offsets)
        if len(self.normals) != len(self.offsets):
            raise ValueError("need one offset per facet normal")
        if not self.normals:
            raise ValueError("a polytope needs at least one facet")
        self.n = len(self.normals[0])
        if any(len(v) != self.n for v in self.normals):
            raise ValueError("facet normals must share one dimension")

    @property
    def d(self) -> int:
        return len(self.normals)

    @property
    def facets(self) -> list[tuple[tuple, FieldElement]]:
        return list(zip(self.normals, self.offsets))

    def slack(self, point: Sequence, i: int) -> FieldElement:
        return self.offsets[i] - linalg.dot(point, self.normals[i])

    def contains(self, point: Sequence) -> bool:
        return all(self.slack(point, i).sign() >= 0 for i in range(self.d))

    # -- validation ---------------------------------------------------------

    def _check_bounded(self) -> None:
        # The recession cone {u : N u <= 0} is trivial iff its intersection
        # with the box [-1, 1]^n has no vertex other than the origin.
        one, zero = self.field.one, self.field.zero
        rows = list(self.normals)
        rhs = [zero] * self.d
        for i in range(self.n):
            e = tuple(one if j == i else zero for j in range(self.n))
            rows += [e, tuple(-x for x in e)]
            rhs += [one, one]
        for subset in combinations(range(len(rows)), self.n):
            A = [rows[i] for i in subset]
            if linalg.det(A) == 0:
                continue
            u = linalg.solve(A, [rhs[i] for i in subset])
            if all(x == 0 for x in u):
                continue
            if all((rhs[j] - linalg.dot(u, rows[j])).sign() >= 0 for j in range(len(rows))):
                raise Unbounded(f"recession direction {[str(x) for x in u]}")

    @cached_property
    def _vertices(self) -> list[Vertex]:
        for i, v in enumerate(self.normals):
            if all(x == 0 for x in v):
                raise ZeroNormal(f"facet f{i + 1} has zero normal")
        if self.d > MAX_FACETS:
            raise PolytopeError(f"more than {MAX_FACETS} facets is beyond the supported size")
        if self.d < self.n + 1:
            raise Unbounded(f"{self.d} half-spaces cannot bound a region in dimension {self.n}")
        self._check_bounded()

        found: list[Vertex] = []
        for subset in combinations(range(self.d), self.n):
            A = [self.normals[i] for i in subset]
            if linalg.det(A) == 0:
                continue
            x = linalg.solve(A, [self.offsets[i] for i in subset])
            active = list(subset)
            feasible = True
            for j in range(self.d):
                if j in subset:
                    continue
                s = self.slack(x, j).sign()
                if s < 0:
                    feasible = False
                    break
                if s == 0:
                    active.append(j)
            if not feasible:
                continue
            if len(active) > self.n:
                raise NotSimple(
                    f"vertex {[str(c) for c in x]} lies on {len(active)} facets "
                    f"({', '.join(f'f{i + 1}' for i in sorted(active))})"
                )
            found.append(Vertex(tuple(x), tuple(sorted(active))))
        if not found:
            raise Empty("no feasible vertex")

        base = found[0].point
        diffs = [[a - b for a, b in zip(v.point, base)] for v in found[1:]]
        if not diffs or linalg.rank(diffs) < self.n:
            raise NotFullDimensional("vertices do not span the ambient space")
        used = {i for v in found for i in v.active_set}
        missing = [i for i in range(self.d) if i not in used]
        if missing:
            raise RedundantFacet(f"facet f{missing[0] + 1} does not support a facet of the polytope")
        return sorted(found, key=lambda v: v.active_set)

    def vertices(self) -> list[Vertex]:
        """All vertices, sorted by active set.  Raises :class:`PolytopeError`."""
        return list(self._vertices)

    def validate(self) -> None:
        self._vertices

    # -- combinatorics ------------------------------------------------------

    @cached_property
    def _faces(self) -> list[Face]:
        verts = self._vertices
        sets = set()
        for v in verts:
            for k in range(len(v.active_set) + 1):
                sets.update(combinations(v.active_set, k))
        faces = []
        for s in sets:
            containing = [set(v.active_set) for v in verts if set(s) <= set(v.active_set)]
            closure = tuple(sorted(set.intersection(*containing)))
            if closure != s:
                raise NotSimple(f"face {s} is not cut out by exactly its facets")
            faces.append(Face(self.n - len(s), s))
        return sorted(faces)

    def face_lattice(self) -> list[Face]:
        """All faces, including the polytope itself (empty active set)."""
        return list(self._faces)

    def face(self, active_set: Sequence[int]) -> Face:
        key = tuple(sorted(active_set))
        for f in self._faces:
            if f.active_set == key:
                return f
        raise KeyError(f"no face with active set {key}")

    def face_vertices(self, face: Face) -> list[Vertex]:
        s = set(face.active_set)
        return [v for v in self._vertices if s <= set(v.active_set)]

    def vertex_faces(self) -> list[Face]:
        return [f for f in self._faces if f.dim == 0]

    def ann(self, face: Face) -> list[tuple]:
        """Basis of the normal space of ``face``: its active facet normals."""
        return [self.normals[i] for i in face.active_set]

    def incidence(self) -> frozenset:
        """Vertex-facet incidence as a set of active sets."""
        return frozenset(frozenset(v.active_set) for v in self._vertices)
