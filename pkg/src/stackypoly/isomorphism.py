"""Isomorphism testing for decorated polytopes.

An isomorphism is a linear map ``T`` of ``R^n`` together with a facet
bijection ``sigma`` and a translation ``c`` such that

* ``T lambda_f == lambda'_{sigma(f)}`` for every facet (orientation is
  rigid: both sides use outward normals),
* ``T d(Q) == d'(Q')`` as subgroups and ``ker d ~= ker d'`` abstractly,
* ``L'_{sigma(f)} == L_f + <c, lambda_f>`` for every facet.

Strict quasilattice isomorphism is used as the model of equivalence of the
presented stacky tori.  That every equivalence between the two fixed
presentations is of this form is an assumption of this module.

Candidates are generated from a base vertex of the first polytope: each
vertex of the second one and each matching of the ``n`` facets there
determines ``T``, which in turn determines ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from . import linalg
from .decorated import DecoratedPolytope

MAX_FACETS = 10


@dataclass(frozen=True)
class IsoWitness:
    T: tuple  # n x n rows
    c: tuple
    sigma: tuple  # sigma[i] = facet of the second polytope matched with facet i
    kernel_iso_note: str = ""

    def sort_key(self):
        return (self.sigma, tuple(_entry_key(x) for row in self.T for x in row))


def _entry_key(x):
    return tuple(x.coeffs)


def _apply(T, v):
    return tuple(linalg.matvec(T, list(v)))


def _same_subgroup(D: DecoratedPolytope, E: DecoratedPolytope, T, T_inv) -> bool:
    Q, R = D.quasilattice, E.quasilattice
    if any(R.contains(_apply(T, g)) is None for g in Q.generators):
        return False
    return all(Q.contains(_apply(T_inv, g)) is not None for g in R.generators)


def _candidates(D: DecoratedPolytope, E: DecoratedPolytope):
    base = D.polytope.vertices()[0].active_set
    A = linalg.transpose([D.normals[i] for i in base])
    A_inv = linalg.inverse(A)
    target_normals = {tuple(v): j for j, v in enumerate(E.normals)}
    incidence = E.polytope.incidence()
    for w in E.polytope.vertices():
        for image in permutations(w.active_set):
            B = linalg.transpose([E.normals[j] for j in image])
            T = linalg.matmul(B, A_inv)
            sigma = []
            for v in D.normals:
                j = target_normals.get(_apply(T, v))
                if j is None:
                    break
                sigma.append(j)
            else:
                if len(set(sigma)) != D.d:
                    continue
                mapped = frozenset(
                    frozenset(sigma[i] for i in v.active_set) for v in D.polytope.vertices()
                )
                if mapped != incidence:
                    continue
                yield tuple(tuple(row) for row in T), tuple(sigma), base


def are_isomorphic(D: DecoratedPolytope, E: DecoratedPolytope) -> Optional[IsoWitness]:
    """The lexicographically smallest witness ``(sigma, T)``, or ``None``."""
    if D.n != E.n or D.d != E.d:
        return None
    if D.field != E.field:
        raise ValueError("polytopes over different number fields cannot be compared")
    if D.d > MAX_FACETS:
        raise ValueError(f"isomorphism search is limited to {MAX_FACETS} facets")
    KD, KE = D.quasilattice.kernel(), E.quasilattice.kernel()
    if KD != KE:
        return None
    if len(D.polytope.vertices()) != len(E.polytope.vertices()):
        return None

    found = []
    for T, sigma, base in _candidates(D, E):
        T_inv = linalg.inverse([list(r) for r in T])
        if not _same_subgroup(D, E, T, T_inv):
            continue
        # translation from the base vertex facets, then checked on all facets
        A = [list(D.normals[i]) for i in base]
        rhs = [E.offsets[sigma[i]] - D.offsets[i] for i in base]
        c = linalg.solve(A, rhs)
        if all(
            E.offsets[sigma[i]] == D.offsets[i] + linalg.dot(c, D.normals[i]) for i in range(D.d)
        ):
            found.append(IsoWitness(T, tuple(c), sigma, f"ker d ~= ker d' ~= {KD}"))
    if not found:
        return None
    return min(found, key=IsoWitness.sort_key)


def verify_witness(D: DecoratedPolytope, E: DecoratedPolytope, w: IsoWitness) -> list[str]:
    """Re-check every isomorphism condition; returns the list of violated ones."""
    problems = []
    T = [list(r) for r in w.T]
    if linalg.det(T) == 0:
        return ["T is singular"]
    T_inv = linalg.inverse(T)
    if sorted(w.sigma) != list(range(E.d)) or D.d != E.d:
        problems.append("sigma is not a bijection of facets")
        return problems
    for i, v in enumerate(D.normals):
        if _apply(T, v) != tuple(E.normals[w.sigma[i]]):
            problems.append(f"T lambda_f{i + 1} != lambda'_f{w.sigma[i] + 1}")
    if not _same_subgroup(D, E, T, T_inv):
        problems.append("T d(Q) != d'(Q')")
    if D.quasilattice.kernel() != E.quasilattice.kernel():
        problems.append("ker d and ker d' are not isomorphic")
    for i in range(D.d):
        if E.offsets[w.sigma[i]] != D.offsets[i] + linalg.dot(w.c, D.normals[i]):
            problems.append(f"offset of f{i + 1} does not match after translation")
    # T^* maps the second polytope onto the first one translated by c
    for v in E.polytope.vertices():
        pulled = linalg.matvec(linalg.transpose(T), list(v.point))
        moved = [a - b for a, b in zip(pulled, w.c)]
        if not D.polytope.contains(moved):
            problems.append("T^*(P') is not P + c")
            break
    mapped = frozenset(
        frozenset(w.sigma[i] for i in v.active_set) for v in D.polytope.vertices()
    )
    if mapped != E.polytope.incidence():
        problems.append("sigma does not preserve the face lattice")
    return problems


def invert(w: IsoWitness) -> IsoWitness:
    T_inv = linalg.inverse([list(r) for r in w.T])
    c = [-x for x in linalg.matvec(linalg.transpose(T_inv), list(w.c))]
    sigma = [0] * len(w.sigma)
    for i, j in enumerate(w.sigma):
        sigma[j] = i
    return IsoWitness(tuple(tuple(r) for r in T_inv), tuple(c), tuple(sigma), w.kernel_iso_note)


def compose(first: IsoWitness, second: IsoWitness) -> IsoWitness:
    """Witness for ``D -> F`` from witnesses ``D -> E`` and ``E -> F``."""
    T = linalg.matmul([list(r) for r in second.T], [list(r) for r in first.T])
    shift = linalg.matvec(linalg.transpose([list(r) for r in first.T]), list(second.c))
    c = [a + b for a, b in zip(first.c, shift)]
    sigma = tuple(second.sigma[j] for j in first.sigma)
    return IsoWitness(tuple(tuple(r) for r in T), tuple(c), sigma, first.kernel_iso_note)
