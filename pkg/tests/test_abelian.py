import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from oracles import coset_count, echelon, in_lattice, reduce_mod

from stackypoly import abelian
from stackypoly.abelian import FgAbelianGroup


def matrices(max_dim=5, bound=10):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-bound, bound), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def is_hnf(H):
    """Row HNF: positive pivots moving right, zeros below, entries above each pivot in [0, pivot)."""
    last = -1
    seen_zero = False
    for i, row in enumerate(H):
        piv = next((j for j, x in enumerate(row) if x), None)
        if piv is None:
            seen_zero = True
            continue
        if seen_zero or piv <= last or row[piv] <= 0:
            return False
        if any(not 0 <= H[k][piv] < row[piv] for k in range(i)):
            return False
        last = piv
    return True


def _small_unimodular(bound=3):
    for a, b, c, d in itertools.product(range(-bound, bound + 1), repeat=4):
        if abs(a * d - b * c) == 1:
            yield [[a, b], [c, d]]


def test_hnf_examples():
    assert abelian.hnf([[0, 1], [1, 0]])[0] == [[1, 0], [0, 1]]
    assert abelian.hnf([[2, 0], [0, 3]])[0] == [[2, 0], [0, 3]]


def test_hnf_reduced_example_by_exhaustive_search():
    # every U*A in HNF over small unimodular U must agree with our answer
    A = [[2, 4], [1, 3]]
    H, U = abelian.hnf(A)
    found = {tuple(map(tuple, abelian.matmul(W, A))) for W in _small_unimodular() if is_hnf(abelian.matmul(W, A))}
    assert found == {tuple(map(tuple, H))}
    assert H == [[1, 1], [0, 2]]
    assert abelian.matmul(U, A) == H


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_hnf_properties(A):
    c = len(A[0])
    H, U = abelian.hnf(A, c)
    assert abelian.matmul(U, A) == H
    assert abs(abelian.det(U)) == 1
    assert is_hnf(H)
    assert abelian.hnf(H, c)[0] == H
    # same row lattice as the naive Euclidean oracle
    rows = [r for r in H if any(r)]
    assert all(in_lattice(r, A, c) for r in rows)
    assert all(in_lattice(r, rows, c) for r in A) if rows else not any(any(r) for r in A)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_snf_properties(A):
    r, c = len(A), len(A[0])
    S, U, V = abelian.snf(A, c)
    assert abelian.matmul(abelian.matmul(U, A), V) == S
    assert abs(abelian.det(U)) == 1 and abs(abelian.det(V)) == 1
    d = [x for x in abelian.diagonal(S) if x]
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    assert all(S[i][j] == 0 for i in range(r) for j in range(c) if i != j)


@settings(max_examples=100, deadline=None)
@given(matrices(max_dim=4, bound=6))
def test_snf_matches_sympy(A):
    from sympy import Matrix, ZZ
    from sympy.matrices.normalforms import invariant_factors

    c = len(A[0])
    ours = [x for x in abelian.diagonal(abelian.snf(A, c)[0]) if x]
    theirs = [abs(int(x)) for x in invariant_factors(Matrix(A), domain=ZZ) if x]
    assert ours == theirs


def test_snf_examples():
    assert abelian.diagonal(abelian.snf([[2, 0], [0, 3]])[0]) == [1, 6]
    assert abelian.diagonal(abelian.snf([[1, 0], [0, 1]])[0]) == [1, 1]
    assert abelian.diagonal(abelian.snf([[2, 0], [0, 2]])[0]) == [2, 2]


def test_cyclic_oracle_for_diag_2_3():
    # Z^2/<(2,0),(0,3)> has 6 elements and (1,1) generates it
    basis = echelon([[2, 0], [0, 3]], 2)
    seen, x = set(), (0, 0)
    for _ in range(6):
        seen.add(x)
        x = reduce_mod([a + 1 for a in x], basis)
    assert len(seen) == 6 == coset_count([[2, 0], [0, 3]], 2)


def test_cokernel_examples():
    G = abelian.cokernel([[2, 0], [0, 3]])
    assert (G.free_rank, G.torsion) == (0, (6,))
    assert coset_count([[2, 0], [0, 3]], 2) == 6
    G = abelian.cokernel([[1], [0]], 1)
    assert (G.free_rank, G.torsion) == (1, ())
    G = abelian.cokernel([[], []], 0)
    assert (G.free_rank, G.torsion) == (2, ())
    G = abelian.cokernel([[2, 0], [0, 2]])
    assert (G.free_rank, G.torsion) == (0, (2, 2)) and G.order == 4 == coset_count([[2, 0], [0, 2]], 2)


def test_solve_integer_examples():
    assert abelian.solve_integer([[2]], [4], 1) == ([2], [])
    assert abelian.solve_integer([[2]], [3], 1)[0] is None
    x, kernel = abelian.solve_integer([[1, 1]], [0], 2)
    assert abelian.matvec([[1, 1]], x) == [0]
    assert len(kernel) == 1 and kernel[0] in ([1, -1], [-1, 1])


@settings(max_examples=150, deadline=None)
@given(matrices(max_dim=4, bound=6), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_integer_roundtrip(A, q):
    c = len(A[0])
    q = q[:c]
    b = abelian.matvec(A, q)
    x, kernel = abelian.solve_integer(A, b, c)
    assert x is not None and abelian.matvec(A, x) == b
    for k in kernel:
        assert abelian.matvec(A, k) == [0] * len(A)


def test_group_invariants():
    assert str(FgAbelianGroup()) == "trivial"
    assert str(FgAbelianGroup(1, (2,))) == "Z x Z/2"
    assert FgAbelianGroup.from_cyclic(0, [2, 3]) == FgAbelianGroup(0, (6,))
    assert FgAbelianGroup(0, (2,)) + FgAbelianGroup(1, (3,)) == FgAbelianGroup(1, (6,))
    assert FgAbelianGroup(2).order is None
    with pytest.raises(ValueError):
        FgAbelianGroup(0, (4, 2))
