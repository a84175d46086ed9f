import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from schurlab.intlinalg import (
    IntegerSolver,
    LatticeBasis,
    SparseIntMatrix,
    quotient_invariants,
    snf,
    xgcd,
)


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_xgcd_bezout(a, b):
    g, u, v = xgcd(a, b)
    assert g >= 0
    assert u * a + v * b == g
    if a or b:
        assert a % g == 0 and b % g == 0


def _dense(result, rows, cols):
    d = [[0] * cols for _ in range(rows)]
    for i, v in enumerate(result.diagonal):
        d[i][i] = v
    return d


def _matmul(A, B):
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0]))]
        for i in range(len(A))
    ]


def test_snf_known():
    A = SparseIntMatrix.from_dense([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    result = snf(A)
    assert result.diagonal == (2, 2, 156)


def test_snf_divisibility_and_transforms():
    rng = random.Random(7)
    for _ in range(40):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        dense = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        A = SparseIntMatrix.from_dense(dense)
        result = snf(A, want_transforms=True)
        for a, b in zip(result.diagonal, result.diagonal[1:]):
            assert b % a == 0
        assert all(d > 0 for d in result.diagonal)
        lhs = _matmul(_matmul(result.row_transform, dense), result.col_transform)
        assert lhs == _dense(result, rows, cols)


def test_snf_matches_sympy():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form

    rng = random.Random(11)
    for _ in range(20):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        dense = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
        ours = snf(SparseIntMatrix.from_dense(dense)).diagonal
        ref = smith_normal_form(sympy.Matrix(dense))
        ref_diag = tuple(
            abs(int(ref[i, i])) for i in range(min(rows, cols)) if ref[i, i] != 0
        )
        assert ours == ref_diag


def test_quotient_invariants_known():
    assert quotient_invariants(2, [{0: 2}, {1: 3}]) == ((6,), 0)
    assert quotient_invariants(3, [{0: 2}, {1: 4}]) == ((2, 4), 1)
    assert quotient_invariants(2, []) == ((), 2)
    assert quotient_invariants(2, [{0: 1}, {1: 1}]) == ((), 0)


def test_lattice_basis_membership():
    basis = LatticeBasis(3)
    basis.add({0: 2, 1: 4})
    basis.add({1: 3})
    assert basis.contains({0: 2, 1: 7})
    assert basis.contains({1: 3})
    assert not basis.contains({0: 1})
    assert not basis.contains({2: 1})
    assert basis.rank == 2


def test_lattice_basis_insertion_order_irrelevant():
    rng = random.Random(3)
    vectors = [{0: 6, 2: 3}, {1: 4}, {0: 2, 1: 2, 2: 2}, {2: 9}]
    reference = None
    for _ in range(10):
        shuffled = vectors[:]
        rng.shuffle(shuffled)
        basis = LatticeBasis(3)
        for v in shuffled:
            basis.add(dict(v))
        inv = basis.quotient_invariants()
        if reference is None:
            reference = inv
        assert inv == reference


def test_integer_solver():
    solver = IntegerSolver(2, [{0: 2, 1: 1}, {1: 3}])
    x = solver.solve({0: 2, 1: 4})
    assert x == [1, 1]
    with pytest.raises(ValueError):
        solver.solve({0: 1})
