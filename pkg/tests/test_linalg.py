import random
from fractions import Fraction

import numpy as np
import pytest

from hypercut.intersection import build_A_array
from hypercut.linalg import (
    ExactMatrix,
    InfeasibilityWitness,
    SolutionSpace,
    affine_rank,
    exact_rank,
    in_affine_span,
    read_matrix,
    solve_affine,
    write_matrix,
)
from oracles import naive_rank


def test_rank_identity_and_zero():
    assert exact_rank(ExactMatrix.identity(7)) == 7
    assert exact_rank(ExactMatrix.zeros(4, 6)) == 0
    assert exact_rank(ExactMatrix([[]])) == 0


def test_rank_matches_naive_on_random_rationals():
    rng = random.Random(20240)
    for _ in range(12):
        rows = [
            [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(20)]
            for _ in range(20)
        ]
        assert exact_rank(rows) == naive_rank(rows)


def test_rank_matches_naive_on_rank_deficient():
    rng = random.Random(99)
    for _ in range(8):
        # product of 12x4 and 4x10 has rank at most 4
        a = [[rng.randint(-5, 5) for _ in range(4)] for _ in range(12)]
        b = [[rng.randint(-5, 5) for _ in range(10)] for _ in range(4)]
        m = [
            [sum(a[i][l] * b[l][j] for l in range(4)) for j in range(10)]
            for i in range(12)
        ]
        r = exact_rank(m)
        assert r <= 4
        assert r == naive_rank(m)


def test_rank_transpose_and_gram_agree():
    rng = random.Random(7)
    for _ in range(5):
        m = ExactMatrix(
            [[rng.randint(-3, 3) for _ in range(6)] for _ in range(9)]
        )
        r = exact_rank(m)
        assert r == exact_rank(m.transpose())
        assert r == exact_rank(m.transpose() @ m)


def test_rank_huge_entries_falls_back_exactly():
    # entries far past int64: forces the big-integer engine
    big = 10**30
    rows = [
        [big, 0, big],
        [0, big, big],
        [big, big, 2 * big],
    ]
    assert exact_rank(rows) == 2 == naive_rank(rows)


def test_rank_numpy_input():
    arr = build_A_array(6, 2, (3, 3))
    assert exact_rank(arr) == 10
    with pytest.raises(TypeError):
        exact_rank(np.zeros((2, 2)))  # float dtype refused


def test_solve_identity():
    b = [Fraction(3), Fraction(-1, 2), Fraction(5)]
    sol = solve_affine(ExactMatrix.identity(3), b)
    assert isinstance(sol, SolutionSpace)
    assert sol.particular == b
    assert sol.nullspace_basis == []
    assert sol.system_rank == 3


def test_solve_zero_matrix():
    sol = solve_affine(ExactMatrix.zeros(1, 5), [0])
    assert sol.nullity == 5
    assert sol.particular == [Fraction(0)] * 5


def test_solve_infeasible_witness():
    m = ExactMatrix([[1, 1], [1, 1]])
    out = solve_affine(m, [1, 2])
    assert isinstance(out, InfeasibilityWitness)
    y = out.certificate
    for j in range(2):
        assert sum(y[i] * m.entry(i, j) for i in range(2)) == 0
    assert y[0] * 1 + y[1] * 2 == 1


def test_solve_infeasible_witness_rational():
    m = ExactMatrix(
        [
            [Fraction(1, 2), Fraction(1, 3), 1],
            [Fraction(1, 4), Fraction(1, 6), Fraction(1, 2)],
        ]
    )
    b = [Fraction(1), Fraction(1, 3)]  # second row is half the first: needs 1/2
    out = solve_affine(m, b)
    assert isinstance(out, InfeasibilityWitness)
    y = out.certificate
    for j in range(3):
        assert sum(y[i] * m.entry(i, j) for i in range(2)) == 0
    assert sum(yi * bi for yi, bi in zip(y, b)) == 1


def test_solve_random_consistent_systems_verified_by_multiplication():
    rng = random.Random(4242)
    for _ in range(10):
        nrows, ncols = rng.randint(2, 8), rng.randint(2, 8)
        m = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(ncols)]
             for _ in range(nrows)]
        x = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(ncols)]
        b = [sum(r[j] * x[j] for j in range(ncols)) for r in m]
        sol = solve_affine(m, b)
        assert isinstance(sol, SolutionSpace)
        assert [sum(r[j] * sol.particular[j] for j in range(ncols)) for r in m] == b
        for v in sol.nullspace_basis:
            assert all(sum(r[j] * v[j] for j in range(ncols)) == 0 for r in m)
        assert sol.nullity == ncols - sol.system_rank
        # nullspace basis vectors are independent
        assert exact_rank(sol.nullspace_basis or [[0] * ncols]) == sol.nullity


def test_solve_balanced_system_nullity():
    # A_{8,2,(4,4)} x = p*16*1 has nullspace dimension 7 = t-1;
    # rank 21 cross-checked by the naive oracle
    arr = build_A_array(8, 2, (4, 4))
    assert naive_rank(arr.tolist()) == 21
    p = Fraction(1, 4)
    sol = solve_affine(arr, [p * 16] * arr.shape[0])
    assert isinstance(sol, SolutionSpace)
    assert sol.system_rank == 21
    assert sol.nullity == 7
    for row in arr.tolist():
        assert sum(Fraction(a) * x for a, x in zip(row, sol.particular)) == p * 16
        for v in sol.nullspace_basis:
            assert sum(Fraction(a) * x for a, x in zip(row, v)) == 0


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        solve_affine(ExactMatrix.identity(3), [1, 2])


def test_affine_rank_basics():
    assert affine_rank([]) == 0
    assert affine_rank([[1, 2, 3]]) == 1
    v = [Fraction(1), Fraction(2)]
    assert affine_rank([v, v, v]) == 1
    # three collinear points on a line in the plane
    assert affine_rank([[0, 0], [1, 1], [2, 2]]) == 2
    # triangle
    assert affine_rank([[0, 0], [1, 0], [0, 1]]) == 3


def test_in_affine_span():
    vecs = [[0, 0], [2, 0], [0, 2]]
    assert in_affine_span([2, 0], vecs)
    assert in_affine_span([1, 0], vecs)          # midpoint of two members
    assert in_affine_span([5, -4], vecs)         # affine plane is everything here
    const = [[1, 1, 1], [2, 2, 2]]
    assert not in_affine_span([1, 0, 0], const)  # unit vector off the line
    assert in_affine_span([Fraction(3, 2)] * 3, const)
    with pytest.raises(ValueError):
        in_affine_span([1, 2, 3], vecs)


def test_matrix_io_roundtrip(tmp_path):
    m = ExactMatrix([[Fraction(1, 3), 2], [0, Fraction(-5, 7)]])
    path = tmp_path / "m.txt"
    write_matrix(m, path)
    assert read_matrix(path) == m
    first = path.read_bytes()
    write_matrix(m, path)
    assert path.read_bytes() == first
