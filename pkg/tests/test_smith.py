import random

import pytest

from algebra.smith import IntegerSolver, invariant_factors, matmul, row_times_matrix, smith_normal_form


def _det(a):
    if len(a) == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _det([row[:j] + row[j + 1:] for row in a[1:]]) for j in range(len(a)))


@pytest.mark.parametrize("seed", range(10))
def test_snf_factorization(seed):
    rng = random.Random(seed)
    rows, cols = rng.randint(1, 4), rng.randint(1, 4)
    a = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
    u, d, v, vinv = smith_normal_form(a)
    assert matmul(matmul(u, a), v) == d
    assert abs(_det(u)) == 1
    assert matmul(v, vinv) == [[int(i == j) for j in range(cols)] for i in range(cols)]
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert d[i][j] == 0
    diag = [d[i][i] for i in range(min(rows, cols))]
    nonzero = [x for x in diag if x]
    assert all(x > 0 for x in nonzero)
    for x, y in zip(nonzero, nonzero[1:]):
        assert y % x == 0


def test_invariant_factors():
    assert invariant_factors([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]) == [2, 6, 12]
    assert invariant_factors([[3, 0], [0, 9]]) == [3, 9]


def test_empty_matrix():
    u, d, v, vinv = smith_normal_form([], ncols=2)
    assert u == [] and d == []
    assert v == [[1, 0], [0, 1]]


class TestIntegerSolver:
    def test_solve(self):
        a = [[2, 0], [0, 3], [1, 1]]
        solver = IntegerSolver(a)
        y = solver.solve([5, 7])
        assert row_times_matrix(y, a) == [5, 7]

    def test_no_solution(self):
        solver = IntegerSolver([[2, 0], [0, 2]])
        assert solver.solve([1, 0]) is None

    def test_left_kernel(self):
        a = [[1, 2], [2, 4], [0, 1]]
        solver = IntegerSolver(a)
        kernel = solver.left_kernel()
        assert len(kernel) == 1
        assert row_times_matrix(kernel[0], a) == [0, 0]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            IntegerSolver([[1, 0]]).solve([1])
