"""Exact linear algebra: echelon form, rank, kernels, span membership, and
determinants, cross-checked against a cofactor-expansion oracle."""

import random
from fractions import Fraction

from flagnest.exactpoly import GaussRat
from flagnest.linalg import (
    determinant,
    in_row_span,
    kernel_basis,
    mat_vec,
    matrix_rank,
    row_echelon,
)


def cofactor_det(m):
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        sign = 1 if j % 2 == 0 else -1
        total += sign * Fraction(m[0][j]) * cofactor_det(minor)
    return total


def test_determinant_against_cofactor_oracle():
    rng = random.Random(20240814)
    for _ in range(200):
        n = rng.randint(1, 5)
        m = [[Fraction(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        assert determinant(m) == cofactor_det(m)


def test_determinant_identity_and_swap():
    ident = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
    assert determinant(ident) == 1
    swapped = [ident[1], ident[0], ident[2], ident[3]]
    assert determinant(swapped) == -1


def test_row_echelon_and_rank():
    rows = [
        [Fraction(1), Fraction(2), Fraction(3)],
        [Fraction(2), Fraction(4), Fraction(6)],
        [Fraction(0), Fraction(1), Fraction(1)],
    ]
    ech, pivots = row_echelon(rows)
    assert pivots == [0, 1]
    assert len(ech) == 2
    assert matrix_rank(rows) == 2


def test_in_row_span():
    rows = [[Fraction(1), Fraction(0), Fraction(1)], [Fraction(0), Fraction(1), Fraction(2)]]
    ech, pivots = row_echelon(rows)
    assert in_row_span(ech, pivots, [Fraction(2), Fraction(3), Fraction(8)])
    assert not in_row_span(ech, pivots, [Fraction(0), Fraction(0), Fraction(1)])


def test_kernel_basis_annihilates():
    rng = random.Random(7)
    for _ in range(60):
        nrows = rng.randint(1, 4)
        ncols = rng.randint(1, 5)
        rows = [[Fraction(rng.randint(-3, 3)) for _ in range(ncols)] for _ in range(nrows)]
        basis = kernel_basis(rows, ncols=ncols)
        assert len(basis) == ncols - matrix_rank(rows)
        for vec in basis:
            assert all(v == 0 for v in mat_vec(rows, vec))


def test_kernel_basis_over_gaussian_rationals():
    i = GaussRat.i()
    one = GaussRat(1)
    rows = [[one, i]]
    basis = kernel_basis(rows, ncols=2, zero=GaussRat(0), one=one)
    assert len(basis) == 1
    vec = basis[0]
    assert (vec[0] + i * vec[1]).is_zero()
