"""Exact arithmetic layer: Gaussian rationals, dense univariate polynomials
(plain and with graded-ring coefficients), graded multivariate polynomials,
and partition generation."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flagnest.exactpoly import (
    GaussRat,
    GradedPoly,
    UniPoly,
    coeff_plus,
    elementary_symmetric_polys,
    exact_div,
    partitions,
    poly_mul,
)

rationals = st.fractions(min_value=-10, max_value=10, max_denominator=12)
gauss = st.builds(GaussRat, rationals, rationals)
small_polys = st.lists(st.integers(min_value=-6, max_value=6), max_size=6).map(UniPoly)


@given(gauss, gauss, gauss)
def test_gauss_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c


@given(gauss, gauss)
def test_gauss_division_inverts_multiplication(a, b):
    if a.is_zero():
        return
    assert (a * b) / a == b


@given(gauss, gauss)
def test_gauss_conjugation(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    norm = a * a.conj()
    assert norm.im == 0
    assert norm.re >= 0


def test_gauss_basics():
    i = GaussRat.i()
    assert i * i == GaussRat(-1)
    assert GaussRat.of(Fraction(1, 2)) == GaussRat(Fraction(1, 2), 0)
    assert GaussRat(0, 0).is_zero()
    assert not GaussRat(0, 1).is_zero()
    with pytest.raises(ZeroDivisionError):
        GaussRat(1) / GaussRat(0)


def test_unipoly_square_of_1221():
    p = UniPoly([1, 2, 2, 1])
    sq = poly_mul(p, p)
    assert sq.coeffs == (1, 4, 8, 10, 8, 4, 1)
    assert sq.coeff(3) == 10


def test_unipoly_degree_conventions():
    assert UniPoly().degree is None
    assert UniPoly([0, 0]).degree is None
    assert UniPoly([5]).degree == 0
    assert UniPoly.t(3).degree == 3
    assert UniPoly([1, 0, 2, 0]).coeffs == (1, 0, 2)


def test_unipoly_substitute_neg():
    p = UniPoly([1, 2, 3, 4])
    assert p.substitute_neg().coeffs == (1, -2, 3, -4)
    assert p.substitute_neg().substitute_neg() == p


def test_unipoly_evaluate_truncate_json():
    p = UniPoly([1, 1, 1])
    assert p.evaluate(2) == 7
    assert p.evaluate(Fraction(1, 2)) == Fraction(7, 4)
    assert p.truncate(1) == UniPoly([1, 1])
    assert UniPoly.from_json(p.to_json()) == p


def test_coeff_plus_strictly_positive_degrees():
    p = UniPoly([5, 0, 3, 0, -1])
    assert coeff_plus(p) == {2: Fraction(3), 4: Fraction(-1)}


@given(small_polys, small_polys)
def test_exact_div_inverts_multiplication(p, q):
    if q.is_zero():
        return
    assert exact_div(p * q, q) == p


def test_exact_div_rejects_inexact():
    assert exact_div(UniPoly([1, 1, 1]), UniPoly([1, 1])) is None
    assert exact_div(UniPoly([1, 0, 0, 0, 0, 0, -1]), UniPoly([1, 1])) is not None


def test_unipoly_with_graded_coefficients():
    gens = (("u", 1), ("v", 1))
    u = GradedPoly.generator(gens, "u")
    v = GradedPoly.generator(gens, "v")
    one = GradedPoly.const(gens, 1)
    p = UniPoly([one, u]) * UniPoly([one, v])
    assert p.coeff(0) == one
    assert p.coeff(1) == u + v
    assert p.coeff(2) == u * v
    assert coeff_plus(p) == {1: u + v, 2: u * v}


def test_graded_poly_ring_basics():
    gens = (("h", 1), ("k", 2))
    h = GradedPoly.generator(gens, "h")
    k = GradedPoly.generator(gens, "k")
    p = (h + k) ** 2
    assert p == h * h + 2 * (h * k) + k * k
    assert p.coefficient({"h": 1, "k": 1}) == 2
    assert p.coefficient({"h": 2}) == 1
    assert sorted(p.support_degrees()) == [2, 3, 4]
    assert p.degree_slice(3) == 2 * (h * k)
    assert p.homogeneous_degree() is None
    assert (h * k).homogeneous_degree() == 3


def test_graded_poly_substitute():
    gens = (("h", 1), ("k", 2))
    h = GradedPoly.generator(gens, "h")
    k = GradedPoly.generator(gens, "k")
    p = k + h * h
    q = p.substitute("k", -(h * h))
    assert q.is_zero()


def test_elementary_symmetric():
    gens = tuple((f"x{i}", 1) for i in range(1, 4))
    es = elementary_symmetric_polys(gens, ["x1", "x2", "x3"])
    assert len(es) == 4
    assert es[0] == GradedPoly.const(gens, 1)
    x1 = GradedPoly.generator(gens, "x1")
    x2 = GradedPoly.generator(gens, "x2")
    x3 = GradedPoly.generator(gens, "x3")
    assert es[1] == x1 + x2 + x3
    assert es[2] == x1 * x2 + x1 * x3 + x2 * x3
    assert es[3] == x1 * x2 * x3
    one = GradedPoly.const(gens, 1)
    product = UniPoly([one])
    for x in (x1, x2, x3):
        product = product * UniPoly([one, x])
    assert list(product.coeffs) == es


def test_partitions_of_eight():
    parts = list(partitions(8))
    assert len(parts) == 22
    assert len(set(parts)) == 22
    for lam in parts:
        assert sum(lam) == 8
        assert all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


def test_partitions_max_part():
    capped = list(partitions(8, max_part=2))
    assert len(capped) == 5
    assert all(lam[0] <= 2 for lam in capped)
    assert list(partitions(0)) == [()]
