"""Chern vector positivity and the 1 - t^k factorization engine.

The nef check is cross-validated against a deliberately naive evaluator
(cofactor determinants, no partition cap, no caching); the factorization
engine against its defining product identity and against the closed-form
family list at the minimal ambient dimension.
"""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flagnest.chern import (
    ChernVector,
    chern_from_poly,
    cyclotomic,
    factor_unit_minus_tk,
    lemma_c1_consequences,
    nef_feasible,
    parse_chern_vector,
    partition_str,
    schur_minor,
    schwarzenberger_s33,
)
from flagnest.errors import UnsupportedInputError
from flagnest.exactpoly import UniPoly


# --- naive oracle -----------------------------------------------------------


def _cofactor_det(m):
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        sign = 1 if j % 2 == 0 else -1
        total += sign * Fraction(m[0][j]) * _cofactor_det(minor)
    return total


def _naive_partitions(weight, cap):
    if weight == 0:
        yield ()
        return
    for first in range(min(cap, weight), 0, -1):
        for rest in _naive_partitions(weight - first, first):
            yield (first,) + rest


def naive_nef(entries, ambient):
    """Reference nef check: every Schur determinant, cofactor expansion."""

    def e(i):
        return Fraction(entries[i]) if 0 <= i < len(entries) else Fraction(0)

    for weight in range(1, ambient + 1):
        for lam in _naive_partitions(weight, weight):
            t = len(lam)
            mat = [[e(lam[i] - (i + 1) + (j + 1)) for j in range(t)] for i in range(t)]
            if _cofactor_det(mat) < 0:
                return False
    return True


# --- Schur minors -----------------------------------------------------------


def test_schur_minor_examples():
    c = ChernVector((1, 2, 2, 1), 6)
    assert schur_minor(c, (1, 1)) == 2
    assert schur_minor(c, (2,)) == 2
    assert schur_minor(ChernVector((1, 1, 1), 6), (2, 2)) == 1


def test_schur_minor_weight_precondition():
    c = ChernVector((1, 1), 2)
    with pytest.raises(UnsupportedInputError):
        schur_minor(c, (2, 1))
    with pytest.raises(UnsupportedInputError):
        schur_minor(c, (1, 2))


def test_schur_minor_rational_entries():
    c = ChernVector((1, Fraction(1, 2)), 3, integral=False)
    assert schur_minor(c, (1, 1)) == Fraction(1, 4)


# --- nef feasibility --------------------------------------------------------


def test_nef_examples():
    assert nef_feasible(ChernVector((1, 2, 2, 1), 5)).feasible
    res = nef_feasible(ChernVector((1, 1, 0, 1), 6))
    assert not res.feasible
    assert res.witness == (2, 1)
    assert res.value == -1
    assert nef_feasible(ChernVector((1, 0, 0, 0), 6)).feasible


def test_nef_case_one_vector_dies_at_dim_six():
    res = nef_feasible(ChernVector((1, 2, 2, 1), 6))
    assert not res.feasible
    assert res.witness == (2, 1, 1, 1, 1)
    assert res.value == -1
    assert naive_nef((1, 2, 2, 1), 6) is False
    assert naive_nef((1, 2, 2, 1), 5) is True


def test_nef_all_ones_boundary():
    for d in range(2, 7):
        entries = tuple([1] * (d + 1))
        assert nef_feasible(ChernVector(entries, d)).feasible
        res = nef_feasible(ChernVector(entries, d + 1))
        assert not res.feasible


def test_nef_matches_naive_on_random_vectors():
    rng = random.Random(987123)
    for _ in range(500):
        length = rng.randint(1, 4)
        entries = (1,) + tuple(rng.randint(0, 3) for _ in range(length))
        ambient = rng.randint(length, 8)
        got = nef_feasible(ChernVector(entries, ambient)).feasible
        assert got == naive_nef(entries, ambient), (entries, ambient)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=4),
    st.integers(min_value=4, max_value=7),
)
def test_nef_matches_naive_property(tail, ambient):
    entries = (1,) + tuple(tail)
    got = nef_feasible(ChernVector(entries, ambient)).feasible
    assert got == naive_nef(entries, ambient)


def test_nef_witness_is_genuinely_negative():
    res = nef_feasible(ChernVector((1, 3, 1, 2), 7))
    if not res.feasible:
        c = ChernVector((1, 3, 1, 2), 7)
        assert schur_minor(c, res.witness) == res.value < 0


# --- first-Chern-class consequences ------------------------------------------


def test_c1_consequences_branches():
    ones = lemma_c1_consequences(ChernVector((1, 1, 1, 1), 3))
    assert ones["all_ones_prefix"] and ones["first_zero_tail_ok"]
    geq = lemma_c1_consequences(ChernVector((1, 2, 2, 1), 5))
    assert geq["geq_two_prefix"] and not geq["all_ones_prefix"]
    assert geq["s"] == 2
    vac = lemma_c1_consequences(ChernVector((1, 3, 0, 0), 6))
    assert vac["s"] == 0
    assert vac["effective_degree"] == 1


def test_c1_consequences_preconditions():
    with pytest.raises(UnsupportedInputError):
        lemma_c1_consequences(ChernVector((1, Fraction(1, 2)), 4, integral=False))
    with pytest.raises(UnsupportedInputError):
        lemma_c1_consequences(ChernVector((1, 1, 0, 1), 6))


# --- Schwarzenberger parity ---------------------------------------------------


def test_schwarzenberger_examples():
    assert schwarzenberger_s33(ChernVector((1, 2, 2, 1), 5)) is False
    assert schwarzenberger_s33(ChernVector((1, 1, 1, 1), 5)) is True
    assert schwarzenberger_s33(ChernVector((1, 2, 3, 6), 6)) is True


def test_schwarzenberger_preconditions():
    with pytest.raises(UnsupportedInputError):
        schwarzenberger_s33(ChernVector((1, 2, 2), 5))
    with pytest.raises(UnsupportedInputError):
        schwarzenberger_s33(ChernVector((1, 1, 1, 1), 2))


# --- cyclotomic split engine --------------------------------------------------


def _all_ones(degree):
    return UniPoly([1] * (degree + 1))


def test_cyclotomic_polynomials():
    assert cyclotomic(1) == UniPoly([-1, 1])
    assert cyclotomic(2) == UniPoly([1, 1])
    assert cyclotomic(6) == UniPoly([1, -1, 1])
    assert cyclotomic(12) == UniPoly([1, 0, -1, 0, 1])
    prod = UniPoly([1])
    for d in (1, 2, 3, 6):
        prod = prod * cyclotomic(d)
    assert prod == UniPoly([-1, 0, 0, 0, 0, 0, 1])


def test_factor_small_cases():
    assert factor_unit_minus_tk(2, 1) == [(UniPoly([1, 1]), UniPoly([1, 1]))]
    assert factor_unit_minus_tk(2, 6) == [(UniPoly([1, 1]), UniPoly([1, 1]))]
    got4 = factor_unit_minus_tk(4, 3)
    assert got4 == [
        (UniPoly([1, 1]), _all_ones(3)),
        (_all_ones(3), UniPoly([1, 1])),
    ]
    assert factor_unit_minus_tk(4, 4) == []


def test_factor_k6_contains_selfpaired_vector():
    case1 = UniPoly([1, 2, 2, 1])
    got5 = factor_unit_minus_tk(6, 5)
    assert (case1, case1) in got5
    assert len(got5) == 3
    assert factor_unit_minus_tk(6, 6) == []


def test_factor_three_families_at_minimal_ambient():
    for k in range(2, 19):
        expected = {(_all_ones(k - 1), UniPoly([1, 1]))}
        if k % 2 == 0:
            expected.add((UniPoly([1, 1]), _all_ones(k - 1)))
        if k == 6:
            expected.add((UniPoly([1, 2, 2, 1]), UniPoly([1, 2, 2, 1])))
        got = factor_unit_minus_tk(k, k - 1)
        assert got == sorted(expected, key=lambda pq: (pq[0].coeffs, pq[1].coeffs)), k


def test_factor_product_identity_and_integrality():
    for k in range(2, 15):
        target = UniPoly([1] + [0] * (k - 1) + [-1])
        for pe, pf in factor_unit_minus_tk(k, k - 1):
            assert pe * pf.substitute_neg() == target
            for coef in list(pe.coeffs) + list(pf.coeffs):
                assert Fraction(coef).denominator == 1


def test_factor_preconditions():
    with pytest.raises(UnsupportedInputError):
        factor_unit_minus_tk(1, 5)
    with pytest.raises(UnsupportedInputError):
        factor_unit_minus_tk(7, 5)


def test_c1_consequences_hold_on_engine_output():
    for k in range(2, 13):
        for pe, pf in factor_unit_minus_tk(k, k - 1):
            for poly in (pe, pf):
                report = lemma_c1_consequences(chern_from_poly(poly, k - 1))
                assert report["first_zero_tail_ok"]


# --- serialization -------------------------------------------------------------


def test_chern_vector_serialization():
    c = ChernVector((1, 2, 2, 1), 6)
    assert str(c) == "[1,2,2,1]@dim6"
    assert parse_chern_vector("[1,2,2,1]@dim6") == c
    half = parse_chern_vector("[1,3/2]@dim4")
    assert half.integral is False
    assert half.entries[1] == Fraction(3, 2)
    assert partition_str((2, 1)) == "(2,1)"


def test_chern_vector_validation():
    with pytest.raises(UnsupportedInputError):
        ChernVector((2, 1), 4)
    with pytest.raises(UnsupportedInputError):
        ChernVector((1, 1, 1), 1)
    with pytest.raises(UnsupportedInputError):
        ChernVector((1, Fraction(1, 2)), 4)
