"""Numeric Chern data on Picard-rank-one varieties.

A bundle's Chern classes against powers of the ample generator form a short
vector of exact rationals.  Nefness forces every Schur minor of that vector
to be nonnegative; the full battery of those inequalities is strong enough
to cut the integer factorizations of 1 - t^k into a pair of such vectors
down to a handful of families, which is what the obstruction pipelines
consume.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from . import linalg
from .errors import InternalInconsistencyError, UnsupportedInputError
from .exactpoly import UniPoly, exact_div, partitions

Partition = Tuple[int, ...]


def partition_str(lam: Partition) -> str:
    return "(" + ",".join(str(p) for p in lam) + ")"


def _check_partition(lam: Partition) -> None:
    if any(p <= 0 for p in lam):
        raise UnsupportedInputError(f"partition parts must be positive: {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise UnsupportedInputError(f"partition must be weakly decreasing: {lam}")


@dataclass(frozen=True)
class ChernVector:
    """Entries (E_0=1, E_1, ..., E_r) against H^i on a dim-`ambient_dim` base.

    `integral` asserts all entries are integers.  Half-integral data can be
    carried with integral=False plus `integrality_mask` marking the indices
    that are known to be integers.
    """

    entries: Tuple[Fraction, ...]
    ambient_dim: int
    integral: bool = True
    integrality_mask: Optional[Tuple[bool, ...]] = None

    def __post_init__(self):
        ent = tuple(Fraction(e) for e in self.entries)
        object.__setattr__(self, "entries", ent)
        if not ent:
            raise UnsupportedInputError("Chern vector needs at least E_0")
        if ent[0] != 1:
            raise UnsupportedInputError(f"E_0 must be 1, got {ent[0]}")
        if self.ambient_dim < 0:
            raise UnsupportedInputError("ambient dimension must be nonnegative")
        if self.r > self.ambient_dim:
            raise UnsupportedInputError(
                f"vector of length {self.r} does not fit ambient dimension "
                f"{self.ambient_dim}"
            )
        if self.integral and any(e.denominator != 1 for e in ent):
            raise UnsupportedInputError(f"non-integer entry in integral vector: {ent}")
        if self.integrality_mask is not None and len(self.integrality_mask) != len(ent):
            raise UnsupportedInputError("integrality mask length mismatch")

    @property
    def r(self) -> int:
        return len(self.entries) - 1

    @property
    def effective_degree(self) -> int:
        """Largest index with a nonzero entry (0 for the trivial vector)."""
        for i in range(self.r, -1, -1):
            if self.entries[i] != 0:
                return i
        return 0

    def entry(self, i: int) -> Fraction:
        if 0 <= i < len(self.entries):
            return self.entries[i]
        return Fraction(0)

    def __str__(self):
        return "[%s]@dim%d" % (",".join(str(e) for e in self.entries), self.ambient_dim)


def parse_chern_vector(text: str) -> ChernVector:
    m = re.fullmatch(r"\[([^\]]*)\]@dim(\d+)", text.strip())
    if not m:
        raise UnsupportedInputError(f"cannot parse Chern vector {text!r}")
    entries = tuple(Fraction(part) for part in m.group(1).split(","))
    integral = all(e.denominator == 1 for e in entries)
    return ChernVector(entries, int(m.group(2)), integral=integral)


def chern_from_poly(p: UniPoly, ambient_dim: int) -> ChernVector:
    """View a Chern polynomial (constant term 1) as a ChernVector."""
    entries = tuple(Fraction(c) for c in p.coeffs) or (Fraction(1),)
    integral = all(e.denominator == 1 for e in entries)
    return ChernVector(entries, ambient_dim, integral=integral)


def _det_int(mat: List[List[int]]) -> int:
    """Fraction-free Bareiss determinant for integer matrices."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if m[i][i] == 0:
            for r in range(i + 1, n):
                if m[r][i] != 0:
                    m[i], m[r] = m[r], m[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = m[i][i]
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                m[r][c] = (m[r][c] * piv - m[r][i] * m[i][c]) // prev
            m[r][i] = 0
        prev = piv
    return sign * m[n - 1][n - 1]


def schur_minor(c: ChernVector, lam: Partition) -> Fraction:
    """The t x t determinant with (i, j) entry E_{lam_i - i + j} (1-based)."""
    _check_partition(lam)
    if sum(lam) > c.ambient_dim:
        raise UnsupportedInputError(
            f"partition weight {sum(lam)} exceeds ambient dimension {c.ambient_dim}"
        )
    t = len(lam)
    if t == 0:
        return Fraction(1)
    rows = [[c.entry(lam[i] - (i + 1) + (j + 1)) for j in range(t)] for i in range(t)]
    if all(e.denominator == 1 for row in rows for e in row):
        return Fraction(_det_int([[int(e) for e in row] for row in rows]))
    return Fraction(linalg.determinant(rows))


@dataclass(frozen=True)
class NefResult:
    feasible: bool
    witness: Optional[Partition] = None
    value: Optional[Fraction] = None

    def __bool__(self):
        return self.feasible


_NEF_CACHE: Dict[Tuple[Tuple[Fraction, ...], int], NefResult] = {}


def nef_feasible(c: ChernVector) -> NefResult:
    """Check S_lam >= 0 for every partition lam of weight <= ambient_dim.

    Partitions with a part above the effective degree are skipped: their
    Schur matrix has an all-zero first row, so the minor vanishes exactly.
    On failure the first violating partition (ascending weight) is reported
    together with the offending value.
    """
    key = (c.entries, c.ambient_dim)
    hit = _NEF_CACHE.get(key)
    if hit is not None:
        return hit
    cap = c.effective_degree
    result = NefResult(True)
    done = False
    for weight in range(1, c.ambient_dim + 1):
        if done or cap == 0:
            break
        for lam in partitions(weight, max_part=cap):
            val = schur_minor(c, lam)
            if val < 0:
                result = NefResult(False, lam, val)
                done = True
                break
    _NEF_CACHE[key] = result
    return result


def lemma_c1_consequences(c: ChernVector) -> Dict[str, object]:
    """What nefness forces on the low entries of an integral Chern vector.

    Writing r for the effective degree and s = min(r - 1, ambient // 2):
    entries stay strictly positive up to r (zeroes only as a tail), and for
    s >= 1 the prefix is either all ones (through s + 1) or all >= 2
    (through s).  A nef-feasible input that violates this exposes a bug, so
    violations raise InternalInconsistencyError rather than returning.
    """
    if not c.integral:
        raise UnsupportedInputError("consequence report requires an integral vector")
    nef = nef_feasible(c)
    if not nef:
        raise UnsupportedInputError(
            "consequence report requires a nef-feasible vector; witness "
            f"{partition_str(nef.witness)}"
        )
    r_eff = c.effective_degree
    if any(c.entries[i] <= 0 for i in range(1, r_eff + 1)):
        raise InternalInconsistencyError(
            f"nef-feasible vector {c} has a non-positive entry below its "
            "effective degree"
        )
    s = min(r_eff - 1, c.ambient_dim // 2)
    if s < 0:
        s = 0
    all_ones = all(c.entry(i) == 1 for i in range(1, s + 2))
    geq_two = all(c.entry(i) >= 2 for i in range(1, s + 1))
    if s >= 1 and not (all_ones or geq_two):
        raise InternalInconsistencyError(
            f"nef-feasible vector {c} fits neither prefix branch (s={s})"
        )
    return {
        "effective_degree": r_eff,
        "s": s,
        "first_zero_tail_ok": True,
        "all_ones_prefix": all_ones,
        "geq_two_prefix": geq_two,
    }


def schwarzenberger_s33(c: ChernVector) -> bool:
    """Parity condition E_1 * E_2 == E_3 (mod 2) for rank >= 3 on dim >= 3."""
    if not c.integral:
        raise UnsupportedInputError("parity condition needs an integral vector")
    if c.r < 3:
        raise UnsupportedInputError("parity condition needs entries through E_3")
    if c.ambient_dim < 3:
        raise UnsupportedInputError("parity condition needs ambient dimension >= 3")
    e1, e2, e3 = int(c.entries[1]), int(c.entries[2]), int(c.entries[3])
    return (e1 * e2 - e3) % 2 == 0


_CYCLOTOMIC_CACHE: Dict[int, UniPoly] = {1: UniPoly([-1, 1])}


def cyclotomic(d: int) -> UniPoly:
    """The d-th cyclotomic polynomial, by recursive exact division."""
    if d < 1:
        raise UnsupportedInputError("cyclotomic index must be positive")
    hit = _CYCLOTOMIC_CACHE.get(d)
    if hit is not None:
        return hit
    num = UniPoly([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            num = exact_div(num, cyclotomic(e))
            if num is None:
                raise InternalInconsistencyError(f"cyclotomic division failed at {d}")
    _CYCLOTOMIC_CACHE[d] = num
    return num


_FACTOR_CACHE: Dict[Tuple[int, int], List[Tuple[UniPoly, UniPoly]]] = {}


def factor_unit_minus_tk(k: int, ambient_dim: int) -> List[Tuple[UniPoly, UniPoly]]:
    """All pairs (P_E, P_F) with P_E(t) * P_F(-t) = 1 - t^k, both plausibly nef.

    1 - t^k factors over the integers as (1 - t) times the cyclotomic
    polynomials of the divisors d > 1 of k, so every integer factorization
    is a subset split of that list.  Each split is kept when both sides have
    nonnegative coefficients, fit the ambient dimension, and pass the full
    Schur-minor check.  Pairs come back sorted by coefficient tuples.
    """
    if not 2 <= k <= ambient_dim + 1:
        raise UnsupportedInputError(
            f"k must satisfy 2 <= k <= ambient_dim + 1, got k={k}, "
            f"ambient_dim={ambient_dim}"
        )
    key = (k, ambient_dim)
    hit = _FACTOR_CACHE.get(key)
    if hit is not None:
        return list(hit)
    factors = [UniPoly([1, -1])]
    for d in range(2, k + 1):
        if k % d == 0:
            factors.append(cyclotomic(d))
    target = UniPoly([1] + [0] * (k - 1) + [-1])
    product = UniPoly([1])
    for f in factors:
        product = product * f
    if product != target:
        raise InternalInconsistencyError(f"cyclotomic product mismatch for k={k}")
    pairs: List[Tuple[UniPoly, UniPoly]] = []
    for mask in range(1 << len(factors)):
        pe = UniPoly([1])
        g = UniPoly([1])
        for idx, f in enumerate(factors):
            if mask >> idx & 1:
                pe = pe * f
            else:
                g = g * f
        pf = g.substitute_neg()
        if any(coef < 0 for coef in pe.coeffs) or any(coef < 0 for coef in pf.coeffs):
            continue
        if pe.degree > ambient_dim or pf.degree > ambient_dim:
            continue
        if not nef_feasible(chern_from_poly(pe, ambient_dim)):
            continue
        if not nef_feasible(chern_from_poly(pf, ambient_dim)):
            continue
        pairs.append((pe, pf))
    pairs.sort(key=lambda pq: (pq[0].coeffs, pq[1].coeffs))
    _FACTOR_CACHE[key] = pairs
    return list(pairs)
