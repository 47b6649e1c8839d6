"""Exact scalar and polynomial arithmetic.

Everything downstream (Chern data, cohomology presentations, the octonion
constructions) runs on the types in this module.  All arithmetic is exact:
rationals are ``fractions.Fraction``, Gaussian rationals are pairs of
Fractions, and polynomials never touch floating point.

Two polynomial types:

* ``UniPoly`` -- dense univariate polynomials in one variable ``t``.  The
  coefficients are duck-typed: plain rationals for numeric work, but also
  ``GaussRat`` or ``GradedPoly`` values (a Chern polynomial whose
  coefficients live in a graded cohomology ring is a ``UniPoly`` with
  ``GradedPoly`` coefficients).
* ``GradedPoly`` -- sparse multivariate polynomials over Q with a weighted
  degree per generator, used for cohomology ring presentations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union


Scalar = Union[int, Fraction]


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class GaussRat:
    """A Gaussian rational a + b*i with exact Fraction components."""

    re: Fraction
    im: Fraction

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    @staticmethod
    def i() -> "GaussRat":
        return GaussRat(0, 1)

    @staticmethod
    def of(value) -> "GaussRat":
        if isinstance(value, GaussRat):
            return value
        return GaussRat(_as_fraction(value), Fraction(0))

    def conj(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        other = GaussRat.of(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussRat.of(other))

    def __rsub__(self, other):
        return GaussRat.of(other) + (-self)

    def __mul__(self, other):
        other = GaussRat.of(other)
        return GaussRat(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussRat.of(other)
        denom = other.re * other.re + other.im * other.im
        if denom == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conj()
        return GaussRat(num.re / denom, num.im / denom)

    def __rtruediv__(self, other):
        return GaussRat.of(other) / self

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def _coerce_coeff(c):
    if isinstance(c, int):
        return Fraction(c)
    return c


class UniPoly:
    """Dense univariate polynomial in t, ascending coefficient order.

    >>> p = UniPoly([1, 2, 2, 1])
    >>> print(p)
    1 + 2t + 2t^2 + t^3
    >>> p.degree
    3
    >>> UniPoly([0]).degree is None
    True
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_coerce_coeff(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def zero() -> "UniPoly":
        return UniPoly()

    @staticmethod
    def one() -> "UniPoly":
        return UniPoly([1])

    @staticmethod
    def t(power: int = 1) -> "UniPoly":
        return UniPoly([0] * power + [1])

    @staticmethod
    def constant(c) -> "UniPoly":
        return UniPoly([c])

    @property
    def degree(self) -> Optional[int]:
        """Degree, or None for the zero polynomial (deliberately not -1)."""
        if not self.coeffs:
            return None
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int):
        if k < 0 or k >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(k) + other.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        return self + (-other)

    def __rsub__(self, other):
        return UniPoly([other]) + (-self)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = UniPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def substitute_neg(self) -> "UniPoly":
        """Return p(-t): flip the sign of every odd-degree coefficient."""
        return UniPoly([-c if k % 2 else c for k, c in enumerate(self.coeffs)])

    def truncate(self, max_degree: int) -> "UniPoly":
        return UniPoly(self.coeffs[: max_degree + 1])

    def evaluate(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(("+", str(c)))
                continue
            var = "t" if k == 1 else f"t^{k}"
            negative = isinstance(c, Fraction) and c < 0
            mag = -c if negative else c
            body = var if mag == 1 else f"{mag}{var}"
            parts.append(("-" if negative else "+", body))
        sign0, body0 = parts[0]
        text = body0 if sign0 == "+" else f"-{body0}"
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)!r})"

    def to_json(self) -> list:
        """Coefficient array, ints where possible, 'p/q' strings otherwise."""
        out = []
        for c in self.coeffs:
            if isinstance(c, Fraction):
                out.append(int(c) if c.denominator == 1 else str(c))
            else:
                out.append(str(c))
        return out

    @staticmethod
    def from_json(data: Sequence) -> "UniPoly":
        return UniPoly([Fraction(c) for c in data])


def poly_mul(p, q):
    """Exact product of two compatible polynomials."""
    return p * q


def substitute_neg(p: UniPoly) -> UniPoly:
    return p.substitute_neg()


def coeff(p: UniPoly, degree: int):
    return p.coeff(degree)


def coeff_plus(p: UniPoly) -> dict:
    """All nonzero coefficients of strictly positive degree, as {degree: value}."""
    return {k: c for k, c in enumerate(p.coeffs) if k > 0 and c != 0}


def exact_div(p: UniPoly, q: UniPoly) -> Optional[UniPoly]:
    """Return r with p = q*r when the division is exact, else None.

    >>> exact_div(UniPoly([1, 0, 0, 0, 0, 0, -1]), UniPoly([1, 1])) is None
    False
    >>> exact_div(UniPoly([1, 1, 1]), UniPoly([1, 1])) is None
    True
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return UniPoly()
    dp, dq = p.degree, q.degree
    if dp < dq:
        return None
    lead = q.coeffs[-1]
    rem = list(p.coeffs)
    quot = [Fraction(0)] * (dp - dq + 1)
    for k in range(dp - dq, -1, -1):
        c = rem[k + dq]
        if c == 0:
            continue
        factor = c / lead
        quot[k] = factor
        for j, b in enumerate(q.coeffs):
            rem[k + j] = rem[k + j] - factor * b
    if any(c != 0 for c in rem):
        return None
    return UniPoly(quot)


class GradedPoly:
    """Sparse polynomial over Q in named generators with assigned degrees.

    Terms are stored as {exponent tuple: Fraction}.  The generator table is a
    tuple of (name, weighted degree) pairs shared by every polynomial in one
    ring; arithmetic between polynomials with different tables is an error.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, gens: Sequence, terms: Optional[Mapping] = None):
        self.gens = tuple((str(n), int(d)) for n, d in gens)
        cleaned = {}
        if terms:
            width = len(self.gens)
            for expo, c in terms.items():
                c = _as_fraction(c)
                if c == 0:
                    continue
                expo = tuple(int(e) for e in expo)
                if len(expo) != width or any(e < 0 for e in expo):
                    raise ValueError(f"bad exponent vector {expo!r}")
                cleaned[expo] = cleaned.get(expo, Fraction(0)) + c
                if cleaned[expo] == 0:
                    del cleaned[expo]
        self.terms = cleaned

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(gens) -> "GradedPoly":
        return GradedPoly(gens)

    @staticmethod
    def const(gens, c) -> "GradedPoly":
        g = GradedPoly(gens)
        c = _as_fraction(c)
        if c != 0:
            g.terms[(0,) * len(g.gens)] = c
        return g

    @staticmethod
    def generator(gens, name: str) -> "GradedPoly":
        g = GradedPoly(gens)
        idx = g.gen_index(name)
        expo = [0] * len(g.gens)
        expo[idx] = 1
        g.terms[tuple(expo)] = Fraction(1)
        return g

    def gen_index(self, name: str) -> int:
        for i, (n, _) in enumerate(self.gens):
            if n == name:
                return i
        raise KeyError(f"no generator named {name!r}")

    # -- ring structure ------------------------------------------------

    def _check_ring(self, other: "GradedPoly"):
        if self.gens != other.gens:
            raise ValueError("polynomials live in different graded rings")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.const(self.gens, other)
        self._check_ring(other)
        terms = dict(self.terms)
        for expo, c in other.terms.items():
            s = terms.get(expo, Fraction(0)) + c
            if s == 0:
                terms.pop(expo, None)
            else:
                terms[expo] = s
        out = GradedPoly(self.gens)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = GradedPoly(self.gens)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.const(self.gens, other)
        return self + (-other)

    def __rsub__(self, other):
        return GradedPoly.const(self.gens, other) + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _as_fraction(other)
            out = GradedPoly(self.gens)
            if c != 0:
                out.terms = {e: v * c for e, v in self.terms.items()}
            return out
        self._check_ring(other)
        out = GradedPoly(self.gens)
        acc = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                expo = tuple(a + b for a, b in zip(e1, e2))
                s = acc.get(expo, Fraction(0)) + c1 * c2
                if s == 0:
                    acc.pop(expo, None)
                else:
                    acc[expo] = s
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = GradedPoly.const(self.gens, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.const(self.gens, other)
        if isinstance(other, GradedPoly):
            return self.gens == other.gens and self.terms == other.terms
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return not self.is_zero()

    # -- graded structure ----------------------------------------------

    def monomial_degree(self, expo: Sequence[int]) -> int:
        return sum(e * d for e, (_, d) in zip(expo, self.gens))

    def homogeneous_degree(self) -> Optional[int]:
        """The common weighted degree of all terms, or None if mixed/zero."""
        degrees = {self.monomial_degree(e) for e in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def degree_slice(self, degree: int) -> "GradedPoly":
        out = GradedPoly(self.gens)
        out.terms = {
            e: c for e, c in self.terms.items() if self.monomial_degree(e) == degree
        }
        return out

    def support_degrees(self):
        return sorted({self.monomial_degree(e) for e in self.terms})

    def coefficient(self, powers: Mapping[str, int]) -> Fraction:
        """Coefficient of the monomial prod(gen^power); unnamed powers are 0."""
        expo = [0] * len(self.gens)
        for name, p in powers.items():
            expo[self.gen_index(name)] = int(p)
        return self.terms.get(tuple(expo), Fraction(0))

    def substitute(self, name: str, value: "GradedPoly") -> "GradedPoly":
        """Replace a generator by a polynomial of the same ring."""
        self._check_ring(value)
        idx = self.gen_index(name)
        out = GradedPoly(self.gens)
        for expo, c in self.terms.items():
            k = expo[idx]
            rest = list(expo)
            rest[idx] = 0
            term = GradedPoly(self.gens)
            term.terms = {tuple(rest): c}
            if k:
                term = term * (value**k)
            out = out + term
        return out

    def monomial_strings(self):
        for expo, c in sorted(self.terms.items()):
            yield _monomial_str(self.gens, expo), c

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, c in self.monomial_strings():
            if mono == "1":
                bits.append(str(c))
            elif c == 1:
                bits.append(mono)
            elif c == -1:
                bits.append(f"-{mono}")
            else:
                bits.append(f"{c}*{mono}")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return f"GradedPoly({self.gens!r}, {self.terms!r})"

    def to_json(self) -> dict:
        return {mono: str(c) for mono, c in self.monomial_strings()}


def _monomial_str(gens, expo) -> str:
    bits = []
    for (name, _), e in zip(gens, expo):
        if e == 1:
            bits.append(name)
        elif e > 1:
            bits.append(f"{name}^{e}")
    return "*".join(bits) if bits else "1"


def elementary_symmetric_polys(gens, names: Sequence[str]) -> list:
    """e_0..e_m of the named generators, as GradedPoly values.

    Computed by expanding prod(1 + x_j t) one factor at a time; this is the
    engine behind the pullback identity checks.
    """
    es = [GradedPoly.const(gens, 1)]
    for name in names:
        x = GradedPoly.generator(gens, name)
        nxt = []
        for k in range(len(es) + 1):
            term = GradedPoly.zero(gens)
            if k < len(es):
                term = term + es[k]
            if k >= 1:
                term = term + es[k - 1] * x
            nxt.append(term)
        es = nxt
    return es


def partitions(weight: int, max_part: Optional[int] = None):
    """Yield all partitions of exactly `weight` as weakly decreasing tuples."""
    if weight == 0:
        yield ()
        return
    cap = weight if max_part is None else min(max_part, weight)
    for first in range(cap, 0, -1):
        for rest in partitions(weight - first, first):
            yield (first,) + rest
