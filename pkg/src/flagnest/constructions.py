"""The three explicit nesting constructions, verified in exact arithmetic.

Each positive answer of the classifier is witnessed by an actual section: a
point of projective space carried to a hyperplane through it (symplectic
form), a point of the five-dimensional quadric carried to a plane through it
(octonion multiplication), and a maximal isotropic subspace carried to a
codimension-one isotropic subspace (orthogonal complement in a quadratic
space).  The module also houses the small integer solvers that the matching
uniqueness arguments reduce to, so the classifier can cite them.

Scalars are Fractions, except for octonions which live over the Gaussian
rationals: the quadric x_0^2 + ... + x_7^2 = 0 has no nonzero rational
points, and Q(i) is the smallest exact field where the needed null vectors
exist.  Random data is always built constructively (hyperbolic combinations,
rational rotations) from an explicit seed, never by approximating roots.
"""

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InternalInconsistencyError, UnsupportedInputError
from .exactpoly import GaussRat, UniPoly, exact_div
from .linalg import determinant, in_row_span, kernel_basis, row_echelon

Matrix = Tuple[tuple, ...]


def _freeze(rows) -> Matrix:
    return tuple(tuple(x for x in row) for row in rows)


def _canonical_span(rows) -> Matrix:
    echelon, _ = row_echelon(rows)
    return _freeze(echelon)


def _span_contains(rows, vector) -> bool:
    echelon, pivots = row_echelon(rows)
    return in_row_span(echelon, pivots, vector)


def _span_subset(small, big) -> bool:
    echelon, pivots = row_echelon(big)
    return all(in_row_span(echelon, pivots, v) for v in small)


def _mat_mul(rows, mat) -> List[list]:
    width = len(mat[0])
    return [
        [sum((r[k] * mat[k][j] for k in range(len(mat))), Fraction(0)) for j in range(width)]
        for r in rows
    ]


# ---------------------------------------------------------------------------
# Symplectic construction


@dataclass(frozen=True)
class SymplecticSpace:
    dim: int
    omega: Matrix

    def __post_init__(self):
        object.__setattr__(self, "omega", _freeze(self.omega))
        if self.dim % 2 or self.dim < 2:
            raise UnsupportedInputError(f"symplectic spaces have positive even dimension, not {self.dim}")
        if len(self.omega) != self.dim or any(len(r) != self.dim for r in self.omega):
            raise UnsupportedInputError("form matrix does not match the dimension")
        for i in range(self.dim):
            for j in range(self.dim):
                if self.omega[i][j] != -self.omega[j][i]:
                    raise UnsupportedInputError("form matrix is not antisymmetric")
        if determinant(self.omega) == 0:
            raise UnsupportedInputError("form is degenerate")

    def pairing(self, u, v) -> Fraction:
        return sum(
            (u[i] * self.omega[i][j] * v[j] for i in range(self.dim) for j in range(self.dim)),
            Fraction(0),
        )


def standard_symplectic(n: int) -> SymplecticSpace:
    """omega(e_i, f_i) = 1 on a 2n-dimensional space."""
    dim = 2 * n
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(n):
        rows[i][n + i] = Fraction(1)
        rows[n + i][i] = Fraction(-1)
    return SymplecticSpace(dim, _freeze(rows))


def _normalize_point(point) -> tuple:
    lead = next((c for c in point if c != 0), None)
    if lead is None:
        raise UnsupportedInputError("the zero vector is not a projective point")
    return tuple(Fraction(c) / lead for c in point)


def nesting_A(s: SymplecticSpace, point) -> Tuple[tuple, Matrix]:
    """A point of P(V) and the hyperplane cut out by pairing against it.

    The hyperplane is ker(omega(point, .)); antisymmetry puts the point on
    its own hyperplane, which is exactly the section property.  Output is
    canonicalized (scaled representative, reduced kernel basis) so that
    proportional inputs give identical results.
    """
    if len(point) != s.dim:
        raise UnsupportedInputError("point has the wrong length")
    pt = _normalize_point(point)
    functional = [
        sum((pt[i] * s.omega[i][j] for i in range(s.dim)), Fraction(0)) for j in range(s.dim)
    ]
    hyperplane = _freeze(kernel_basis([functional], ncols=s.dim))
    if len(hyperplane) != s.dim - 1:
        raise InternalInconsistencyError("pairing functional degenerated")
    if not _span_contains(hyperplane, pt):
        raise InternalInconsistencyError("point escaped its own hyperplane")
    return pt, hyperplane


def nesting_A_cohomology_solver(m: int):
    """Integer degrees d for which the rank-m hyperplane equation can close up.

    The constraint is that sum(C(m+1, i) * (-d)^(m-i), i = 0..m) vanishes,
    i.e. ((1-d)^(m+1) - 1)/(-d) = 0.  Integer roots divide the constant term
    m+1, so a divisor scan is exhaustive: the answer is {2} for odd m and
    empty for even m.
    """
    if m < 2:
        raise UnsupportedInputError(f"need m >= 2, got {m}")
    coeffs = [0] * (m + 1)
    for i in range(m + 1):
        coeffs[m - i] = comb(m + 1, i) * (-1) ** (m - i) * (-1) ** m
    poly = UniPoly(coeffs)
    if poly.coeff(0) == 0:
        raise InternalInconsistencyError("constant term vanished; divisor scan would be wrong")
    const = abs(m + 1)
    roots = set()
    for d in range(1, const + 1):
        if const % d:
            continue
        for signed in (d, -d):
            if poly.evaluate(signed) == 0:
                roots.add(signed)
    return frozenset(roots)


def symplectic_distinctness_check(n: int, points: int, seed: int) -> bool:
    """Two non-proportional forms must disagree on some sampled point."""
    if n < 2:
        raise UnsupportedInputError("proportionality is only interesting from n = 2 on")
    plain = standard_symplectic(n)
    rows = [[Fraction(0)] * 2 * n for _ in range(2 * n)]
    for i in range(n):
        rows[i][n + i] = Fraction(i + 1)
        rows[n + i][i] = Fraction(-(i + 1))
    weighted = SymplecticSpace(2 * n, _freeze(rows))
    rng = random.Random(seed)
    for _ in range(points):
        pt = _random_nonzero_vector(rng, 2 * n)
        if nesting_A(plain, pt)[1] != nesting_A(weighted, pt)[1]:
            return True
    return False


# ---------------------------------------------------------------------------
# Octonions and the quadric construction

_FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (4, 2, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def _build_mul_table():
    table: List[List[Optional[Tuple[int, int]]]] = [[None] * 8 for _ in range(8)]
    for i in range(8):
        table[0][i] = (1, i)
        table[i][0] = (1, i)
    for i in range(1, 8):
        table[i][i] = (-1, 0)
    for line in _FANO_LINES:
        for a, b, c in (line, line[1:] + line[:1], line[2:] + line[:2]):
            table[a][b] = (1, c)
            table[b][a] = (-1, c)
    if any(entry is None for row in table for entry in row):
        raise InternalInconsistencyError("multiplication table has a hole")
    return tuple(tuple(row) for row in table)


_MUL_TABLE = _build_mul_table()


@dataclass(frozen=True)
class Octonion:
    coords: Tuple[GaussRat, ...]

    def __post_init__(self):
        cs = tuple(GaussRat.of(c) for c in self.coords)
        if len(cs) != 8:
            raise UnsupportedInputError("an octonion has 8 coordinates")
        object.__setattr__(self, "coords", cs)

    @staticmethod
    def of(values) -> "Octonion":
        return Octonion(tuple(values))

    @staticmethod
    def unit(i: int) -> "Octonion":
        if not 0 <= i <= 7:
            raise UnsupportedInputError("basis index out of range")
        return Octonion(tuple(GaussRat(1 if k == i else 0) for k in range(8)))

    @staticmethod
    def zero() -> "Octonion":
        return Octonion((GaussRat(0),) * 8)

    @staticmethod
    def one() -> "Octonion":
        return Octonion.unit(0)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __add__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Octonion") -> "Octonion":
        return Octonion(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Octonion":
        return Octonion(tuple(-a for a in self.coords))

    def __mul__(self, other):
        if not isinstance(other, Octonion):
            scale = GaussRat.of(other)
            return Octonion(tuple(c * scale for c in self.coords))
        out = [GaussRat(0)] * 8
        for i, ci in enumerate(self.coords):
            if ci.is_zero():
                continue
            for j, cj in enumerate(other.coords):
                if cj.is_zero():
                    continue
                sign, k = _MUL_TABLE[i][j]
                term = ci * cj
                out[k] = out[k] + (term if sign == 1 else -term)
        return Octonion(tuple(out))

    def __rmul__(self, other):
        return self * other

    def conj(self) -> "Octonion":
        return Octonion((self.coords[0],) + tuple(-c for c in self.coords[1:]))

    def norm(self) -> GaussRat:
        total = GaussRat(0)
        for c in self.coords:
            total = total + c * c
        return total


def octonion_mul(x: Octonion, y: Octonion) -> Octonion:
    return x * y


def octonion_conj(x: Octonion) -> Octonion:
    return x.conj()


def octonion_norm(x: Octonion) -> GaussRat:
    return x.norm()


def nesting_B3(a: Octonion, x: Octonion) -> Matrix:
    """The plane of the quadric attached to [x] by the invertible anchor a.

    Solves the linear system {y : x(ya) = 0, y_0 = 0} by writing out the
    composite left-by-x-after-right-by-a matrix and taking its kernel on the
    purely imaginary coordinates.  The result is checked to be a plane: three
    dimensions, containing x, with every member square-zero (equivalently,
    the polarized quadratic form vanishes on all basis pairs).
    """
    if a.norm().is_zero():
        raise UnsupportedInputError("anchor octonion is not invertible")
    if x.is_zero() or not x.coords[0].is_zero() or not (x * x).is_zero():
        raise UnsupportedInputError("base point must be nonzero, imaginary, and square-zero")
    columns = [x * (Octonion.unit(j) * a) for j in range(1, 8)]
    rows = [[columns[j].coords[k] for j in range(7)] for k in range(8)]
    ker = kernel_basis(rows, ncols=7, zero=GaussRat(0), one=GaussRat(1))
    plane = _freeze([(GaussRat(0),) + tuple(vec) for vec in ker])
    if len(plane) != 3:
        raise InternalInconsistencyError(f"expected a plane, got dimension {len(plane)}")
    if not _span_contains(plane, x.coords):
        raise InternalInconsistencyError("plane does not pass through its base point")
    for i, u in enumerate(plane):
        for w in plane[i:]:
            pairing = GaussRat(0)
            for cu, cw in zip(u, w):
                pairing = pairing + cu * cw
            if not pairing.is_zero():
                raise InternalInconsistencyError("plane is not contained in the quadric")
    return plane


def nesting_B3_chern_solver() -> Tuple[Tuple[int, Tuple[int, int, int]], ...]:
    """Integer solutions of the system d1+l = 2, d1*l+d2 = 2, d2*l+d3 = 1, d3*l = 0.

    Eliminating the d's leaves l(l^3 - 2l^2 + 2l - 1) = 0, so a small scan is
    exhaustive; the two branches are l = 0 (the trivial splitting, excluded
    by a nonvanishing-section argument) and l = 1 with degrees (1, 1, 0).
    """
    solutions = []
    for ell in range(-10, 11):
        d1 = 2 - ell
        d2 = 2 - d1 * ell
        d3 = 1 - d2 * ell
        if d3 * ell == 0:
            solutions.append((ell, (d1, d2, d3)))
    return tuple(solutions)


# ---------------------------------------------------------------------------
# Quadratic spaces and the isotropic-flag construction


@dataclass(frozen=True)
class QuadraticSpace:
    dim: int
    bilinear: Matrix

    def __post_init__(self):
        object.__setattr__(self, "bilinear", _freeze(self.bilinear))
        if len(self.bilinear) != self.dim or any(len(r) != self.dim for r in self.bilinear):
            raise UnsupportedInputError("Gram matrix does not match the dimension")
        for i in range(self.dim):
            for j in range(i, self.dim):
                if self.bilinear[i][j] != self.bilinear[j][i]:
                    raise UnsupportedInputError("Gram matrix is not symmetric")
        if determinant(self.bilinear) == 0:
            raise UnsupportedInputError("bilinear form is degenerate")

    def inner(self, u, v) -> Fraction:
        return sum(
            (u[i] * self.bilinear[i][j] * v[j] for i in range(self.dim) for j in range(self.dim)),
            Fraction(0),
        )

    def is_isotropic(self, rows) -> bool:
        return all(
            self.inner(rows[i], rows[j]) == 0
            for i in range(len(rows))
            for j in range(i, len(rows))
        )

    def perp(self, rows) -> Matrix:
        """Orthogonal complement of the row span, as a canonical basis."""
        paired = _mat_mul(rows, self.bilinear)
        return _canonical_span(kernel_basis(paired, ncols=self.dim))


def hyperbolic_space(n: int) -> QuadraticSpace:
    """Sum of n hyperbolic planes: b(e_i, f_i) = 1, everything else 0."""
    dim = 2 * n
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(n):
        rows[i][n + i] = Fraction(1)
        rows[n + i][i] = Fraction(1)
    return QuadraticSpace(dim, _freeze(rows))


@dataclass(frozen=True)
class IsotropicFlag:
    spaces: Tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "spaces", tuple(_freeze(m) for m in self.spaces))
        dims = [len(m) for m in self.spaces]
        if any(b <= a for a, b in zip(dims, dims[1:])):
            raise UnsupportedInputError(f"flag dimensions must strictly increase, got {dims}")
        for small, big in zip(self.spaces, self.spaces[1:]):
            if not _span_subset(small, big):
                raise UnsupportedInputError("flag spaces are not nested")

    def dimensions(self) -> Tuple[int, ...]:
        return tuple(len(m) for m in self.spaces)


def nesting_D(qs: QuadraticSpace, vn, v) -> IsotropicFlag:
    """Extend a maximal isotropic V_n to V_n + <v> and complete by complement.

    For an anisotropic v the triple (V_n + <v>)^perp < V_n < V_n + <v> is a
    flag with dimensions (n-1, n, n+1); the middle member recovers the input,
    which is the section property.  All five defining predicates are checked
    before returning.
    """
    n = qs.dim // 2
    if qs.dim % 2:
        raise UnsupportedInputError("the construction needs an even-dimensional space")
    vn = _freeze(vn)
    if len(vn) != n or any(len(r) != qs.dim for r in vn):
        raise UnsupportedInputError(f"expected an n x 2n basis matrix with n = {n}")
    vn_canon = _canonical_span(vn)
    if len(vn_canon) != n:
        raise UnsupportedInputError("basis rows are linearly dependent")
    if not qs.is_isotropic(vn):
        raise UnsupportedInputError("the given subspace is not isotropic")
    v = tuple(Fraction(c) for c in v)
    if qs.inner(v, v) == 0:
        raise UnsupportedInputError("the extension vector must be anisotropic")
    big = _canonical_span(list(vn) + [list(v)])
    if len(big) != n + 1:
        raise InternalInconsistencyError("anisotropic vector landed inside the isotropic space")
    small = qs.perp(big)
    if len(small) != n - 1:
        raise InternalInconsistencyError("orthogonal complement has the wrong dimension")
    if not _span_subset(small, vn_canon):
        raise InternalInconsistencyError("complement escaped the middle space")
    if not qs.is_isotropic(small):
        raise InternalInconsistencyError("complement is not isotropic")
    if qs.perp(small) != big:
        raise InternalInconsistencyError("complement does not dualize back")
    return IsotropicFlag((small, vn_canon, big))


@dataclass(frozen=True)
class DRecursionReport:
    """Outcome of the splitting-degree scan for the isotropic-flag family."""

    n: int
    chain_solutions: Tuple[Tuple[int, Tuple[int, ...]], ...]
    final_candidates: Tuple[Tuple[int, int], ...]
    forced_chain: Tuple[int, ...]
    restriction_coeffs: Tuple[int, ...]

    @property
    def empty(self) -> bool:
        return not self.chain_solutions


def nesting_D_recursion_checker(n: int) -> DRecursionReport:
    """Exhaust the integer splitting data and report the contradiction.

    A splitting of the restricted bundle would give integers x <= 1 (x != 0)
    and nonnegative p_0..p_{n-2} with (1 + (x-1)t - xt^2) * sum(p_i t^i) +
    p_{n-2} x t^n = 1 + t.  Comparing coefficients forces the chain p_1 + x =
    p_2 + x p_1 = ... = 2 and finally p_{n-2} x = 2; the only candidate from
    the last equation is (p_{n-2}, x) = (2, 1), while x = 1 propagates p_i =
    1 down the chain.  No assignment satisfies both, so the scan comes back
    empty.  The report also carries the reference expansion of
    (1+t)(1-t^n)/(1-t), the restricted total Chern class the argument splits.
    """
    if n < 4:
        raise UnsupportedInputError(f"need n >= 4, got {n}")
    target = UniPoly([1, 1])
    chain_solutions = []
    for x in range(-10, 2):
        if x == 0:
            continue
        ps = [1]
        feasible = True
        for _ in range(n - 2):
            nxt = 2 - x * ps[-1]
            if nxt < 0:
                feasible = False
                break
            ps.append(nxt)
        if not feasible or ps[-1] * x != 2:
            continue
        series = UniPoly(ps)
        assembled = UniPoly([1, x - 1, -x]) * series + UniPoly.t(n) * (ps[-1] * x)
        if assembled == target:
            chain_solutions.append((x, tuple(ps)))
    final_candidates = tuple(
        (p, x)
        for x in range(-10, 2)
        if x != 0
        for p in range(0, 11)
        if p * x == 2
    )
    forced_chain = tuple([1] * (n - 1))
    ones = exact_div(UniPoly([1] + [0] * (n - 1) + [-1]), UniPoly([1, -1]))
    if ones is None:
        raise InternalInconsistencyError("geometric series division failed")
    restriction = UniPoly([1, 1]) * ones
    return DRecursionReport(
        n=n,
        chain_solutions=tuple(chain_solutions),
        final_candidates=final_candidates,
        forced_chain=forced_chain,
        restriction_coeffs=tuple(restriction.coeffs),
    )


# ---------------------------------------------------------------------------
# Randomized verification drivers


def _random_nonzero_vector(rng: random.Random, length: int) -> tuple:
    while True:
        vec = tuple(Fraction(rng.randint(-9, 9)) for _ in range(length))
        if any(vec):
            return vec


def random_invertible_octonion(rng: random.Random) -> Octonion:
    while True:
        x = Octonion(tuple(GaussRat(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(8)))
        if not x.norm().is_zero():
            return x


def random_gauss_octonion(rng: random.Random) -> Octonion:
    return Octonion(tuple(GaussRat(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(8)))


def random_null_octonion(rng: random.Random) -> Octonion:
    """A nonzero imaginary octonion with square zero.

    Start from e_1 + i e_2 and move it around by simultaneous rational
    rotations (Pythagorean-triple cosines) of the real and imaginary parts;
    these preserve the three real invariants (norms and cross term) that make
    the combination null.  A final rational scaling keeps things nonzero.
    """
    re = [Fraction(0)] * 7
    im = [Fraction(0)] * 7
    re[0] = Fraction(1)
    im[1] = Fraction(1)
    for _ in range(8):
        i, j = rng.sample(range(7), 2)
        m = rng.randint(1, 5)
        k = rng.randint(1, 5)
        denom = Fraction(m * m + k * k)
        cos = Fraction(m * m - k * k) / denom
        sin = Fraction(2 * m * k) / denom
        for part in (re, im):
            part[i], part[j] = cos * part[i] - sin * part[j], sin * part[i] + cos * part[j]
    scale = Fraction(rng.randint(1, 9))
    x = Octonion((GaussRat(0),) + tuple(GaussRat(scale * a, scale * b) for a, b in zip(re, im)))
    if not (x * x).is_zero() or x.is_zero():
        raise InternalInconsistencyError("rotation construction produced a non-null vector")
    return x


def random_isotropic_basis(rng: random.Random, n: int) -> Matrix:
    """Rows [I | S] with S antisymmetric span a maximal isotropic subspace."""
    s = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            val = Fraction(rng.randint(-5, 5))
            s[i][j] = val
            s[j][i] = -val
    rows = []
    for i in range(n):
        row = [Fraction(1 if k == i else 0) for k in range(n)] + list(s[i])
        rows.append(tuple(row))
    return tuple(rows)


def random_anisotropic_vector(rng: random.Random, qs: QuadraticSpace) -> tuple:
    while True:
        v = _random_nonzero_vector(rng, qs.dim)
        if qs.inner(v, v) != 0:
            return v


def verify_section(kind: str, space, source, produced) -> bool:
    """Re-check a construction output against its input, without recomputing it.

    The common requirement is the section property: mapping the produced flag
    back to the source datum must return the input exactly.  The remaining
    checks are the incidences each construction promises.
    """
    if kind == "A":
        pt, hyperplane = produced
        if pt != _normalize_point(source):
            return False
        if len(hyperplane) != space.dim - 1:
            return False
        if any(space.pairing(source, w) != 0 for w in hyperplane):
            return False
        return _span_contains(hyperplane, pt)
    if kind == "B3":
        a, x = space, source
        if any(not row[0].is_zero() for row in produced):
            return False
        if len(produced) != 3 or not _span_contains(produced, x.coords):
            return False
        for row in produced:
            y = Octonion(row)
            if not (x * (y * a)).is_zero():
                return False
        return True
    if kind == "D":
        vn, v = source
        flag = produced
        if flag.dimensions() != (space.dim // 2 - 1, space.dim // 2, space.dim // 2 + 1):
            return False
        if flag.spaces[1] != _canonical_span(vn):
            return False
        small, mid, big = flag.spaces
        if not (_span_subset(small, mid) and _span_subset(mid, big)):
            return False
        if not _span_contains(big, tuple(Fraction(c) for c in v)):
            return False
        if not space.is_isotropic(small) or not space.is_isotropic(mid):
            return False
        return space.perp(small) == big
    raise UnsupportedInputError(f"unknown construction kind {kind!r}")


@dataclass(frozen=True)
class TrialReport:
    kind: str
    trials: int
    passed: int
    failure: Optional[Dict[str, str]]

    @property
    def ok(self) -> bool:
        return self.passed == self.trials and self.failure is None


def section_trials(kind: str, n: int, trials: int, seed: int) -> TrialReport:
    """Run seeded random instances of one construction and verify each."""
    rng = random.Random(seed)
    passed = 0
    failure = None
    for t in range(trials):
        if kind == "A":
            space = standard_symplectic(max(n, 1))
            source = _random_nonzero_vector(rng, space.dim)
            produced = nesting_A(space, source)
            ok = verify_section("A", space, source, produced)
            witness = {"point": str(source)}
        elif kind == "B3":
            a = random_invertible_octonion(rng)
            x = random_null_octonion(rng)
            produced = nesting_B3(a, x)
            ok = verify_section("B3", a, x, produced)
            witness = {"anchor": str(a.coords), "point": str(x.coords)}
        elif kind == "D":
            if n < 2:
                raise UnsupportedInputError("the flag construction needs n >= 2")
            space = hyperbolic_space(n)
            vn = random_isotropic_basis(rng, n)
            v = random_anisotropic_vector(rng, space)
            produced = nesting_D(space, vn, v)
            ok = verify_section("D", space, (vn, v), produced)
            witness = {"vn": str(vn), "v": str(v)}
        else:
            raise UnsupportedInputError(f"unknown construction kind {kind!r}")
        if ok:
            passed += 1
        elif failure is None:
            failure = dict(witness, trial=str(t))
    return TrialReport(kind=kind, trials=trials, passed=passed, failure=failure)


def octonion_identity_trials(pairs: int, seed: int) -> TrialReport:
    """Seeded check of N(xy) = N(x)N(y) and x(xa) = (xx)a."""
    rng = random.Random(seed)
    passed = 0
    failure = None
    for t in range(pairs):
        x = random_gauss_octonion(rng)
        y = random_gauss_octonion(rng)
        norm_ok = (x * y).norm() == x.norm() * y.norm()
        alt_ok = x * (x * y) == (x * x) * y
        if norm_ok and alt_ok:
            passed += 1
        elif failure is None:
            failure = {"x": str(x.coords), "y": str(y.coords), "trial": str(t)}
    return TrialReport(kind="octonion", trials=pairs, passed=passed, failure=failure)
