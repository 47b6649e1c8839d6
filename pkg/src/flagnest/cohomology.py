"""Presentations of the rational cohomology rings of the supported varieties.

Only four mark shapes ever show up in the decision procedure: a single
extremal node at either end of the diagram, and the two-step flags that refine
one of those by a second node.  For each shape the ring has a closed-form
presentation by generators and relations, with the relations packaged as the
positive-degree coefficients of a product of Chern-style series.  We never
need the full quotient ring: every question asked downstream is about a
single graded slice, which is a finite-dimensional vector space over Q, so
ideal membership and quotient dimensions reduce to exact row reduction.

Two conventions worth spelling out.  The class ``eta`` on an even quadric
(and its relative ``eta{m}`` on the two-step flags of type D) is carried as a
formal generator with a single vanishing relation; its square is not part of
the presentation because no consumer ever looks at a slice that would need
it.  And real coefficients are modeled by Q throughout: all relation data is
rational and every positivity or nonvanishing check downstream is exact.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .dynkin import DynkinDiagram, MarkedDiagram, marked
from .errors import InternalInconsistencyError, UnsupportedInputError
from .exactpoly import GradedPoly, UniPoly, coeff_plus, elementary_symmetric_polys
from .linalg import in_row_span, row_echelon

_CLASSICAL = ("A", "B", "C", "D")


@dataclass(frozen=True)
class GradedPresentation:
    """A graded ring given by generators with degrees and homogeneous relations."""

    variety: MarkedDiagram
    generators: Tuple[Tuple[str, int], ...]
    relations: Tuple[GradedPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple((str(n), int(d)) for n, d in self.generators))
        object.__setattr__(self, "relations", tuple(self.relations))
        for rel in self.relations:
            if rel.gens != self.generators:
                raise InternalInconsistencyError("relation written over the wrong generator table")
            if rel.homogeneous_degree() is None:
                raise InternalInconsistencyError(f"inhomogeneous relation {rel}")

    def generator_degrees(self) -> List[int]:
        return sorted(d for _, d in self.generators)

    def relation_degrees(self) -> List[int]:
        return sorted(rel.homogeneous_degree() for rel in self.relations)

    def generator(self, name: str) -> GradedPoly:
        return GradedPoly.generator(self.generators, name)

    def to_json(self) -> dict:
        return {
            "variety": str(self.variety),
            "generators": [{"name": n, "degree": d} for n, d in self.generators],
            "relations": [rel.to_json() for rel in self.relations],
        }


@dataclass(frozen=True)
class BundleChernData:
    """Chern polynomial of one of the universal bundles, or of its pullback.

    ``rank_bound`` is the degree bound of the tabulated polynomial, recorded
    so callers can sanity-check truncations; ``pulled_back`` says whether the
    bundle lives on the two-step flag rather than on the base Grassmannian.
    """

    variety: MarkedDiagram
    bundle: str
    chern_polynomial: UniPoly
    rank_bound: int
    pulled_back: bool

    def __post_init__(self):
        deg = self.chern_polynomial.degree
        if deg is not None and deg > self.rank_bound:
            raise InternalInconsistencyError(
                f"chern polynomial degree {deg} exceeds rank bound {self.rank_bound}"
            )


# ---------------------------------------------------------------------------
# Series helpers.  All the relation sets are Coeff_+ of products of these.


def _one(gens) -> GradedPoly:
    return GradedPoly.const(gens, 1)


def _series(gens, names_by_power: Mapping[int, str], top: int) -> UniPoly:
    """1 + sum(gen * t^power) as a univariate polynomial with graded coefficients."""
    cs = [_one(gens)]
    for p in range(1, top + 1):
        name = names_by_power.get(p)
        cs.append(GradedPoly.generator(gens, name) if name else GradedPoly.zero(gens))
    return UniPoly(cs)


def _coeff_plus_relations(product: UniPoly) -> List[GradedPoly]:
    cs = coeff_plus(product)
    return [cs[d] for d in sorted(cs)]


def _mark_shape(v: MarkedDiagram) -> Tuple[str, Optional[int]]:
    """Classify the mark set into one of the supported shapes.

    Returns ("point", None), ("top", None), ("first", r) or ("last", r).
    Marks {1, n} on B/C/D deliberately resolve to ("last", 1): the two-step
    flag of a line inside a maximal isotropic subspace.
    """
    d = v.diagram
    family, n = d.family, d.rank
    if family not in _CLASSICAL:
        raise UnsupportedInputError(f"no cohomology presentation for family {family}")
    ms = sorted(v.marked)
    if ms == [1]:
        return "point", None
    if ms == [n] and family != "A":
        return "top", None
    if len(ms) == 2 and ms[0] == 1 and ms[1] == n and family != "A":
        return "last", 1
    if len(ms) == 2 and ms[0] == 1:
        r = ms[1]
        limit = {"A": n, "B": n - 1, "C": n - 1, "D": n - 2}[family]
        if 2 <= r <= limit:
            return "first", r
        raise UnsupportedInputError(f"marks {ms} on {d}: no supported presentation shape")
    if len(ms) == 2 and ms[1] == n and family != "A":
        r = ms[0]
        if 2 <= r <= n - 1:
            return "last", r
    raise UnsupportedInputError(f"marks {ms} on {d}: no supported presentation shape")


def _point_presentation(v: MarkedDiagram) -> GradedPresentation:
    family, n = v.diagram.family, v.diagram.rank
    if family == "A":
        gens = [("H", 1)] + [(f"A{i}", i) for i in range(1, n)]
        table = tuple(gens)
        h = GradedPoly.generator(table, "H")
        rels = []
        for i in range(1, n):
            sign = -1 if i % 2 else 1
            rels.append(GradedPoly.generator(table, f"A{i}") - h**i * sign)
        rels.append(h ** (n + 1))
        return GradedPresentation(v, table, tuple(rels))
    k_top = n - 1 if family in ("B", "C") else n - 2
    gens = [("H", 1)] + [(f"K{2 * i}", 2 * i) for i in range(1, k_top + 1)]
    if family == "D":
        gens.append(("eta", n - 1))
    table = tuple(gens)
    h = GradedPoly.generator(table, "H")
    rels = [GradedPoly.generator(table, f"K{2 * i}") - h ** (2 * i) for i in range(1, k_top + 1)]
    if family in ("B", "C"):
        rels.append(h ** (2 * n))
    else:
        rels.append(h ** (2 * n - 1))
        rels.append(h * GradedPoly.generator(table, "eta"))
    return GradedPresentation(v, table, tuple(rels))


def _top_presentation(v: MarkedDiagram) -> GradedPresentation:
    family, n = v.diagram.family, v.diagram.rank
    table = tuple((f"Q{i}", i) for i in range(1, n + 1))
    q = _series(table, {i: f"Q{i}" for i in range(1, n + 1)}, n)
    rels = _coeff_plus_relations(q * q.substitute_neg())
    if family == "D":
        rels.append(GradedPoly.generator(table, f"Q{n}"))
    return GradedPresentation(v, table, tuple(rels))


def _first_presentation(v: MarkedDiagram, r: int) -> GradedPresentation:
    family, n = v.diagram.family, v.diagram.rank
    if family == "A":
        gens = (
            [("h", 1)]
            + [(f"a{i}", i) for i in range(1, r)]
            + [(f"s{i}", i) for i in range(1, n - r + 2)]
        )
        table = tuple(gens)
        h = GradedPoly.generator(table, "h")
        a = _series(table, {i: f"a{i}" for i in range(1, r)}, r - 1)
        s = _series(table, {i: f"s{i}" for i in range(1, n - r + 2)}, n - r + 1)
        line = UniPoly([_one(table), h])
        rels = _coeff_plus_relations(line * a * s)
        return GradedPresentation(v, table, tuple(rels))
    gens = (
        [("h", 1)]
        + [(f"a{i}", i) for i in range(1, r)]
        + [(f"k{2 * i}", 2 * i) for i in range(1, n - r + 1)]
    )
    if family == "D":
        gens.append((f"eta{n - r}", n - r))
    table = tuple(gens)
    h = GradedPoly.generator(table, "h")
    a = _series(table, {i: f"a{i}" for i in range(1, r)}, r - 1)
    k = _series(table, {2 * i: f"k{2 * i}" for i in range(1, n - r + 1)}, 2 * (n - r))
    even_line = UniPoly([_one(table), GradedPoly.zero(table), -(h * h)])
    rels = _coeff_plus_relations(even_line * a * a.substitute_neg() * k)
    if family == "D":
        a_top = GradedPoly.generator(table, f"a{r - 1}")
        rels.append(h * a_top * GradedPoly.generator(table, f"eta{n - r}"))
    return GradedPresentation(v, table, tuple(rels))


def _last_presentation(v: MarkedDiagram, r: int) -> GradedPresentation:
    family, n = v.diagram.family, v.diagram.rank
    table = tuple(
        [(f"q{i}", i) for i in range(1, r + 1)] + [(f"b{i}", i) for i in range(1, n - r + 1)]
    )
    q = _series(table, {i: f"q{i}" for i in range(1, r + 1)}, r)
    b = _series(table, {i: f"b{i}" for i in range(1, n - r + 1)}, n - r)
    rels = _coeff_plus_relations(q * q.substitute_neg() * b * b.substitute_neg())
    if family == "D":
        rels.append(
            GradedPoly.generator(table, f"q{r}") * GradedPoly.generator(table, f"b{n - r}")
        )
    return GradedPresentation(v, table, tuple(rels))


_PRESENTATION_CACHE: Dict[Tuple[str, int, frozenset], GradedPresentation] = {}


def presentation(v: MarkedDiagram) -> GradedPresentation:
    """Generators-and-relations presentation of H*(v) over Q.

    Supports the four shapes used by the classifier: marks {1}, {n}, {1, r}
    and {r, n} (with {1, n} read as the r = 1 case of the latter).  Anything
    else, and anything exceptional, raises UnsupportedInputError.
    """
    key = (v.diagram.family, v.diagram.rank, v.marked)
    hit = _PRESENTATION_CACHE.get(key)
    if hit is not None:
        return hit
    shape, r = _mark_shape(v)
    if shape == "point":
        p = _point_presentation(v)
    elif shape == "top":
        p = _top_presentation(v)
    elif shape == "first":
        p = _first_presentation(v, r)
    else:
        p = _last_presentation(v, r)
    _PRESENTATION_CACHE[key] = p
    return p


# ---------------------------------------------------------------------------
# Universal bundles


def universal_chern(v: MarkedDiagram, bundle: str) -> BundleChernData:
    """Chern polynomial of a universal bundle (or its pullback) on v.

    Supported pairs: Q on a maximal isotropic Grassmannian; Q, S_dual and (on
    B/C/D) K on the {1, r} flags; Q and S_dual on the {r, n} flags.  The
    polynomial is written over the generator table of ``presentation(v)``.
    """
    if bundle not in ("Q", "S_dual", "K"):
        raise UnsupportedInputError(f"unknown bundle tag {bundle!r}")
    shape, r = _mark_shape(v)
    family, n = v.diagram.family, v.diagram.rank
    p = presentation(v)
    table = p.generators
    if shape == "top":
        if bundle != "Q":
            raise UnsupportedInputError(f"no tabulated Chern polynomial for {bundle} on {v}")
        poly = _series(table, {i: f"Q{i}" for i in range(1, n + 1)}, n)
        return BundleChernData(v, "Q", poly, n, False)
    if shape == "first":
        h = GradedPoly.generator(table, "h")
        a = _series(table, {i: f"a{i}" for i in range(1, r)}, r - 1)
        if bundle == "Q":
            poly = UniPoly([_one(table), h]) * a
            return BundleChernData(v, "Q", poly, r, True)
        if family == "A":
            if bundle == "S_dual":
                poly = _series(table, {i: f"s{i}" for i in range(1, n - r + 2)}, n - r + 1)
                return BundleChernData(v, "S_dual", poly, n - r + 1, True)
            raise UnsupportedInputError(f"no tabulated Chern polynomial for {bundle} on {v}")
        k = _series(table, {2 * i: f"k{2 * i}" for i in range(1, n - r + 1)}, 2 * (n - r))
        if bundle == "K":
            return BundleChernData(v, "K", k, 2 * (n - r), True)
        poly = UniPoly([_one(table), -h]) * a.substitute_neg() * k
        return BundleChernData(v, "S_dual", poly, 2 * n - r, True)
    if shape == "last":
        q = _series(table, {i: f"q{i}" for i in range(1, r + 1)}, r)
        if bundle == "Q":
            return BundleChernData(v, "Q", q, r, True)
        if bundle == "S_dual":
            b = _series(table, {i: f"b{i}" for i in range(1, n - r + 1)}, n - r)
            poly = q.substitute_neg() * b * b.substitute_neg()
            return BundleChernData(v, "S_dual", poly, 2 * n - r, True)
        raise UnsupportedInputError(f"no tabulated Chern polynomial for {bundle} on {v}")
    raise UnsupportedInputError(f"no tabulated Chern polynomials on {v}")


def pullback_identities_check(family: str, n: int, r: int) -> bool:
    """Verify the pullback formulas as symmetric-function identities.

    Writes every generator out in the underlying x variables and checks that
    the series split multiplicatively along the variable split: for type A,
    e(x_2..x_{n+1}) factors as a(t)s(t); for B/C/D, the even series in the
    squared variables factors as a(t)a(-t)k(t).  Exact, no geometry involved.
    """
    if family not in _CLASSICAL:
        raise UnsupportedInputError(f"classical families only, not {family!r}")
    if not 1 < r <= n:
        raise UnsupportedInputError(f"need 1 < r <= n, got r={r}, n={n}")
    if family == "A":
        names = [f"x{j}" for j in range(2, n + 2)]
        table = tuple((nm, 1) for nm in names)
        split = r - 1  # x_2..x_r on the left, x_{r+1}..x_{n+1} on the right
        left = _factor_product(table, names[:split], sign=1)
        right = _factor_product(table, names[split:], sign=1)
        full = _factor_product(table, names, sign=1)
        return left * right == full
    names = [f"x{j}" for j in range(2, n + 1)]
    table = tuple((nm, 1) for nm in names)
    split = r - 1
    a = _factor_product(table, names[:split], sign=1)
    a_neg = a.substitute_neg()
    k = _factor_product(table, names[split:], sign=-1)
    full = _factor_product(table, names, sign=-1)
    return a * a_neg * k == full


def _factor_product(table, names: Sequence[str], sign: int) -> UniPoly:
    """prod(1 + x t) when sign=1, prod(1 - x^2 t^2) when sign=-1."""
    acc = UniPoly([_one(table)])
    for nm in names:
        x = GradedPoly.generator(table, nm)
        if sign == 1:
            acc = acc * UniPoly([_one(table), x])
        else:
            acc = acc * UniPoly([_one(table), GradedPoly.zero(table), -(x * x)])
    return acc


# ---------------------------------------------------------------------------
# Even-generator elimination on the maximal isotropic Grassmannian


_ELIMINATED_CACHE: Dict[Tuple[str, int], GradedPresentation] = {}


def eliminate_even_generators(p: GradedPresentation) -> GradedPresentation:
    """Rewrite H*(D(n)) using only the odd-degree Q generators.

    The degree-2i relation has the form 2*Q_{2i} + (terms in lower Q's), so
    the even generators can be solved for one by one, in increasing order.
    For type D the top generator Q_n is set to zero first.  The surviving
    relations are the higher even-degree coefficients with the substitutions
    applied; their degrees all exceed the largest remaining generator degree,
    which is what the downstream surjectivity arguments feed on.
    """
    family, n = p.variety.diagram.family, p.variety.diagram.rank
    if family not in ("B", "C", "D") or sorted(p.variety.marked) != [n]:
        raise UnsupportedInputError("even-generator elimination applies to maximal "
                                    "isotropic Grassmannians only")
    key = (family, n)
    hit = _ELIMINATED_CACHE.get(key)
    if hit is not None:
        return hit
    table = p.generators
    q = _series(table, {i: f"Q{i}" for i in range(1, n + 1)}, n)
    coeffs = coeff_plus(q * q.substitute_neg())
    subs: Dict[str, GradedPoly] = {}
    if family == "D":
        subs[f"Q{n}"] = GradedPoly.zero(table)

    def reduce(poly: GradedPoly) -> GradedPoly:
        for name, val in subs.items():
            poly = poly.substitute(name, val)
        return poly

    solve_top = n if family in ("B", "C") else n - 1
    survivors: List[Tuple[int, GradedPoly]] = []
    for d in sorted(coeffs):
        c = reduce(coeffs[d])
        if d <= solve_top:
            name = f"Q{d}"
            lead = c.coefficient({name: 1})
            if lead != 2:
                raise InternalInconsistencyError(f"degree-{d} relation not solvable for {name}")
            rest = c - GradedPoly.generator(table, name) * 2
            subs[name] = rest * Fraction(-1, 2)
        elif c.terms:
            survivors.append((d, c))

    expected = set(
        range(2 * (n // 2) + 2, 2 * n + 1, 2)
        if family in ("B", "C")
        else range(2 * ((n + 1) // 2), 2 * n - 1, 2)
    )
    if {d for d, _ in survivors} != expected:
        raise InternalInconsistencyError(
            f"surviving relation degrees {sorted(d for d, _ in survivors)} != {sorted(expected)}"
        )

    odd_top = n if n % 2 else n - 1
    if family == "D" and n % 2:
        odd_top = n - 2
    reduced_table = tuple((f"Q{i}", i) for i in range(1, odd_top + 1, 2))
    keep = [i for i, (nm, _) in enumerate(table) if int(nm[1:]) % 2 and int(nm[1:]) <= odd_top]
    rels = tuple(_project(c, table, reduced_table, keep) for _, c in survivors)
    out = GradedPresentation(p.variety, reduced_table, rels)
    _ELIMINATED_CACHE[key] = out
    return out


def _project(poly: GradedPoly, table, reduced_table, keep: Sequence[int]) -> GradedPoly:
    keep_set = set(keep)
    terms = {}
    for expo, c in poly.terms.items():
        if any(e and i not in keep_set for i, e in enumerate(expo)):
            raise InternalInconsistencyError("projection dropped a live generator")
        terms[tuple(expo[i] for i in keep)] = c
    return GradedPoly(reduced_table, terms)


# ---------------------------------------------------------------------------
# Degree ledgers


def degree_ledger(p: GradedPresentation) -> dict:
    """Degree bookkeeping after obvious simplification.

    A generator that appears in some relation as a bare linear term and
    nowhere else in that relation is redundant: solve and substitute.  This
    collapses e.g. the projective-space presentations down to the hyperplane
    class alone.  The ledger reports the surviving degrees; the quantity the
    classifier cares about is whether every relation degree exceeds every
    generator degree.
    """
    gens = list(p.generators)
    rels = list(p.relations)
    changed = True
    while changed:
        changed = False
        for ri, rel in enumerate(rels):
            hit = _linear_pivot(rel, gens)
            if hit is None:
                continue
            gi, coeff = hit
            name = gens[gi][0]
            solo = GradedPoly.generator(rel.gens, name)
            expr = (rel - solo * coeff) * (Fraction(-1) / coeff)
            new_rels = []
            for rj, other in enumerate(rels):
                if rj == ri:
                    continue
                other = other.substitute(name, expr)
                if other.terms:
                    new_rels.append(other)
            old_table = rel.gens
            del gens[gi]
            keep = [i for i in range(len(old_table)) if i != gi]
            table = tuple(gens)
            rels = [_project(q2, old_table, table, keep) for q2 in new_rels]
            changed = True
            break
    gen_degrees = sorted(d for _, d in gens)
    rel_degrees = sorted(r.homogeneous_degree() for r in rels)
    return {
        "generator_degrees": gen_degrees,
        "relation_degrees": rel_degrees,
        "max_generator_degree": max(gen_degrees) if gen_degrees else 0,
        "min_relation_degree": min(rel_degrees) if rel_degrees else None,
    }


def _linear_pivot(rel: GradedPoly, gens) -> Optional[Tuple[int, Fraction]]:
    """Index and coefficient of a generator occurring only as a bare linear term."""
    for gi in range(len(gens)):
        expo = tuple(1 if i == gi else 0 for i in range(len(gens)))
        c = rel.terms.get(expo)
        if c is None:
            continue
        if all(e[gi] == 0 for e in rel.terms if e != expo):
            return gi, c
    return None


def coefficient_of_monomial(relation: GradedPoly, powers: Mapping[str, int]) -> Fraction:
    """Exact coefficient of the given monomial in a relation polynomial."""
    return relation.coefficient(powers)


# ---------------------------------------------------------------------------
# Graded slices of the relation ideal


def homogeneous_monomials(gens, degree: int) -> List[Tuple[int, ...]]:
    """All exponent tuples of the given weighted degree, in a fixed order."""
    if degree < 0:
        return []
    out: List[Tuple[int, ...]] = []
    width = len(gens)

    def rec(idx: int, remaining: int, prefix: List[int]):
        if idx == width:
            if remaining == 0:
                out.append(tuple(prefix))
            return
        _, d = gens[idx]
        top = remaining // d
        for e in range(top + 1):
            prefix.append(e)
            rec(idx + 1, remaining - e * d, prefix)
            prefix.pop()

    rec(0, degree, [])
    return out


def _slice_rows(p: GradedPresentation, degree: int):
    basis = homogeneous_monomials(p.generators, degree)
    index = {m: i for i, m in enumerate(basis)}
    rows = []
    for rel in p.relations:
        d0 = rel.homogeneous_degree()
        if d0 > degree:
            continue
        for expo in homogeneous_monomials(p.generators, degree - d0):
            mono = GradedPoly(p.generators, {expo: 1})
            prod = rel * mono
            vec = [Fraction(0)] * len(basis)
            for e, c in prod.terms.items():
                vec[index[e]] = c
            rows.append(vec)
    return basis, rows


def in_relation_slice(p: GradedPresentation, poly: GradedPoly) -> bool:
    """Exact membership of a homogeneous polynomial in the relation ideal."""
    if not poly.terms:
        return True
    d = poly.homogeneous_degree()
    if d is None:
        raise UnsupportedInputError("slice membership needs a homogeneous polynomial")
    if poly.gens != p.generators:
        raise UnsupportedInputError("polynomial written over the wrong generator table")
    basis, rows = _slice_rows(p, d)
    index = {m: i for i, m in enumerate(basis)}
    vec = [Fraction(0)] * len(basis)
    for e, c in poly.terms.items():
        vec[index[e]] = c
    echelon, pivots = row_echelon(rows)
    return in_row_span(echelon, pivots, vec)


def slice_dimension(p: GradedPresentation, degree: int) -> int:
    """Dimension of the degree-d part of the quotient ring."""
    basis, rows = _slice_rows(p, degree)
    echelon, _ = row_echelon(rows)
    return len(basis) - len(echelon)


def pullback_product_collapse_check(family: str, n: int, r: int) -> bool:
    """Check that a(t)a(-t)k(t) reduces to the even powers of h mod relations.

    On the {1, r} flag of type B/C/D the product of the pulled-back series
    should agree, slice by slice, with sum((ht)^{2i}): coefficient by
    coefficient, Coeff_d - h^d (d even, zero for d odd) must lie in the
    relation ideal.  Verified by exact linear algebra on each graded slice.

    The second mark has to stay off the end of the diagram (off the fork for
    type D) so that the flag presentation keeps the hyperplane generator.
    """
    if family not in ("B", "C", "D"):
        raise UnsupportedInputError(f"isotropic families only, not {family!r}")
    top = n - 2 if family == "D" else n - 1
    if not 1 < r <= top:
        raise UnsupportedInputError(f"need 1 < r <= {top} on {family}{n}, got r={r}")
    v = marked(DynkinDiagram(family, n), {1, r})
    p = presentation(v)
    table = p.generators
    h = GradedPoly.generator(table, "h")
    a = _series(table, {i: f"a{i}" for i in range(1, r)}, r - 1)
    k = _series(table, {2 * i: f"k{2 * i}" for i in range(1, n - r + 1)}, 2 * (n - r))
    product = a * a.substitute_neg() * k
    for d in range(1, 2 * n - 1):
        target = h**d if d % 2 == 0 else GradedPoly.zero(table)
        delta = product.coeff(d) - target
        if not in_relation_slice(p, delta):
            return False
    return True
