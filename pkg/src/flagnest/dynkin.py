"""Classical Dynkin diagrams and their combinatorics.

Covers families A, B, C, D plus the rank-2 exceptional diagram G2: Cartan
matrices, fundamental degrees, positive roots, dimensions of the marked
homogeneous varieties, diagram automorphisms, node deletion with component
re-identification, diagram foldings, and the restriction tags of bundles
over a rational curve.

Numbering follows the usual conventions: A/B/C are paths 1..n with the
multiple edge at the far end (B: arrow toward node n, C: arrow toward node
n-1 side, i.e. C[n][n-1] = -1, C[n-1][n] = -2); D is the path 1..n-2 with
the two fork nodes n-1 and n attached to n-2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import UnsupportedFoldingError, UnsupportedInputError

FAMILIES = ("A", "B", "C", "D", "G2")


@dataclass(frozen=True)
class DynkinDiagram:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedInputError(f"unknown family {self.family!r}")

    def __str__(self):
        return f"{self.family}{self.rank}" if self.family != "G2" else "G2"

    @property
    def nodes(self) -> range:
        return range(1, self.rank + 1)


def diagram(family: str, rank: int) -> DynkinDiagram:
    """Validated, normalized diagram constructor.

    Low-rank coincidences collapse to a single representative: C2 -> B2 and
    D3 -> A3.  D2 (disconnected) is rejected.
    """
    family = family.upper()
    if family == "G" or family == "G2":
        if family == "G2" or rank == 2:
            return DynkinDiagram("G2", 2)
        raise UnsupportedInputError("G2 is the only supported exceptional diagram")
    if family == "A":
        if rank < 1:
            raise UnsupportedInputError("A requires rank >= 1")
        return DynkinDiagram("A", rank)
    if family == "B":
        if rank < 2:
            raise UnsupportedInputError("B requires rank >= 2")
        return DynkinDiagram("B", rank)
    if family == "C":
        if rank < 2:
            raise UnsupportedInputError("C requires rank >= 2")
        if rank == 2:
            return DynkinDiagram("B", 2)
        return DynkinDiagram("C", rank)
    if family == "D":
        if rank == 2:
            raise UnsupportedInputError("D2 is disconnected")
        if rank < 2:
            raise UnsupportedInputError("D requires rank >= 3")
        if rank == 3:
            return DynkinDiagram("A", 3)
        return DynkinDiagram("D", rank)
    raise UnsupportedInputError(f"unknown family {family!r}")


_DIAGRAM_RE = re.compile(r"^([ABCDabcd]|[Gg]2?)(\d+)?$")


def parse_diagram(text: str) -> DynkinDiagram:
    m = _DIAGRAM_RE.match(text.strip())
    if not m:
        raise UnsupportedInputError(f"cannot parse diagram {text!r}")
    fam, rank = m.group(1).upper(), m.group(2)
    if fam in ("G", "G2"):
        if rank not in (None, "2"):
            raise UnsupportedInputError("G2 is the only supported exceptional diagram")
        return diagram("G2", 2)
    if rank is None:
        raise UnsupportedInputError(f"missing rank in {text!r}")
    return diagram(fam, int(rank))


@dataclass(frozen=True)
class MarkedDiagram:
    diagram: DynkinDiagram
    marked: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "marked", frozenset(self.marked))
        bad = [i for i in self.marked if i not in self.diagram.nodes]
        if bad:
            raise UnsupportedInputError(f"marked nodes {bad} outside 1..{self.diagram.rank}")

    def __str__(self):
        inner = ",".join(str(i) for i in sorted(self.marked))
        return f"{self.diagram}({inner})"


def marked(d: DynkinDiagram, nodes) -> MarkedDiagram:
    return MarkedDiagram(d, frozenset(nodes))


_MARKED_RE = re.compile(r"^([^()\[\]]+)\(([\d,\s]*)\)$")


def parse_marked(text: str) -> MarkedDiagram:
    m = _MARKED_RE.match(text.strip())
    if not m:
        raise UnsupportedInputError(f"cannot parse marked diagram {text!r}")
    d = parse_diagram(m.group(1))
    inner = m.group(2).strip()
    nodes = frozenset(int(x) for x in inner.split(",") if x.strip()) if inner else frozenset()
    if not nodes:
        raise UnsupportedInputError("a variety needs at least one marked node")
    return MarkedDiagram(d, nodes)


# ---------------------------------------------------------------------------
# Cartan data


def cartan_matrix(d: DynkinDiagram) -> List[List[int]]:
    """C[i][j] = 2(a_i, a_j)/(a_i, a_i), returned as 0-based nested lists."""
    n = d.rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, cij=-1, cji=-1):
        c[i - 1][j - 1] = cij
        c[j - 1][i - 1] = cji

    if d.family == "G2":
        link(1, 2, -1, -3)
        return c
    if d.family == "A":
        for i in range(1, n):
            link(i, i + 1)
        return c
    if d.family in ("B", "C"):
        for i in range(1, n - 1):
            link(i, i + 1)
        if d.family == "B":
            link(n - 1, n, -1, -2)
        else:
            link(n - 1, n, -2, -1)
        return c
    # D
    for i in range(1, n - 2):
        link(i, i + 1)
    link(n - 2, n - 1)
    link(n - 2, n)
    return c


def neighbors(d: DynkinDiagram, node: int) -> List[int]:
    c = cartan_matrix(d)
    return [j for j in d.nodes if j != node and c[node - 1][j - 1] != 0]


def fundamental_degrees(d: DynkinDiagram) -> List[int]:
    """Degrees of the basic Weyl-invariant polynomials, in table order."""
    n = d.rank
    if d.family == "A":
        return list(range(2, n + 2))
    if d.family in ("B", "C"):
        return [2 * i for i in range(1, n + 1)]
    if d.family == "D":
        return [2 * i for i in range(1, n)] + [n]
    return [2, 6]


def coxeter_number(d: DynkinDiagram) -> int:
    return max(fundamental_degrees(d))


@dataclass(frozen=True)
class RootSystem:
    diagram: DynkinDiagram
    positive_roots: Tuple[Tuple[int, ...], ...]


def positive_roots(d: DynkinDiagram) -> RootSystem:
    """All positive roots as coefficient vectors over the simple roots."""
    n = d.rank
    roots: List[Tuple[int, ...]] = []

    def vec(pairs) -> Tuple[int, ...]:
        v = [0] * n
        for idx, val in pairs:
            v[idx - 1] += val
        return tuple(v)

    def ones(lo, hi):  # alpha_lo + ... + alpha_hi
        return [(k, 1) for k in range(lo, hi + 1)]

    def twos(lo, hi):
        return [(k, 2) for k in range(lo, hi + 1)]

    if d.family == "A":
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                roots.append(vec(ones(i, j)))
    elif d.family == "B":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(vec(ones(i, j - 1)))          # e_i - e_j
            roots.append(vec(ones(i, n)))                   # e_i
            for j in range(i + 1, n + 1):
                roots.append(vec(ones(i, j - 1) + twos(j, n)))  # e_i + e_j
    elif d.family == "C":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(vec(ones(i, j - 1)))          # e_i - e_j
            for j in range(i + 1, n + 1):
                roots.append(vec(ones(i, j - 1) + twos(j, n - 1) + [(n, 1)]))  # e_i + e_j
            roots.append(vec(twos(i, n - 1) + [(n, 1)]))    # 2 e_i
    elif d.family == "D":
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                roots.append(vec(ones(i, j - 1)))          # e_i - e_j
        for i in range(1, n):
            roots.append(vec(ones(i, n - 2) + [(n, 1)]))    # e_i + e_n
        for i in range(1, n):
            for j in range(i + 1, n):
                roots.append(vec(ones(i, j - 1) + twos(j, n - 2) + [(n - 1, 1), (n, 1)]))  # e_i + e_j
    else:  # G2
        roots = [(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)]
    return RootSystem(d, tuple(roots))


def variety_dimension(m: MarkedDiagram) -> int:
    """dim of the marked variety: positive roots whose support meets the marks."""
    if not m.marked:
        raise UnsupportedInputError("dimension needs a nonempty mark set")
    rs = positive_roots(m.diagram)
    count = 0
    for root in rs.positive_roots:
        if any(root[i - 1] != 0 for i in m.marked):
            count += 1
    return count


# ---------------------------------------------------------------------------
# Automorphisms


def diagram_automorphisms(d: DynkinDiagram) -> List[Tuple[int, ...]]:
    """Graph automorphisms as permutation tuples (image of node i at index i-1)."""
    n = d.rank
    ident = tuple(range(1, n + 1))
    if d.family == "A" and n >= 2:
        flip = tuple(n + 1 - i for i in range(1, n + 1))
        return [ident, flip]
    if d.family == "D":
        if n == 4:
            perms = []
            for legs in _permutations3((1, 3, 4)):
                img = {1: legs[0], 3: legs[1], 4: legs[2], 2: 2}
                perms.append(tuple(img[i] for i in range(1, 5)))
            return perms
        swap = list(range(1, n + 1))
        swap[n - 2], swap[n - 1] = swap[n - 1], swap[n - 2]
        return [ident, tuple(swap)]
    return [ident]


def _permutations3(items):
    a, b, c = items
    return [
        (a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a),
    ]


def apply_automorphism(sigma: Tuple[int, ...], nodes) -> FrozenSet[int]:
    return frozenset(sigma[i - 1] for i in nodes)


# ---------------------------------------------------------------------------
# Node deletion


@dataclass(frozen=True)
class Component:
    """A connected component of a node deletion, re-identified as classical.

    to_parent maps the component's own labels 1..m back to the parent
    diagram's labels.
    """

    diagram: DynkinDiagram
    to_parent: Tuple[Tuple[int, int], ...]  # (own label, parent label), sorted

    def parent_node(self, own: int) -> int:
        for a, b in self.to_parent:
            if a == own:
                return b
        raise KeyError(own)

    def own_node(self, parent: int) -> int:
        for a, b in self.to_parent:
            if b == parent:
                return a
        raise KeyError(parent)

    @property
    def parent_nodes(self) -> FrozenSet[int]:
        return frozenset(b for _, b in self.to_parent)


def delete_nodes(d: DynkinDiagram, removed) -> List[Component]:
    """Connected components of the induced subdiagram on nodes - removed."""
    removed = frozenset(removed)
    keep = [i for i in d.nodes if i not in removed]
    c = cartan_matrix(d)
    adj: Dict[int, List[int]] = {
        i: [j for j in keep if j != i and c[i - 1][j - 1] != 0] for i in keep
    }
    seen = set()
    comps = []
    for start in keep:
        if start in seen:
            continue
        stack, nodes = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            nodes.append(v)
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(_identify_component(d, sorted(nodes), adj, c))
    comps.sort(key=lambda comp: min(b for _, b in comp.to_parent))
    return comps


def _identify_component(d, nodes, adj, c) -> Component:
    m = len(nodes)
    if m == 1:
        return Component(diagram("A", 1), ((1, nodes[0]),))

    deg = {v: len([w for w in adj[v] if w in nodes]) for v in nodes}
    fork = [v for v in nodes if deg[v] == 3]
    multi = [
        (u, v)
        for u in nodes
        for v in nodes
        if u < v and c[u - 1][v - 1] * c[v - 1][u - 1] >= 2
    ]

    if fork:
        # Only D-type parents produce a fork; its short branches are the two
        # top-numbered parent nodes.
        n = d.rank
        spine = sorted(v for v in nodes if v < n - 1)
        order = spine + [n - 1, n]
        fam = diagram("D", m)  # m >= 4 whenever a degree-3 node is present
        return Component(fam, tuple((i + 1, v) for i, v in enumerate(order)))

    if multi:
        (u, v) = multi[0]
        mult = c[u - 1][v - 1] * c[v - 1][u - 1]
        if mult == 3:
            return Component(diagram("G2", 2), ((1, nodes[0]), (2, nodes[1])))
        # Double edge from a B or C parent; the component is the interval
        # ending at parent node n.
        if m == 2:
            # Normalize so the new matrix has C[2][1] = -2.
            if c[u - 1][v - 1] == -2:
                # arrow pattern of C2: relabel with v first
                order = [v, u]
            else:
                order = [u, v]
            return Component(diagram("B", 2), tuple((i + 1, w) for i, w in enumerate(order)))
        fam = diagram(d.family, m)
        order = sorted(nodes)
        return Component(fam, tuple((i + 1, w) for i, w in enumerate(order)))

    # Simply-laced path: walk it from its smallest endpoint.
    ends = [v for v in nodes if deg[v] <= 1]
    start = min(ends)
    order = [start]
    prev = None
    cur = start
    while len(order) < m:
        nxt = [w for w in adj[cur] if w != prev and w in nodes]
        prev, cur = cur, nxt[0]
        order.append(cur)
    return Component(diagram("A", m), tuple((i + 1, v) for i, v in enumerate(order)))


def component_containing(d: DynkinDiagram, removed, node: int) -> Component:
    for comp in delete_nodes(d, removed):
        if node in comp.parent_nodes:
            return comp
    raise UnsupportedInputError(f"node {node} was deleted; no component contains it")


# ---------------------------------------------------------------------------
# Tags


@dataclass(frozen=True)
class Tag:
    diagram: DynkinDiagram
    values: Tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.diagram.rank:
            raise UnsupportedInputError("tag length must equal the rank")
        if any(v < 0 for v in self.values):
            raise UnsupportedInputError("tag entries must be nonnegative")

    def __str__(self):
        return f"{self.diagram}[{','.join(str(v) for v in self.values)}]"


_TAG_RE = re.compile(r"^([^()\[\]]+)\[([\d,\s]*)\]$")


def parse_tag(text: str) -> Tag:
    m = _TAG_RE.match(text.strip())
    if not m:
        raise UnsupportedInputError(f"cannot parse tag {text!r}")
    d = parse_diagram(m.group(1))
    values = tuple(int(x) for x in m.group(2).split(",") if x.strip())
    return Tag(d, values)


def restriction_tag(parent: DynkinDiagram, sub: Component, external_node: int) -> Tag:
    """Tag of the homogeneous bundle cut out on a deletion component by a
    rational curve in the direction of an external node: the negated Cartan
    pairings against that node (zero away from its neighbors)."""
    if external_node in sub.parent_nodes:
        raise UnsupportedInputError("external node must lie outside the component")
    c = cartan_matrix(parent)
    values = []
    for own in sub.diagram.nodes:
        par = sub.parent_node(own)
        values.append(-c[par - 1][external_node - 1])
    return Tag(sub.diagram, tuple(values))


# ---------------------------------------------------------------------------
# Foldings


@dataclass(frozen=True)
class Folding:
    label: str
    usable: bool
    source: Optional[DynkinDiagram] = None
    target: Optional[DynkinDiagram] = None
    node_map: Optional[Tuple[Tuple[int, int], ...]] = None  # (source, target)

    def fibers(self) -> Dict[int, FrozenSet[int]]:
        if self.node_map is None:
            raise UnsupportedFoldingError(f"{self.label} carries no node map")
        out: Dict[int, set] = {}
        for s, t in self.node_map:
            out.setdefault(t, set()).add(s)
        return {t: frozenset(v) for t, v in out.items()}


def _fold_a_to_c(source_rank: int) -> Folding:
    if source_rank < 3 or source_rank % 2 == 0:
        raise UnsupportedInputError("this folding needs an odd source rank >= 3")
    half = (source_rank + 1) // 2
    node_map = tuple((i, min(i, source_rank + 1 - i)) for i in range(1, source_rank + 1))
    return Folding(
        label=f"A{source_rank}->C{half}",
        usable=True,
        source=DynkinDiagram("A", source_rank),
        target=diagram("C", half),
        node_map=node_map,
    )


def _fold_d_to_b(source_rank: int) -> Folding:
    if source_rank < 4:
        raise UnsupportedInputError("this folding needs source rank >= 4")
    node_map = tuple(
        (i, i if i < source_rank else source_rank - 1) for i in range(1, source_rank + 1)
    )
    return Folding(
        label=f"D{source_rank}->B{source_rank - 1}",
        usable=True,
        source=DynkinDiagram("D", source_rank),
        target=diagram("B", source_rank - 1),
        node_map=node_map,
    )


def _fold_b3_to_g2() -> Folding:
    return Folding(
        label="B3->G2",
        usable=True,
        source=DynkinDiagram("B", 3),
        target=DynkinDiagram("G2", 2),
        node_map=((1, 1), (2, 2), (3, 1)),
    )


def foldings() -> List[Folding]:
    """The five admissible foldings; the two exceptional-target ones are
    metadata only and refuse downstream use."""
    return [
        _fold_a_to_c(3),
        _fold_d_to_b(4),
        Folding(label="E6->F4", usable=False),
        Folding(label="D4->G2", usable=False),
        _fold_b3_to_g2(),
    ]


def folding_from(source: DynkinDiagram) -> Folding:
    """The usable folding whose source is the given diagram."""
    if source.family == "A" and source.rank >= 3 and source.rank % 2 == 1:
        return _fold_a_to_c(source.rank)
    if source.family == "D":
        return _fold_d_to_b(source.rank)
    if source.family == "B" and source.rank == 3:
        return _fold_b3_to_g2()
    raise UnsupportedInputError(f"no usable folding with source {source}")


def folding_tag_condition(f: Folding, t: Tag) -> bool:
    """True iff the tag is constant on every fiber of the folding."""
    if not f.usable:
        raise UnsupportedFoldingError(f"{f.label} is metadata only")
    if t.diagram != f.source:
        raise UnsupportedInputError("tag is indexed by a different diagram")
    for fiber in f.fibers().values():
        vals = {t.values[i - 1] for i in fiber}
        if len(vals) > 1:
            return False
    return True
