"""The generalized triangle pattern, its copies, tight 2-paths and blowups.

The pattern on 2k-1 vertices has a (k-1)-vertex base contained in two edges,
two apex vertices (one per base edge), and a spine edge through both apexes
and the remaining k-2 tail vertices.  A copy is canonicalised as the triple
(base, apexes, tail) of sorted vertex tuples, which quotients out the
pattern automorphisms, so LP columns and exact-cover rows never double count.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterable, Iterator, Optional

from .core import KGraph, canonical_vertex_set
from .errors import (
    BudgetExceeded,
    InvalidArity,
    InvalidColoring,
    InvalidUniformity,
)

DEFAULT_COPY_CAP = 5_000_000


def generalized_triangle(k: int) -> KGraph:
    """The (2k-1)-vertex, 3-edge pattern graph, 0-based.

    Edges: {0..k-2, k-1}, {0..k-2, k} and {k-1, k, .., 2k-2}.  For k=2 this
    degenerates to the graph triangle.
    """
    if k < 2:
        raise InvalidUniformity(f"k={k} must be at least 2")
    base = tuple(range(k - 1))
    spine = tuple(range(k - 1, 2 * k - 1))
    return KGraph(2 * k - 1, k, [base + (k - 1,), base + (k,), spine])


@dataclass(frozen=True)
class TriangleCopy:
    """An embedded copy: base (k-1 vertices), two apexes, k-2 tail vertices."""

    base: tuple[int, ...]
    apexes: tuple[int, int]
    tail: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(sorted(self.base)))
        object.__setattr__(self, "apexes", tuple(sorted(self.apexes)))
        object.__setattr__(self, "tail", tuple(sorted(self.tail)))

    @property
    def k(self) -> int:
        return len(self.base) + 1

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self.base + self.apexes + self.tail))

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        a, b = self.apexes
        e1 = tuple(sorted(self.base + (a,)))
        e2 = tuple(sorted(self.base + (b,)))
        spine = tuple(sorted(self.apexes + self.tail))
        return (e1, e2, spine)

    @property
    def mask(self) -> int:
        m = 0
        for v in self.base + self.apexes + self.tail:
            m |= 1 << v
        return m

    def sort_key(self):
        return (self.base, self.apexes, self.tail)

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class Tiling:
    """Vertex-disjoint copies in a host graph."""

    copies: tuple[TriangleCopy, ...]
    n: int

    @property
    def covered(self) -> tuple[int, ...]:
        out = []
        for c in self.copies:
            out.extend(c.vertices)
        return tuple(sorted(out))

    @property
    def perfect(self) -> bool:
        cov = self.covered
        return len(cov) == self.n and len(set(cov)) == self.n

    def to_json(self) -> dict:
        return {
            "size": len(self.copies),
            "perfect": self.perfect,
            "copies": [c.to_json() for c in self.copies],
        }


def _canonical_copy(base, apexes, tail, k: int) -> TriangleCopy:
    copy = TriangleCopy(tuple(base), tuple(apexes), tuple(tail))
    if k > 2:
        return copy
    # k=2: the triangle's three edges are interchangeable; fix the least
    # decomposition so dedup works.
    best = None
    verts = copy.vertices
    for a, b in itertools.permutations(verts, 2):
        if a >= b:
            continue
        base_v = tuple(v for v in verts if v not in (a, b))
        cand = (base_v, (a, b), ())
        if best is None or cand < best:
            best = cand
    return TriangleCopy(*best)


def supports_triangle(H: KGraph, S: Iterable[int]) -> Optional[TriangleCopy]:
    """Least copy inside the (2k-1)-set S, or None if H[S] has no copy."""
    s = canonical_vertex_set(S)
    k = H.k
    if len(s) != 2 * k - 1:
        raise InvalidArity(f"need {2 * k - 1} distinct vertices, got {len(s)}")
    best = None
    for base in itertools.combinations(s, k - 1):
        rest = tuple(v for v in s if v not in base)
        for a, b in itertools.combinations(rest, 2):
            if not (H.has_edge(base + (a,)) and H.has_edge(base + (b,))):
                continue
            tail = tuple(v for v in rest if v != a and v != b)
            if H.has_edge((a, b) + tail):
                cand = _canonical_copy(base, (a, b), tail, k)
                if best is None or cand.sort_key() < best.sort_key():
                    best = cand
    return best


def enumerate_copies(
    H: KGraph,
    restrict: Optional[Iterable[int]] = None,
    cap: int = DEFAULT_COPY_CAP,
) -> list[TriangleCopy]:
    """All canonical copies, optionally inside ``restrict``, sorted canonically.

    One representative per unlabelled subgraph copy.  Exceeding ``cap`` raises
    BudgetExceeded carrying the partial count; results are never silently
    truncated.
    """
    if cap <= 0:
        raise ValueError("cap must be positive")
    k = H.k
    allowed = None
    if restrict is not None:
        allowed = set(canonical_vertex_set(restrict))
    out = []
    seen = set() if k == 2 else None
    nbr_of = H.neighborhood
    for base in itertools.combinations(range(H.n), k - 1):
        if allowed is not None and not set(base) <= allowed:
            continue
        nbrs = nbr_of(base)
        if allowed is not None:
            nbrs = tuple(v for v in nbrs if v in allowed)
        if len(nbrs) < 2:
            continue
        base_set = set(base)
        for a, b in itertools.combinations(nbrs, 2):
            for e3 in H.vertex_edges(a):
                if b not in e3:
                    continue
                if base_set & set(e3):
                    continue
                if allowed is not None and not set(e3) <= allowed:
                    continue
                tail = tuple(v for v in e3 if v != a and v != b)
                copy = _canonical_copy(base, (a, b), tail, k)
                if seen is not None:
                    key = copy.sort_key()
                    if key in seen:
                        continue
                    seen.add(key)
                out.append(copy)
                if len(out) > cap:
                    raise BudgetExceeded(
                        f"copy count exceeds cap {cap}", partial_count=len(out)
                    )
    out.sort(key=TriangleCopy.sort_key)
    return out


def supporting_sets(
    H: KGraph,
    restrict: Optional[Iterable[int]] = None,
    cap: int = DEFAULT_COPY_CAP,
) -> list[tuple[tuple[int, ...], TriangleCopy]]:
    """All (2k-1)-sets supporting the pattern, each with its least witness copy.

    Sorted by vertex set.  Fractional weights, packing rows and exact-cover
    rows only ever depend on the vertex set of a copy, so this is the
    deduplicated column/row universe for those solvers.
    """
    k = H.k
    s = 2 * k - 1
    universe = range(H.n) if restrict is None else canonical_vertex_set(restrict)
    if comb(len(tuple(universe)), s) <= _DIRECT_SET_SCAN_LIMIT:
        out = []
        for S in itertools.combinations(universe, s):
            witness = supports_triangle(H, S)
            if witness is not None:
                out.append((S, witness))
                if len(out) > cap:
                    raise BudgetExceeded(
                        f"supporting-set count exceeds cap {cap}",
                        partial_count=len(out),
                    )
        return out
    best: dict[tuple[int, ...], TriangleCopy] = {}
    for copy in enumerate_copies(H, restrict, cap=cap):
        vs = copy.vertices
        cur = best.get(vs)
        if cur is None or copy.sort_key() < cur.sort_key():
            best[vs] = copy
    return sorted(best.items())


_DIRECT_SET_SCAN_LIMIT = 2_000_000


def validate_copy(H: KGraph, copy: TriangleCopy) -> bool:
    """Structural check of a copy against its host (edge-sharing pattern)."""
    k = H.k
    if len(copy.base) != k - 1 or len(copy.tail) != k - 2:
        return False
    verts = copy.base + copy.apexes + copy.tail
    if len(set(verts)) != 2 * k - 1:
        return False
    if min(verts) < 0 or max(verts) >= H.n:
        return False
    e1, e2, spine = copy.edges
    if len({e1, e2, spine}) != 3:
        return False
    if not (H.has_edge(e1) and H.has_edge(e2) and H.has_edge(spine)):
        return False
    if set(e1) & set(e2) != set(copy.base):
        return False
    if set(copy.apexes) - set(spine):
        return False
    if set(copy.base) & set(spine):
        return False
    return True


@dataclass(frozen=True)
class TightPathCount:
    total: int
    rainbow: Optional[int]  # None when no coloring was supplied


def iter_tight_2paths(H: KGraph) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Unordered pairs of distinct edges sharing exactly k-1 vertices."""
    idx: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for e in H.edges:
        for i in range(H.k):
            idx.setdefault(e[:i] + e[i + 1:], []).append(e)
    for s in sorted(idx):
        group = idx[s]
        for e1, e2 in itertools.combinations(group, 2):
            yield (e1, e2)


def count_tight_2paths(H: KGraph, coloring: Optional[dict] = None) -> TightPathCount:
    if coloring is not None:
        dom = {tuple(sorted(e)) for e in coloring}
        if dom != set(H.edges):
            raise InvalidColoring("coloring domain must be exactly the edge set")
        coloring = {tuple(sorted(e)): c for e, c in coloring.items()}
    total = 0
    rainbow = 0 if coloring is not None else None
    idx: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for e in H.edges:
        for i in range(H.k):
            idx.setdefault(e[:i] + e[i + 1:], []).append(e)
    for group in idx.values():
        d = len(group)
        if d < 2:
            continue
        total += d * (d - 1) // 2
        if coloring is not None:
            by_color: dict = {}
            for e in group:
                c = coloring[e]
                by_color[c] = by_color.get(c, 0) + 1
            mono = sum(m * (m - 1) // 2 for m in by_color.values())
            rainbow += d * (d - 1) // 2 - mono
    return TightPathCount(total, rainbow)


def blowup(F: KGraph, t: int) -> KGraph:
    """t-blowup: each vertex becomes a class of size t, each edge the complete
    k-partite k-graph across its classes."""
    if t < 1:
        raise ValueError("t must be at least 1")
    edges = []
    for e in F.edges:
        classes = [range(v * t, v * t + t) for v in e]
        for combo in itertools.product(*classes):
            edges.append(tuple(sorted(combo)))
    return KGraph(F.n * t, F.k, edges)
