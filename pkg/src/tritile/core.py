"""k-uniform hypergraphs with exact codegree, density and extremality primitives.

All arithmetic on densities and thresholds is exact (`fractions.Fraction`);
floating point never decides a verdict.  A KGraph is immutable after
construction and safe to share between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .errors import (
    FormatError,
    InvalidArity,
    InvalidUniformity,
    InvalidVertex,
    TooFewVertices,
    BudgetExceeded,
)


def canonical_vertex_set(vertices: Iterable[int]) -> tuple[int, ...]:
    """Sorted, duplicate-free tuple of vertex ids."""
    vs = tuple(sorted(set(vertices)))
    return vs


class KGraph:
    """Immutable k-uniform hypergraph on vertices 0..n-1.

    Edges are stored as sorted tuples, deduplicated, iterated in
    lexicographic order, so every scan over a KGraph is reproducible.
    """

    __slots__ = ("n", "k", "_edges", "_edge_set", "_nbr", "_vertex_edges")

    def __init__(self, n: int, k: int, edges: Iterable[Sequence[int]]):
        if k < 2:
            raise InvalidUniformity(f"uniformity k={k} must be at least 2")
        if n < 0:
            raise InvalidVertex(f"vertex count n={n} must be nonnegative")
        canon = set()
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != k or len(set(t)) != k:
                raise InvalidArity(f"edge {t} does not have {k} distinct vertices")
            if t[0] < 0 or t[-1] >= n:
                raise InvalidVertex(f"edge {t} leaves the vertex range 0..{n - 1}")
            canon.add(t)
        self.n = n
        self.k = k
        self._edges = tuple(sorted(canon))
        self._edge_set = frozenset(self._edges)
        self._nbr = None
        self._vertex_edges = None

    @property
    def edges(self) -> tuple[tuple[int, ...], ...]:
        return self._edges

    def edge_count(self) -> int:
        return len(self._edges)

    def has_edge(self, e: Iterable[int]) -> bool:
        return tuple(sorted(e)) in self._edge_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, KGraph)
            and self.n == other.n
            and self.k == other.k
            and self._edge_set == other._edge_set
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self._edge_set))

    def __repr__(self) -> str:
        return f"KGraph(n={self.n}, k={self.k}, edges={len(self._edges)})"

    # -- codegree ---------------------------------------------------------

    def _neighborhood_index(self) -> dict:
        # Lazy (k-1)-set -> neighborhood cache; codegree scans dominate
        # runtime, so build it once from the edge list.
        if self._nbr is None:
            idx: dict[tuple[int, ...], list[int]] = {}
            for e in self._edges:
                for i in range(self.k):
                    s = e[:i] + e[i + 1:]
                    idx.setdefault(s, []).append(e[i])
            self._nbr = {s: tuple(sorted(vs)) for s, vs in idx.items()}
        return self._nbr

    def _check_coset(self, S: Iterable[int]) -> tuple[int, ...]:
        s = tuple(sorted(S))
        if len(s) != self.k - 1 or len(set(s)) != self.k - 1:
            raise InvalidArity(f"{s} is not a set of {self.k - 1} distinct vertices")
        if s and (s[0] < 0 or s[-1] >= self.n):
            raise InvalidVertex(f"{s} leaves the vertex range 0..{self.n - 1}")
        return s

    def neighborhood(self, S: Iterable[int]) -> tuple[int, ...]:
        """Vertices v with S + {v} an edge, for a (k-1)-set S."""
        s = self._check_coset(S)
        return self._neighborhood_index().get(s, ())

    def codegree(self, S: Iterable[int]) -> int:
        return len(self.neighborhood(S))

    def vertex_edges(self, v: int) -> tuple[tuple[int, ...], ...]:
        """All edges containing v."""
        if not 0 <= v < self.n:
            raise InvalidVertex(f"vertex {v} out of range")
        if self._vertex_edges is None:
            by_vertex: list[list] = [[] for _ in range(self.n)]
            for e in self._edges:
                for v_ in e:
                    by_vertex[v_].append(e)
            self._vertex_edges = tuple(tuple(lst) for lst in by_vertex)
        return self._vertex_edges[v]


def min_codegree(H: KGraph) -> tuple[int, tuple[int, ...]]:
    """Minimum codegree and its lexicographically least witness (k-1)-set."""
    if H.n < H.k - 1:
        raise TooFewVertices(f"need at least {H.k - 1} vertices, have {H.n}")
    best = None
    witness = None
    for s in itertools.combinations(range(H.n), H.k - 1):
        d = H.codegree(s)
        if best is None or d < best:
            best, witness = d, s
            if best == 0:
                break
    return best, witness


def density(H: KGraph) -> Fraction:
    """Exact edge density e(H) / C(n, k)."""
    if H.n < H.k:
        raise TooFewVertices(f"density needs n >= k, have n={H.n}, k={H.k}")
    return Fraction(H.edge_count(), comb(H.n, H.k))


def induced(H: KGraph, S: Iterable[int]) -> tuple[KGraph, dict[int, int]]:
    """Subgraph induced by S, relabelled 0..|S|-1 preserving order.

    Returns the relabelled graph and the old-vertex -> new-vertex map.
    """
    s = canonical_vertex_set(S)
    if s and (s[0] < 0 or s[-1] >= H.n):
        raise InvalidVertex(f"{s} leaves the vertex range 0..{H.n - 1}")
    relabel = {v: i for i, v in enumerate(s)}
    members = set(s)
    edges = [
        tuple(relabel[v] for v in e)
        for e in H.edges
        if all(v in members for v in e)
    ]
    return KGraph(len(s), H.k, edges), relabel


def induced_edge_count(H: KGraph, S: Iterable[int]) -> int:
    members = set(S)
    return sum(1 for e in H.edges if all(v in members for v in e))


def extremal_witness_size(n: int, k: int) -> int:
    """Target witness size floor((2k-3) n / (2k-1))."""
    return ((2 * k - 3) * n) // (2 * k - 1)


@dataclass(frozen=True)
class ExtremalityVerdict:
    extremal: bool
    witness: Optional[tuple[int, ...]]
    mode: str  # "exact" or "heuristic"; heuristic is sound for "true" only
    size: int


def is_gamma_extremal(
    H: KGraph,
    gamma: Fraction,
    *,
    size: Optional[int] = None,
    mode: str = "exact",
    budget: int = 5_000_000,
) -> ExtremalityVerdict:
    """Decide whether some induced subgraph on the target size has density <= gamma.

    Exact mode enumerates all candidate subsets (guarded by ``budget``
    subsets); heuristic mode peels maximum-degree vertices greedily and is
    sound only when it answers True.
    """
    gamma = Fraction(gamma)
    target = extremal_witness_size(H.n, H.k) if size is None else size
    if target > H.n:
        raise TooFewVertices(f"witness size {target} exceeds n={H.n}")
    if target < H.k:
        # No edges fit inside the witness, so its density vanishes.
        return ExtremalityVerdict(True, tuple(range(target)), mode, target)
    denom = comb(target, H.k)
    # d(H[S]) <= gamma  <=>  e(H[S]) * 1 <= gamma * C(target, k)
    max_edges = gamma * denom

    if mode == "exact":
        total = comb(H.n, target)
        if total > budget:
            raise BudgetExceeded(
                f"{total} candidate subsets exceed budget {budget}",
                partial_count=0,
            )
        edge_masks = [_mask(e) for e in H.edges]
        for S in itertools.combinations(range(H.n), target):
            smask = _mask(S)
            count = 0
            ok = True
            for em in edge_masks:
                if em & smask == em:
                    count += 1
                    if count > max_edges:
                        ok = False
                        break
            if ok and count <= max_edges:
                return ExtremalityVerdict(True, S, "exact", target)
        return ExtremalityVerdict(False, None, "exact", target)

    if mode == "heuristic":
        alive = set(range(H.n))
        edges = [set(e) for e in H.edges]
        while len(alive) > target:
            deg = {v: 0 for v in alive}
            for e in edges:
                if e <= alive:
                    for v in e:
                        deg[v] += 1
            # peel the busiest vertex; ties break on the lowest id
            v_star = max(sorted(alive), key=lambda v: deg[v])
            alive.discard(v_star)
        S = tuple(sorted(alive))
        count = sum(1 for e in edges if e <= alive)
        if count <= max_edges:
            return ExtremalityVerdict(True, S, "heuristic", target)
        return ExtremalityVerdict(False, None, "heuristic", target)

    raise ValueError(f"unknown mode {mode!r}")


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# -- text instance format -------------------------------------------------
#
#   p kgraph <n> <k>
#   c free-form comment
#   e v1 ... vk        (0-based, ascending)
#
# Trailing newline required; duplicate edges rejected.


def format_kgraph(H: KGraph, comments: Sequence[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p kgraph {H.n} {H.k}")
    for e in H.edges:
        lines.append("e " + " ".join(str(v) for v in e))
    return "\n".join(lines) + "\n"


def parse_kgraph(text: str) -> KGraph:
    if not text.endswith("\n"):
        raise FormatError("missing trailing newline")
    n = k = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise FormatError(f"line {lineno}: duplicate problem line")
            if len(parts) != 4 or parts[1] != "kgraph":
                raise FormatError(f"line {lineno}: malformed problem line")
            n, k = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if n is None:
                raise FormatError(f"line {lineno}: edge before problem line")
            try:
                vs = tuple(int(x) for x in parts[1:])
            except ValueError as exc:
                raise FormatError(f"line {lineno}: non-integer vertex") from exc
            if list(vs) != sorted(set(vs)):
                raise FormatError(f"line {lineno}: vertices not strictly ascending")
            if vs in seen:
                raise FormatError(f"line {lineno}: duplicate edge {vs}")
            seen.add(vs)
            edges.append(vs)
        else:
            raise FormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise FormatError("no problem line")
    try:
        return KGraph(n, k, edges)
    except (InvalidArity, InvalidVertex, InvalidUniformity) as exc:
        raise FormatError(str(exc)) from exc


def load_kgraph(path) -> KGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_kgraph(fh.read())


def save_kgraph(H: KGraph, path, comments: Sequence[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_kgraph(H, comments))


def complete_kgraph(n: int, k: int) -> KGraph:
    return KGraph(n, k, itertools.combinations(range(n), k))
