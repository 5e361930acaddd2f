"""Finite-n absorption machinery.

Index vectors over a vertex partition, robustness of copy families against
vertex deletion (via exact transversal or packing certificates), integer
lattice membership with reconstructible coefficients, transferrals,
connectors, reachability, absorbers, and the completeness/monochromaticity
predicates used by the merging arguments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Optional, Sequence

from .core import KGraph, canonical_vertex_set, induced
from .errors import (
    BudgetExceeded,
    EmptyGraph,
    InvalidColoring,
    InvalidDimension,
    InvalidEdgeProfile,
    InvalidVertex,
)
from .patterns import DEFAULT_COPY_CAP, supporting_sets, supports_triangle

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class VertexPartition:
    """Ordered partition of 0..n-1 into nonempty blocks; order is identity."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(canonical_vertex_set(b) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        flat = [v for b in blocks for v in b]
        if any(not b for b in blocks):
            raise InvalidVertex("empty block")
        if len(flat) != len(set(flat)):
            raise InvalidVertex("blocks overlap")
        if sorted(flat) != list(range(len(flat))):
            raise InvalidVertex("blocks must cover 0..n-1 exactly")

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def r(self) -> int:
        return len(self.blocks)

    def block_of(self, v: int) -> int:
        for i, b in enumerate(self.blocks):
            if v in b:
                return i
        raise InvalidVertex(f"vertex {v} not covered")


def index_vector(P: VertexPartition, S: Iterable[int]) -> tuple[int, ...]:
    """Blockwise intersection sizes of S."""
    S = canonical_vertex_set(S)
    if S and (S[0] < 0 or S[-1] >= P.n):
        raise InvalidVertex(f"{S} leaves the partition's vertex range")
    out = [0] * P.r
    lookup = {}
    for i, b in enumerate(P.blocks):
        for v in b:
            lookup[v] = i
    for v in S:
        out[lookup[v]] += 1
    return tuple(out)


# -- integer lattice with coefficient tracking --------------------------------


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return (g, y, x - (a // b) * y)


class IntegerLattice:
    """Integer span of generator vectors, kept as a row-echelon basis.

    Every basis row carries its expression in the original generators, so a
    positive membership answer can return reconstructible coefficients.
    """

    def __init__(self, dim: int, generators: Sequence[Sequence[int]] = ()):
        self.dim = dim
        self.generators: list[tuple[int, ...]] = []
        self.rows: list[list[int]] = []  # echelon rows, sorted by pivot column
        self.row_coeffs: list[list[int]] = []  # rows expressed in generators
        for g in generators:
            self.add_generator(g)

    def _pivot(self, row: list[int]) -> int:
        for j, x in enumerate(row):
            if x:
                return j
        return self.dim

    def add_generator(self, vec: Sequence[int]) -> None:
        vec = [int(x) for x in vec]
        if len(vec) != self.dim:
            raise InvalidDimension(f"vector of length {len(vec)}, lattice dim {self.dim}")
        self.generators.append(tuple(vec))
        coeff = [0] * len(self.generators)
        coeff[-1] = 1
        self._insert(vec, coeff)

    def _insert(self, v: list[int], vc: list[int]) -> None:
        # pad stored coefficient rows to the current generator count
        width = len(self.generators)
        for rc in self.row_coeffs:
            rc.extend([0] * (width - len(rc)))
        vc = vc + [0] * (width - len(vc))
        i = 0
        while True:
            j = self._pivot(v)
            if j == self.dim:
                return
            while i < len(self.rows) and self._pivot(self.rows[i]) < j:
                i += 1
            if i == len(self.rows) or self._pivot(self.rows[i]) > j:
                if v[j] < 0:
                    v = [-x for x in v]
                    vc = [-x for x in vc]
                self.rows.insert(i, v)
                self.row_coeffs.insert(i, vc)
                return
            row, rc = self.rows[i], self.row_coeffs[i]
            a, b = row[j], v[j]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
                vc = [x - q * y for x, y in zip(vc, rc)]
            else:
                g, x, y = _ext_gcd(a, b)
                new_row = [x * p + y * q_ for p, q_ in zip(row, v)]
                new_rc = [x * p + y * q_ for p, q_ in zip(rc, vc)]
                v2 = [(a // g) * q_ - (b // g) * p for p, q_ in zip(row, v)]
                vc2 = [(a // g) * q_ - (b // g) * p for p, q_ in zip(rc, vc)]
                self.rows[i] = new_row
                self.row_coeffs[i] = new_rc
                v, vc = v2, vc2

    def express(self, vec: Sequence[int]) -> Optional[list[int]]:
        """Coefficients over the original generators, or None if outside."""
        vec = [int(x) for x in vec]
        if len(vec) != self.dim:
            raise InvalidDimension(f"vector of length {len(vec)}, lattice dim {self.dim}")
        width = len(self.generators)
        acc = [0] * width
        v = list(vec)
        for row, rc in zip(self.rows, self.row_coeffs):
            j = self._pivot(row)
            if v[j] == 0:
                continue
            if v[j] % row[j] != 0:
                return None
            q = v[j] // row[j]
            v = [x - q * y for x, y in zip(v, row)]
            for t in range(width):
                if t < len(rc) and rc[t]:
                    acc[t] += q * rc[t]
        if any(v):
            return None
        return acc

    def __contains__(self, vec) -> bool:
        return self.express(vec) is not None


def lattice_contains(L: IntegerLattice, vec: Sequence[int]) -> bool:
    return vec in L


# -- robust vectors and transferrals ------------------------------------------


@dataclass(frozen=True)
class RobustnessReport:
    vector: tuple[int, ...]
    status: str  # "robust" | "not-robust" | "unknown"
    mode: str  # "exact" | "packing-bound"
    value: int  # exact tau when not robust; certified bound otherwise
    removable: int  # floor(beta n): the W budget the family must survive


def _min_hit_decision(family: list[int], limit: int, budget: int) -> Optional[list[int]]:
    """Hitting set of <= limit vertices over bitmask family, or None."""
    nodes = {"n": 0}

    def rec(fam: list[int], depth: int, chosen: list[int]) -> Optional[list[int]]:
        if not fam:
            return list(chosen)
        if depth == limit:
            return None
        nodes["n"] += 1
        if nodes["n"] > budget:
            raise BudgetExceeded(f"hitting-set search exceeded {budget} nodes")
        first = fam[0]
        v = 0
        m = first
        while m:
            if m & 1:
                rest = [f for f in fam if not f >> v & 1]
                chosen.append(v)
                found = rec(rest, depth + 1, chosen)
                if found is not None:
                    return found
                chosen.pop()
            m >>= 1
            v += 1
        return None

    return rec(family, 0, [])


def _disjoint_packing(family: list[int], want: int, budget: int) -> bool:
    """Exact decision: ``want`` pairwise disjoint members exist."""
    nodes = {"n": 0}

    def rec(start: int, used: int, have: int) -> bool:
        if have == want:
            return True
        nodes["n"] += 1
        if nodes["n"] > budget:
            raise BudgetExceeded(f"packing search exceeded {budget} nodes")
        for i in range(start, len(family)):
            if not family[i] & used:
                if rec(i + 1, used | family[i], have + 1):
                    return True
        return False

    return rec(0, 0, 0)


def robust_vectors(
    H: KGraph,
    P: VertexPartition,
    beta: Fraction,
    *,
    mode: str = "exact",
    cap: int = DEFAULT_COPY_CAP,
    budget: int = 2_000_000,
) -> dict[tuple[int, ...], RobustnessReport]:
    """Robustness of every achieved index vector of copy vertex sets.

    A vector is robust when no set W of at most floor(beta n) vertices meets
    every copy with that vector, i.e. the family's transversal number exceeds
    floor(beta n).  Exact mode decides that by bounded hitting-set search;
    packing-bound mode certifies robustness from floor(beta n)+1 disjoint
    copies and answers unknown otherwise.
    """
    m = int(Fraction(beta) * H.n)
    sets = supporting_sets(H, cap=cap)
    by_vec: dict[tuple[int, ...], list[int]] = {}
    for vs, _ in sets:
        vec = index_vector(P, vs)
        mask = 0
        for v in vs:
            mask |= 1 << v
        by_vec.setdefault(vec, []).append(mask)
    out = {}
    for vec in sorted(by_vec):
        fam = by_vec[vec]
        if mode == "exact":
            try:
                hit = _min_hit_decision(fam, m, budget)
            except BudgetExceeded:
                out[vec] = RobustnessReport(vec, UNKNOWN, mode, 0, m)
                continue
            if hit is None:
                out[vec] = RobustnessReport(vec, "robust", mode, m + 1, m)
            else:
                # shrink to the true transversal number for the report
                tau = len(hit)
                for limit in range(len(hit)):
                    if _min_hit_decision(fam, limit, budget) is not None:
                        tau = limit
                        break
                out[vec] = RobustnessReport(vec, "not-robust", mode, tau, m)
        elif mode == "packing-bound":
            try:
                packed = _disjoint_packing(fam, m + 1, budget)
            except BudgetExceeded:
                out[vec] = RobustnessReport(vec, UNKNOWN, mode, 0, m)
                continue
            if packed:
                out[vec] = RobustnessReport(vec, "robust", mode, m + 1, m)
            else:
                out[vec] = RobustnessReport(vec, UNKNOWN, mode, 0, m)
        else:
            raise ValueError(f"unknown mode {mode!r}")
    return out


@dataclass(frozen=True)
class TransferralReport:
    found: bool
    i: int
    j: int
    combination: Optional[dict]  # robust vector -> integer coefficient
    unknown_vectors: tuple[tuple[int, ...], ...]


def has_transferral(
    H: KGraph,
    P: VertexPartition,
    beta: Fraction,
    i: int,
    j: int,
    *,
    mode: str = "exact",
    cap: int = DEFAULT_COPY_CAP,
) -> TransferralReport:
    """Is u_i - u_j in the lattice spanned by the robust index vectors?"""
    if i == j or not (0 <= i < P.r and 0 <= j < P.r):
        raise InvalidDimension(f"invalid block indices {i}, {j}")
    reports = robust_vectors(H, P, beta, mode=mode, cap=cap)
    robust = [v for v, rep in sorted(reports.items()) if rep.status == "robust"]
    unknown = tuple(v for v, rep in sorted(reports.items()) if rep.status == UNKNOWN)
    L = IntegerLattice(P.r, robust)
    target = [0] * P.r
    target[i] = 1
    target[j] = -1
    coeffs = L.express(target)
    if coeffs is None:
        return TransferralReport(False, i, j, None, unknown)
    combo = {g: c for g, c in zip(robust, coeffs) if c}
    return TransferralReport(True, i, j, combo, unknown)


# -- connectors, reachability, absorbers --------------------------------------


def perfectly_tilable(H: KGraph, vertices: Sequence[int], budget: int = 200_000) -> bool:
    """Does H restricted to ``vertices`` admit a perfect tiling?"""
    from .exact import perfect_tiling  # deferred: exact imports fractional

    vs = canonical_vertex_set(vertices)
    s = 2 * H.k - 1
    if len(vs) % s != 0:
        return False
    if len(vs) == 0:
        return True
    if len(vs) == s:
        return supports_triangle(H, vs) is not None
    sub, _ = induced(H, vs)
    return perfect_tiling(sub, budget=budget, use_lp=False) is not None


def find_connector(
    H: KGraph,
    u: int,
    v: int,
    *,
    t: int = 1,
    forbidden: Iterable[int] = (),
    budget: int = 500_000,
) -> Optional[tuple[int, ...]]:
    """Smallest-first search for a set S with both S+{u} and S+{v} perfectly
    tilable; |S| <= (2k-1)t - 1 and S avoids ``forbidden``."""
    if u == v:
        raise InvalidVertex("connector endpoints must differ")
    s = 2 * H.k - 1
    blocked = set(forbidden) | {u, v}
    pool = [w for w in range(H.n) if w not in blocked]
    tried = 0
    for q in range(1, t + 1):
        size = q * s - 1
        if size > len(pool):
            break
        for S in itertools.combinations(pool, size):
            tried += 1
            if tried > budget:
                raise BudgetExceeded(f"connector search exceeded {budget} candidates")
            if perfectly_tilable(H, S + (u,)) and perfectly_tilable(H, S + (v,)):
                return S
    return None


def reachable(
    H: KGraph,
    u: int,
    v: int,
    m: int,
    *,
    t: int = 1,
    mode: str = "certificate",
    budget: int = 500_000,
) -> str:
    """Can u and v be connected while avoiding any m vertices?

    Certificate mode finds m+1 pairwise disjoint connectors (sound, may answer
    unknown).  Exact mode enumerates the whole connector family and decides
    whether some m vertices meet it entirely (small hosts only).
    """
    if m < 0:
        raise InvalidDimension("m must be nonnegative")
    if mode == "certificate":
        used: set[int] = set()
        found = 0
        while found < m + 1:
            try:
                S = find_connector(H, u, v, t=t, forbidden=used, budget=budget)
            except BudgetExceeded:
                return UNKNOWN
            if S is None:
                return UNKNOWN
            used.update(S)
            found += 1
        return YES
    if mode == "exact":
        s = 2 * H.k - 1
        pool = [w for w in range(H.n) if w not in (u, v)]
        family = []
        tried = 0
        for q in range(1, t + 1):
            size = q * s - 1
            if size > len(pool):
                break
            for S in itertools.combinations(pool, size):
                tried += 1
                if tried > budget:
                    return UNKNOWN
                if perfectly_tilable(H, S + (u,)) and perfectly_tilable(H, S + (v,)):
                    mask = 0
                    for w in S:
                        mask |= 1 << w
                    family.append(mask)
        if not family:
            return NO
        try:
            hit = _min_hit_decision(family, m, budget)
        except BudgetExceeded:
            return UNKNOWN
        return NO if hit is not None else YES
    raise ValueError(f"unknown mode {mode!r}")


def is_closed(
    H: KGraph,
    U: Sequence[int],
    m: int,
    *,
    t: int = 1,
    mode: str = "certificate",
    budget: int = 500_000,
) -> tuple[str, Optional[tuple[int, int]]]:
    """Pairwise reachability over U; returns the verdict and the first
    failing (or first unknown) pair."""
    U = canonical_vertex_set(U)
    first_unknown = None
    for u, v in itertools.combinations(U, 2):
        verdict = reachable(H, u, v, m, t=t, mode=mode, budget=budget)
        if verdict == NO:
            return NO, (u, v)
        if verdict == UNKNOWN and first_unknown is None:
            first_unknown = (u, v)
    if first_unknown is not None:
        return UNKNOWN, first_unknown
    return YES, None


def find_absorber(
    H: KGraph,
    S: Sequence[int],
    *,
    t: int = 1,
    forbidden: Iterable[int] = (),
    budget: int = 500_000,
) -> Optional[tuple[int, ...]]:
    """Smallest-first search for A with H[A] and H[A+S] perfectly tilable,
    |A| <= (2k-1)^2 t, A disjoint from S and ``forbidden``."""
    s = 2 * H.k - 1
    S = canonical_vertex_set(S)
    if len(S) != s:
        raise InvalidVertex(f"absorber target must have {s} vertices")
    blocked = set(forbidden) | set(S)
    pool = [w for w in range(H.n) if w not in blocked]
    tried = 0
    max_q = (s * s * t) // s
    for q in range(1, max_q + 1):
        size = q * s
        if size > len(pool):
            break
        for A in itertools.combinations(pool, size):
            tried += 1
            if tried > budget:
                raise BudgetExceeded(f"absorber search exceeded {budget} candidates")
            if perfectly_tilable(H, A) and perfectly_tilable(H, A + S):
                return A
    return None


# -- density and coloring predicates -------------------------------------------


def x_density(H: KGraph, P: VertexPartition, x: Sequence[int]) -> Fraction:
    """e(H) over the number of sets with blockwise profile x; requires every
    edge to carry exactly that profile."""
    x = tuple(int(a) for a in x)
    if len(x) != P.r:
        raise InvalidDimension(f"profile length {len(x)} != {P.r} blocks")
    denom = 1
    for b, xi in zip(P.blocks, x):
        denom *= comb(len(b), xi)
    if denom == 0:
        raise InvalidEdgeProfile(f"profile {x} does not fit the block sizes")
    for e in H.edges:
        if index_vector(P, e) != x:
            raise InvalidEdgeProfile(f"edge {e} has profile {index_vector(P, e)}")
    return Fraction(H.edge_count(), denom)


def is_complete(H: KGraph, P: VertexPartition, x: Sequence[int], eps: Fraction) -> bool:
    return x_density(H, P, x) >= 1 - Fraction(eps)


def monochromatic_fraction(H: KGraph, coloring: dict) -> tuple[int, Fraction]:
    """Best color and its share of the edges."""
    if H.edge_count() == 0:
        raise EmptyGraph("no edges to color")
    canon = {tuple(sorted(e)): c for e, c in coloring.items()}
    if set(canon) != set(H.edges):
        raise InvalidColoring("coloring domain must be exactly the edge set")
    counts: dict = {}
    for e in H.edges:
        c = canon[e]
        counts[c] = counts.get(c, 0) + 1
    best = min(sorted(counts), key=lambda c: (-counts[c], c))
    return best, Fraction(counts[best], H.edge_count())


def is_zeta_monochromatic(H: KGraph, coloring: dict, zeta: Fraction) -> bool:
    _, frac = monochromatic_fraction(H, coloring)
    return frac >= 1 - Fraction(zeta)
