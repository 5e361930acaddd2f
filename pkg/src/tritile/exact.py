"""Exact integral solvers.

Perfect tilings by exact cover over supporting sets, maximum tilings by
branch and bound with an exact fractional upper bound, k-partite perfect
matchings, the good/bad classification, the auxiliary (2k-1)-graph, and the
constructive extremal-case pipeline, all decided with exact arithmetic so a
failure is a genuine counterexample and never numeric noise.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .core import KGraph, canonical_vertex_set
from .errors import (
    BudgetExceeded,
    DivisibilityError,
    InvalidPartiteStructure,
)
from .fractional import (
    FarkasCertificate,
    packing_lp_value,
    perfect_fractional_tiling,
)
from .patterns import (
    DEFAULT_COPY_CAP,
    Tiling,
    TriangleCopy,
    supporting_sets,
    supports_triangle,
)

DEFAULT_NODE_BUDGET = 2_000_000


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# -- exact cover engine ------------------------------------------------------


class _CoverSearch:
    """Exact cover of a vertex universe by disjoint rows.

    Deterministic: the branching vertex is the uncovered one with the fewest
    live rows (ties to the lowest id), rows are tried in their given
    canonical order.  Node budget guards runaway instances.
    """

    def __init__(self, universe: Sequence[int], row_masks: Sequence[int], budget: int):
        self.universe = tuple(universe)
        self.row_masks = row_masks
        self.budget = budget
        self.nodes = 0
        self.by_vertex: dict[int, list[int]] = {v: [] for v in self.universe}
        member = set(self.universe)
        for idx, rm in enumerate(row_masks):
            vs = _mask_vertices(rm)
            if not all(v in member for v in vs):
                continue
            for v in vs:
                self.by_vertex[v].append(idx)
        self.full = _mask(self.universe)

    def run(self) -> Optional[list[int]]:
        return self._search(0, [])

    def _search(self, covered: int, chosen: list[int]) -> Optional[list[int]]:
        if covered == self.full:
            return list(chosen)
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"cover search exceeded {self.budget} nodes")
        best: Optional[list[int]] = None
        for v in self.universe:
            if covered >> v & 1:
                continue
            live = [r for r in self.by_vertex[v] if not self.row_masks[r] & covered]
            if best is None or len(live) < len(best):
                best = live
                if not live:
                    return None
        for r in best:
            chosen.append(r)
            found = self._search(covered | self.row_masks[r], chosen)
            if found is not None:
                return found
            chosen.pop()
        return None


def _mask_vertices(m: int) -> list[int]:
    out = []
    v = 0
    while m:
        if m & 1:
            out.append(v)
        m >>= 1
        v += 1
    return out


# -- tilings -------------------------------------------------------------------


def perfect_tiling(
    H: KGraph,
    *,
    budget: int = DEFAULT_NODE_BUDGET,
    cap: int = DEFAULT_COPY_CAP,
    use_lp: bool = True,
) -> Optional[Tiling]:
    """Perfect tiling of H, or None with the non-existence fully decided.

    Divisibility is checked first; then (by default) the fractional
    relaxation, whose Farkas certificate already rules out an integral
    tiling; the remaining cases are decided by exact cover over supporting
    sets.  A blown budget raises, it never reports "none".
    """
    s = 2 * H.k - 1
    if H.n % s != 0:
        return None
    if H.n == 0:
        return Tiling((), 0)
    sets = supporting_sets(H, cap=cap)
    if not sets:
        return None
    if use_lp:
        verdict = perfect_fractional_tiling(H, sets=sets)
        if isinstance(verdict, FarkasCertificate):
            return None
    masks = [_mask(vs) for vs, _ in sets]
    search = _CoverSearch(range(H.n), masks, budget)
    rows = search.run()
    if rows is None:
        return None
    return Tiling(tuple(sets[r][1] for r in rows), H.n)


def max_tiling(
    H: KGraph,
    *,
    budget: int = DEFAULT_NODE_BUDGET,
    cap: int = DEFAULT_COPY_CAP,
) -> tuple[int, Tiling]:
    """Maximum number of disjoint copies with a witness.

    Branch and bound on the lowest undecided vertex; the exact LP optimum of
    the packing relaxation caps the search from above, greedy packings seed
    it from below.  On budget exhaustion raises BudgetExceeded carrying the
    certified [lower, upper] bounds.
    """
    s = 2 * H.k - 1
    sets = supporting_sets(H, cap=cap)
    if not sets:
        return 0, Tiling((), H.n)
    lp_value, lp_tiling = packing_lp_value(H, sets=sets)
    hi = int(lp_value)  # floor: weak duality bound for integral packings
    masks = [_mask(vs) for vs, _ in sets]

    def greedy(order: Sequence[int]) -> list[int]:
        covered = 0
        out = []
        for r in order:
            if not masks[r] & covered:
                out.append(r)
                covered |= masks[r]
        return out

    best = greedy(range(len(sets)))
    support = {vs: w for c, w in lp_tiling.weights.items() for vs in (c.vertices,)}
    weighted = sorted(
        range(len(sets)),
        key=lambda r: (-support.get(sets[r][0], Fraction(0)), sets[r][0]),
    )
    alt = greedy(weighted)
    if len(alt) > len(best):
        best = alt
    best_rows = sorted(best)
    lo = len(best_rows)

    if lo < hi:
        nodes = 0
        n = H.n
        by_vertex: dict[int, list[int]] = {v: [] for v in range(n)}
        for idx, rm in enumerate(masks):
            for v in _mask_vertices(rm):
                by_vertex[v].append(idx)

        state = {"best": best_rows, "lo": lo, "nodes": 0}

        def undecided_count(decided: int) -> int:
            return n - bin(decided).count("1")

        def bnb(decided: int, chosen: list[int], skipped: int):
            if state["lo"] >= hi:
                return
            state["nodes"] += 1
            if state["nodes"] > budget:
                raise BudgetExceeded(
                    f"packing search exceeded {budget} nodes",
                    lower=state["lo"],
                    upper=hi,
                )
            if len(chosen) > state["lo"]:
                state["lo"] = len(chosen)
                state["best"] = sorted(chosen)
            if len(chosen) + undecided_count(decided) // s <= state["lo"]:
                return
            v = 0
            while decided >> v & 1:
                v += 1
            for r in by_vertex[v]:
                if not masks[r] & decided:
                    chosen.append(r)
                    bnb(decided | masks[r], chosen, skipped)
                    chosen.pop()
                    if state["lo"] >= hi:
                        return
            bnb(decided | (1 << v), chosen, skipped + 1)

        bnb(0, [], 0)
        best_rows = state["best"]
        lo = state["lo"]

    witness = Tiling(tuple(sets[r][1] for r in best_rows), H.n)
    return lo, witness


# -- k-partite matchings and degree conditions ---------------------------------


def _check_partite(J: KGraph, classes: Sequence[Sequence[int]]):
    blocks = [canonical_vertex_set(c) for c in classes]
    flat = [v for b in blocks for v in b]
    if len(flat) != len(set(flat)):
        raise InvalidPartiteStructure("classes overlap")
    if len(blocks) != J.k:
        raise InvalidPartiteStructure(
            f"{len(blocks)} classes for a {J.k}-uniform graph"
        )
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise InvalidPartiteStructure(f"class sizes differ: {sorted(sizes)}")
    where = {}
    for i, b in enumerate(blocks):
        for v in b:
            where[v] = i
    for e in J.edges:
        idxs = [where.get(v) for v in e]
        if None in idxs or len(set(idxs)) != J.k:
            raise InvalidPartiteStructure(f"edge {e} is not transversal")
    return blocks


def kpartite_perfect_matching(
    J: KGraph,
    classes: Sequence[Sequence[int]],
    *,
    budget: int = DEFAULT_NODE_BUDGET,
) -> Optional[list[tuple[int, ...]]]:
    """Exact perfect-matching decision in a balanced k-partite k-graph."""
    blocks = _check_partite(J, classes)
    universe = sorted(v for b in blocks for v in b)
    masks = [_mask(e) for e in J.edges]
    search = _CoverSearch(universe, masks, budget)
    rows = search.run()
    if rows is None:
        return None
    return [J.edges[r] for r in rows]


@dataclass(frozen=True)
class DegreeReport:
    satisfied: bool
    worst_vertex: int
    worst_degree: int
    threshold: Fraction


def dh_condition(J: KGraph, classes: Sequence[Sequence[int]]) -> DegreeReport:
    """Per-vertex degree >= (k-1) m^(k-1) / k in a balanced k-partite k-graph."""
    blocks = _check_partite(J, classes)
    m = len(blocks[0])
    k = J.k
    threshold = Fraction((k - 1) * m ** (k - 1), k)
    worst_v, worst_d = None, None
    for v in sorted(v for b in blocks for v in b):
        d = len(J.vertex_edges(v))
        if worst_d is None or d < worst_d:
            worst_v, worst_d = v, d
    return DegreeReport(worst_d >= threshold, worst_v, worst_d, threshold)


def corollary_thresholds(k: int, n: int, beta: Fraction) -> tuple[Fraction, Fraction]:
    """Edge and per-vertex thresholds for the dense-auxiliary-graph matching:
    e(J) >= (1-beta) C((2k-3)n, 2k-3) C(2n, 2) and
    d(v) >= n^(2k-2) / (2k-1)^((k+1)^2)."""
    beta = Fraction(beta)
    edge_thr = (1 - beta) * comb((2 * k - 3) * n, 2 * k - 3) * comb(2 * n, 2)
    vertex_thr = Fraction(n ** (2 * k - 2), (2 * k - 1) ** ((k + 1) ** 2))
    return edge_thr, vertex_thr


@dataclass(frozen=True)
class CorollaryReport:
    satisfied: bool
    edge_count: int
    edge_threshold: Fraction
    worst_vertex: int
    worst_degree: int
    vertex_threshold: Fraction


def corollary_check(
    J: KGraph, A: Sequence[int], B: Sequence[int], beta: Fraction
) -> CorollaryReport:
    """Check the (C1)/(C2) thresholds for a (2k-1)-graph J on A + B with
    |A| = (2k-3) n', |B| = 2 n'."""
    A = canonical_vertex_set(A)
    B = canonical_vertex_set(B)
    if J.k % 2 == 0 or J.k < 3:
        raise InvalidPartiteStructure(f"auxiliary graph must be (2k-1)-uniform, got {J.k}")
    k = (J.k + 1) // 2
    if len(B) % 2 != 0 or len(A) * 2 != (2 * k - 3) * len(B):
        raise InvalidPartiteStructure(
            f"|A|={len(A)}, |B|={len(B)} violates the (2k-3):2 split"
        )
    n_unit = len(B) // 2
    edge_thr, vertex_thr = corollary_thresholds(k, n_unit, beta)
    worst_v, worst_d = None, None
    for v in A + B:
        d = len(J.vertex_edges(v))
        if worst_d is None or d < worst_d:
            worst_v, worst_d = v, d
    ok = J.edge_count() >= edge_thr and worst_d >= vertex_thr
    return CorollaryReport(ok, J.edge_count(), edge_thr, worst_v, worst_d, vertex_thr)


# -- good/bad classification and the auxiliary graph ---------------------------


@dataclass(frozen=True)
class GoodBadSplit:
    good: tuple[tuple[int, ...], ...]
    bad: tuple[tuple[int, ...], ...]
    bad_bound_ok: bool  # #bad <= sqrt(gamma) n^(k-1)


def classify_good_bad(H: KGraph, S: Sequence[int], gamma: Fraction) -> GoodBadSplit:
    """Split the (k-1)-subsets of S: bad when |N(Q) and S| > sqrt(gamma) n.

    The square-root comparison is exact: count > sqrt(g) n iff count^2 > g n^2.
    """
    gamma = Fraction(gamma)
    S = canonical_vertex_set(S)
    members = set(S)
    n = H.n
    good, bad = [], []
    for Q in itertools.combinations(S, H.k - 1):
        inside = sum(1 for v in H.neighborhood(Q) if v in members)
        if inside * inside > gamma * n * n:
            bad.append(Q)
        else:
            good.append(Q)
    bound_ok = Fraction(len(bad)) ** 2 <= gamma * Fraction(n) ** (2 * (H.k - 1))
    return GoodBadSplit(tuple(good), tuple(bad), bound_ok)


@dataclass(frozen=True)
class AuxiliaryGraph:
    graph: KGraph  # (2k-1)-uniform on the host's vertex ids
    A: tuple[int, ...]
    B: tuple[int, ...]
    copy_map: dict  # edge tuple -> witness TriangleCopy

    def to_json(self) -> dict:
        return {
            "edges": [list(e) for e in self.graph.edges],
            "A": list(self.A),
            "B": list(self.B),
        }


def build_auxiliary_graph(
    H: KGraph,
    A: Sequence[int],
    B: Sequence[int],
    *,
    cap: int = DEFAULT_COPY_CAP,
) -> AuxiliaryGraph:
    """All (2k-1)-sets with 2k-3 vertices in A and 2 in B supporting the
    pattern, each with one stored witness copy."""
    A = canonical_vertex_set(A)
    B = canonical_vertex_set(B)
    k = H.k
    total = comb(len(A), 2 * k - 3) * comb(len(B), 2)
    if total > cap:
        raise BudgetExceeded(
            f"{total} candidate sets exceed cap {cap}", partial_count=0
        )
    edges = []
    copy_map = {}
    for part_a in itertools.combinations(A, 2 * k - 3):
        for part_b in itertools.combinations(B, 2):
            S = tuple(sorted(part_a + part_b))
            witness = supports_triangle(H, S)
            if witness is not None:
                edges.append(S)
                copy_map[S] = witness
    return AuxiliaryGraph(KGraph(H.n, 2 * k - 1, edges), A, B, copy_map)


# -- the extremal-case pipeline -------------------------------------------------


@dataclass(frozen=True)
class StageReport:
    stage: str  # witness | good-bad | X | matching-M | Tk-for-X | build-J | DH-check | J-matching
    status: str  # "ok" | "failed"
    detail: str = ""

    def to_json(self) -> dict:
        return {"stage": self.stage, "status": self.status, "detail": self.detail}


@dataclass
class PipelineResult:
    tiling: Optional[Tiling]
    stages: list[StageReport] = field(default_factory=list)

    @property
    def succeeded(self) -> bool:
        return self.tiling is not None

    def to_json(self) -> dict:
        return {
            "succeeded": self.succeeded,
            "stages": [s.to_json() for s in self.stages],
            "tiling": self.tiling.to_json() if self.tiling else None,
        }


class _RootBound:
    """Compare counts against gamma^(1/power) * scale without leaving Q."""

    def __init__(self, gamma: Fraction, power: int, explicit: Optional[Fraction]):
        self.gamma = Fraction(gamma)
        self.power = power
        self.explicit = None if explicit is None else Fraction(explicit)

    def count_at_least(self, count: int, scale) -> bool:
        if self.explicit is not None:
            return count >= self.explicit * scale
        return Fraction(count) ** self.power >= self.gamma * Fraction(scale) ** self.power

    def deficit_at_most(self, deficit, scale) -> bool:
        """deficit <= gamma^(1/power) * scale (used for (1-beta) edge counts)."""
        if deficit < 0:
            return True
        if self.explicit is not None:
            return deficit <= self.explicit * scale
        return Fraction(deficit) ** self.power <= self.gamma * Fraction(scale) ** self.power


def extremal_pipeline(
    H: KGraph,
    gamma: Fraction,
    *,
    witness: Optional[Sequence[int]] = None,
    gamma_prime: Optional[Fraction] = None,
    beta: Optional[Fraction] = None,
    budget: int = DEFAULT_NODE_BUDGET,
    witness_budget: int = 5_000_000,
) -> PipelineResult:
    """Constructive tiling pipeline for near-extremal hosts, run at finite n.

    Follows the constructive argument stage by stage with exact arithmetic:
    good/bad split of the witness, the sparse-attachment set X, a matching
    covering X through good sets, one copy per matched edge, the auxiliary
    graph on the residual split, its density thresholds, and a perfect
    matching in it.  Any stage may fail honestly on small hosts; the report
    says which one.  Defaults: gamma' = gamma^(1/4), beta = gamma^(1/8),
    both handled by power comparisons so verdicts stay exact.
    """
    from .core import is_gamma_extremal  # local import to avoid cycle at module load

    gamma = Fraction(gamma)
    k = H.k
    n = H.n
    s = 2 * k - 1
    stages: list[StageReport] = []
    result = PipelineResult(None, stages)

    def fail(stage: str, detail: str) -> PipelineResult:
        stages.append(StageReport(stage, "failed", detail))
        return result

    def ok(stage: str, detail: str = "") -> None:
        stages.append(StageReport(stage, "ok", detail))

    if n % s != 0:
        raise DivisibilityError(f"n={n} not divisible by {s}")

    gamma_quarter = _RootBound(gamma, 4, gamma_prime)
    gamma_eighth = _RootBound(gamma, 8, beta)

    # witness
    if witness is None:
        verdict = is_gamma_extremal(H, gamma, budget=witness_budget)
        if not verdict.extremal:
            return fail("witness", f"host is not {gamma}-extremal at the target size")
        S = verdict.witness
    else:
        S = canonical_vertex_set(witness)
    target = ((2 * k - 3) * n) // s
    if len(S) != target:
        return fail("witness", f"witness size {len(S)} != {target}")
    ok("witness", f"|S|={len(S)}")

    # good-bad
    split = classify_good_bad(H, S, gamma)
    good_set = set(split.good)
    ok("good-bad", f"good={len(split.good)} bad={len(split.bad)}")

    # X: vertices outside S in few transversal edges
    S_members = set(S)
    x_threshold = Fraction(n ** (k - 1), s ** k)
    X = []
    for v in sorted(set(range(n)) - S_members):
        cnt = sum(
            1
            for e in H.vertex_edges(v)
            if sum(1 for u in e if u in S_members) == k - 1 and v not in S_members
        )
        if cnt < x_threshold:
            X.append(v)
    X = tuple(X)
    A = tuple(sorted(S + X))
    B = tuple(sorted(set(range(n)) - set(A)))
    ok("X", f"|X|={len(X)} |A|={len(A)} |B|={len(B)}")

    # matching M in H[A], every edge containing a good (k-1)-set
    a_members = set(A)
    m_candidates = []
    for e in H.edges:
        if not set(e) <= a_members:
            continue
        goods = [q for q in itertools.combinations(e, k - 1) if q in good_set]
        if goods:
            m_candidates.append((e, goods[0]))  # least good set: combinations are sorted
    matching: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    used_m = 0

    def extend_matching(start: int, used: int) -> bool:
        if len(matching) == len(X):
            return True
        for idx in range(start, len(m_candidates)):
            e, q = m_candidates[idx]
            em = _mask(e)
            if em & used:
                continue
            matching.append((e, q))
            if extend_matching(idx + 1, used | em):
                return True
            matching.pop()
        return False

    if not extend_matching(0, used_m):
        return fail(
            "matching-M",
            f"no matching of size |X|={len(X)} through good sets "
            f"({len(m_candidates)} candidate edges)",
        )
    ok("matching-M", f"size={len(matching)}")

    # one copy per matched edge, each with a single vertex in B
    used = set()
    v_of_m = {v for e, _ in matching for v in e}
    copies_for_x: list[TriangleCopy] = []
    b_members = set(B)
    for e, q in matching:
        w = next(v for v in e if v not in q)
        avail_a = [v for v in A if v not in v_of_m and v not in used]
        if len(avail_a) < k - 2:
            return fail("Tk-for-X", "ran out of fresh vertices in A")
        z = tuple(avail_a[: k - 2])
        zw = tuple(sorted(z + (w,)))
        nb_b = [v for v in H.neighborhood(zw) if v in b_members]
        copy = None
        if gamma_quarter.count_at_least(len(nb_b), n):
            common = [
                y
                for y in nb_b
                if y not in v_of_m and y not in used and y in set(H.neighborhood(q))
            ]
            if common:
                y = common[0]
                copy = TriangleCopy(q, (w, y), z)
        if copy is None:
            nb_a = [
                v
                for v in H.neighborhood(zw)
                if v in a_members and v not in v_of_m and v not in used and v not in zw
            ]
            for cand in itertools.combinations(nb_a, k - 1):
                if cand not in good_set:
                    continue
                c_nb = [
                    y
                    for y in H.neighborhood(cand)
                    if y in b_members and y not in used and y not in v_of_m
                ]
                if c_nb:
                    copy = TriangleCopy(zw, (cand[0], cand[1]), cand[2:] + (c_nb[0],))
                    break
        if copy is None:
            return fail("Tk-for-X", f"no copy through matched edge {e}")
        copies_for_x.append(copy)
        used.update(copy.vertices)
    ok("Tk-for-X", f"copies={len(copies_for_x)}")

    covered_now = used | {v for c in copies_for_x for v in c.vertices}
    A_rest = tuple(v for v in A if v not in covered_now)
    B_rest = tuple(v for v in B if v not in covered_now)
    n1 = n - s * len(X)
    if len(A_rest) * 2 != (2 * k - 3) * len(B_rest) or len(A_rest) + len(B_rest) != n1:
        return fail(
            "build-J",
            f"residual split |A'|={len(A_rest)}, |B'|={len(B_rest)} is off balance",
        )
    aux = build_auxiliary_graph(H, A_rest, B_rest)
    ok("build-J", f"edges={aux.graph.edge_count()}")

    # density thresholds on J
    full = comb(len(A_rest), 2 * k - 3) * comb(len(B_rest), 2)
    deficit = full - aux.graph.edge_count()
    p1 = gamma_eighth.deficit_at_most(deficit, full)
    vertex_thr = Fraction(n1 ** (2 * k - 2), s ** ((k + 1) ** 2 + 2 * k - 2))
    worst = None
    for v in A_rest + B_rest:
        d = len(aux.graph.vertex_edges(v))
        if worst is None or d < worst[1]:
            worst = (v, d)
    p2 = worst is not None and worst[1] >= vertex_thr
    if not (p1 and p2):
        return fail(
            "DH-check",
            f"P1={'ok' if p1 else 'fail'} (deficit {deficit}/{full}), "
            f"P2={'ok' if p2 else 'fail'} (worst degree {worst})",
        )
    ok("DH-check", f"deficit={deficit}/{full}, worst degree={worst}")

    # perfect matching in J
    universe = sorted(A_rest + B_rest)
    masks = [_mask(e) for e in aux.graph.edges]
    search = _CoverSearch(universe, masks, budget)
    rows = search.run()
    if rows is None:
        return fail("J-matching", "auxiliary graph has no perfect matching")
    ok("J-matching", f"size={len(rows)}")

    final_copies = list(copies_for_x)
    for r in rows:
        final_copies.append(aux.copy_map[aux.graph.edges[r]])
    tiling = Tiling(tuple(final_copies), n)
    if not tiling.perfect:
        raise ArithmeticError("internal: assembled tiling is not perfect")
    result.tiling = tiling
    return result
