"""Rainbow tilings over families of hosts on a shared vertex set.

A perfect rainbow tiling draws the 3 n/(2k-1) edges of a perfect tiling
injectively, one from each host.  The search interleaves the exact cover over
vertices with a bipartite slot-to-host matching prune, because assigning
hosts after the fact fails on adversarial families.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import KGraph
from .errors import BudgetExceeded, InvalidFamily
from .patterns import TriangleCopy, Tiling

DEFAULT_NODE_BUDGET = 2_000_000


@dataclass(frozen=True)
class GraphFamily:
    hosts: tuple[KGraph, ...]

    def __post_init__(self):
        if not self.hosts:
            raise InvalidFamily("empty family")
        n = self.hosts[0].n
        k = self.hosts[0].k
        if any(h.n != n or h.k != k for h in self.hosts):
            raise InvalidFamily("hosts must share vertex count and uniformity")

    @property
    def n(self) -> int:
        return self.hosts[0].n

    @property
    def k(self) -> int:
        return self.hosts[0].k

    def union(self) -> KGraph:
        edges = set()
        for h in self.hosts:
            edges.update(h.edges)
        return KGraph(self.n, self.k, edges)


@dataclass(frozen=True)
class RainbowTiling:
    """A tiling plus the host index serving each edge slot.

    Slots are ordered copy by copy (copies sorted canonically) and within a
    copy as (base edge with the smaller apex, base edge with the larger apex,
    spine); the assignment is a bijection onto the hosts.
    """

    tiling: Tiling
    assignment: tuple[int, ...]

    def slots(self) -> list[tuple[int, ...]]:
        out = []
        for c in self.tiling.copies:
            out.extend(c.edges)
        return out

    def to_json(self) -> dict:
        return {
            "tiling": self.tiling.to_json(),
            "assignment": list(self.assignment),
        }


def _bipartite_saturates(slot_hosts: list[tuple[int, ...]], n_hosts: int) -> bool:
    """Can every slot get its own host?  Kuhn's augmenting-path matching."""
    match_host = [-1] * n_hosts

    def augment(s: int, seen: set) -> bool:
        for h in slot_hosts[s]:
            if h in seen:
                continue
            seen.add(h)
            if match_host[h] < 0 or augment(match_host[h], seen):
                match_host[h] = s
                return True
        return False

    for s in range(len(slot_hosts)):
        if not augment(s, set()):
            return False
    return True


def _lex_least_assignment(slot_hosts: list[tuple[int, ...]], n_hosts: int) -> list[int]:
    """Lexicographically least system of distinct representatives."""
    chosen: list[int] = []
    used: set[int] = set()
    for s in range(len(slot_hosts)):
        for h in slot_hosts[s]:
            if h in used:
                continue
            rest = [
                tuple(x for x in slot_hosts[r] if x != h and x not in used)
                for r in range(s + 1, len(slot_hosts))
            ]
            if _bipartite_saturates(rest, n_hosts):
                chosen.append(h)
                used.add(h)
                break
        else:
            raise ArithmeticError("internal: assignment vanished after search")
    return chosen


def rainbow_perfect_tiling(
    family: GraphFamily,
    *,
    budget: int = DEFAULT_NODE_BUDGET,
) -> Optional[RainbowTiling]:
    """Exact decision for a perfect rainbow tiling of the family.

    Sound and complete within budget: exact cover over vertices on copies of
    the union, pruned whenever the partial slot/host bipartite graph has no
    saturating matching.
    """
    from .patterns import enumerate_copies  # local import to keep startup light

    n, k = family.n, family.k
    s = 2 * k - 1
    if n % s != 0:
        return None
    m = 3 * n // s
    if len(family.hosts) != m:
        raise InvalidFamily(f"family must have 3n/(2k-1) = {m} hosts, has {len(family.hosts)}")

    union = family.union()
    # A rainbow tiling is in particular a perfect tiling of the union, and
    # that decision is much cheaper (it has a fractional prefilter).
    from .exact import perfect_tiling

    if perfect_tiling(union, budget=budget) is None:
        return None

    edge_hosts: dict[tuple[int, ...], tuple[int, ...]] = {}
    for e in union.edges:
        edge_hosts[e] = tuple(i for i, h in enumerate(family.hosts) if h.has_edge(e))

    copies = enumerate_copies(union)
    usable = []
    for c in copies:
        hosts_per_edge = [edge_hosts[e] for e in c.edges]
        if _bipartite_saturates(hosts_per_edge, m):
            usable.append((c, hosts_per_edge))
    by_vertex: dict[int, list[int]] = {v: [] for v in range(n)}
    masks = []
    for idx, (c, _) in enumerate(usable):
        mask = 0
        for v in c.vertices:
            mask |= 1 << v
            by_vertex[v].append(idx)
        masks.append(mask)

    full = (1 << n) - 1
    nodes = {"n": 0}

    def search(covered: int, chosen: list[int]) -> Optional[list[int]]:
        if covered == full:
            return list(chosen)
        nodes["n"] += 1
        if nodes["n"] > budget:
            raise BudgetExceeded(f"rainbow search exceeded {budget} nodes")
        best = None
        for v in range(n):
            if covered >> v & 1:
                continue
            live = [r for r in by_vertex[v] if not masks[r] & covered]
            if best is None or len(live) < len(best):
                best = live
                if not live:
                    return None
        for r in best:
            chosen.append(r)
            slot_hosts = [hp for q in chosen for hp in usable[q][1]]
            if _bipartite_saturates(slot_hosts, m):
                found = search(covered | masks[r], chosen)
                if found is not None:
                    return found
            chosen.pop()
        return None

    rows = search(0, [])
    if rows is None:
        return None
    chosen_copies = sorted((usable[r][0] for r in rows), key=TriangleCopy.sort_key)
    slot_hosts = [edge_hosts[e] for c in chosen_copies for e in c.edges]
    assignment = _lex_least_assignment(slot_hosts, m)
    return RainbowTiling(Tiling(tuple(chosen_copies), n), tuple(assignment))


@dataclass(frozen=True)
class CoverEmbedding:
    """Injective pattern embedding with one designated edge landing in the
    first host and every other edge in the second."""

    mapping: tuple[int, ...]  # pattern vertex i -> host vertex mapping[i]
    designated: tuple[int, ...]  # the pattern edge covered by the first host

    def to_json(self) -> dict:
        return {"mapping": list(self.mapping), "designated": list(self.designated)}


def color_covering_homomorphism(
    F: KGraph,
    H1: KGraph,
    H2: KGraph,
    *,
    budget: int = 2_000_000,
) -> Optional[CoverEmbedding]:
    """Exact backtracking over the designated edge and the embedding."""
    if H1.n != H2.n or H1.k != H2.k or F.k != H1.k:
        raise InvalidFamily("hosts must share a vertex set and uniformity with F")
    n = H1.n
    if F.n > n:
        return None

    # Map pattern vertices in an order that closes pattern edges early.
    order: list[int] = []
    remaining = set(range(F.n))
    while remaining:
        def closure(v):
            closed = 0
            for e in F.edges:
                if v in e and all(u == v or u in order for u in e):
                    closed += 1
            return (-closed, v)
        nxt = min(remaining, key=closure)
        order.append(nxt)
        remaining.discard(nxt)
    pos = {v: i for i, v in enumerate(order)}
    closing = []  # edges fully mapped once order[i] is placed
    for i in range(F.n):
        closing.append(
            [e for e in F.edges if max(pos[u] for u in e) == i]
        )

    nodes = {"n": 0}

    def embed(designated) -> Optional[tuple[int, ...]]:
        mapping = [-1] * F.n
        used = [False] * n

        def rec(i: int) -> bool:
            if i == F.n:
                return True
            nodes["n"] += 1
            if nodes["n"] > budget:
                raise BudgetExceeded(f"embedding search exceeded {budget} nodes")
            v = order[i]
            for w in range(n):
                if used[w]:
                    continue
                mapping[v] = w
                used[w] = True
                ok = True
                for e in closing[i]:
                    img = tuple(sorted(mapping[u] for u in e))
                    host = H1 if e == designated else H2
                    if not host.has_edge(img):
                        ok = False
                        break
                if ok and rec(i + 1):
                    return True
                mapping[v] = -1
                used[w] = False
            return False

        if rec(0):
            return tuple(mapping)
        return None

    for designated in F.edges:
        found = embed(designated)
        if found is not None:
            return CoverEmbedding(found, designated)
    return None
