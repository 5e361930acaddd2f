"""Independent oracles used to freeze expected values.

Nothing here imports solver internals: pattern containment is decided by
trying base/apex splits directly against the edge set, tilings by naive
recursive partition, lattice membership by bounded coefficient search.
"""

import itertools


def oracle_supports(H, S):
    S = tuple(sorted(S))
    k = H.k
    if len(S) != 2 * k - 1:
        return False
    for base in itertools.combinations(S, k - 1):
        spine = tuple(sorted(v for v in S if v not in base))
        if not H.has_edge(spine):
            continue
        for a, b in itertools.combinations(spine, 2):
            if H.has_edge(tuple(sorted(base + (a,)))) and H.has_edge(
                tuple(sorted(base + (b,)))
            ):
                return True
    return False


def oracle_perfect_tiling(H):
    """Naive recursive partition search into pattern-supporting blocks."""
    s = 2 * H.k - 1
    if H.n % s != 0:
        return False

    def rec(remaining):
        if not remaining:
            return True
        head, rest = remaining[0], remaining[1:]
        for combo in itertools.combinations(rest, s - 1):
            if oracle_supports(H, (head,) + combo):
                left = tuple(v for v in rest if v not in combo)
                if rec(left):
                    return True
        return False

    return rec(tuple(range(H.n)))


def oracle_lattice_member(generators, target, box=10):
    """Coefficient search over the box [-box, box]^len(generators)."""
    dim = len(target)
    for coeffs in itertools.product(range(-box, box + 1), repeat=len(generators)):
        if all(
            sum(c * g[i] for c, g in zip(coeffs, generators)) == target[i]
            for i in range(dim)
        ):
            return True
    return False


def oracle_robust(H, P, vector, removable, index_vector_fn, supports_fn):
    """Literal for-all-W check: every W of size <= removable leaves a copy
    with the given index vector."""
    n = H.n
    s = 2 * H.k - 1
    family = [
        S
        for S in itertools.combinations(range(n), s)
        if supports_fn(H, S) and index_vector_fn(P, S) == vector
    ]
    for size in range(removable + 1):
        for W in itertools.combinations(range(n), size):
            w = set(W)
            if not any(not (w & set(S)) for S in family):
                return False
    return True


def oracle_gamma_extremal(H, gamma, size):
    """Iterate all subsets of the target size; density by direct count."""
    from fractions import Fraction
    from math import comb

    if size < H.k:
        return True
    for S in itertools.combinations(range(H.n), size):
        members = set(S)
        count = sum(1 for e in H.edges if set(e) <= members)
        if Fraction(count, comb(size, H.k)) <= gamma:
            return True
    return False


def oracle_automorphisms(pattern):
    """Brute-force count of edge-set-preserving vertex permutations."""
    edges = set(pattern.edges)
    count = 0
    for perm in itertools.permutations(range(pattern.n)):
        mapped = {tuple(sorted(perm[v] for v in e)) for e in edges}
        if mapped == edges:
            count += 1
    return count
