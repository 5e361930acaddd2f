import itertools
import random

import pytest

from tritile.core import KGraph, complete_kgraph
from tritile.constructions import extremal_construction, random_with_codegree
from tritile.errors import BudgetExceeded, InvalidArity, InvalidColoring, InvalidUniformity
from tritile.patterns import (
    blowup,
    count_tight_2paths,
    enumerate_copies,
    generalized_triangle,
    supporting_sets,
    supports_triangle,
    validate_copy,
)

from oracles import oracle_automorphisms, oracle_supports


def test_pattern_k3():
    T = generalized_triangle(3)
    assert T.n == 5
    assert T.edges == ((0, 1, 2), (0, 1, 3), (2, 3, 4))


def test_pattern_k2_triangle():
    T = generalized_triangle(2)
    assert T.edges == ((0, 1), (0, 2), (1, 2))


def test_pattern_rejects_k1():
    with pytest.raises(InvalidUniformity):
        generalized_triangle(1)


@pytest.mark.parametrize("k,expected", [(3, 4), (4, 24)])
def test_pattern_automorphism_count(k, expected):
    assert oracle_automorphisms(generalized_triangle(k)) == expected


def test_supports_on_extremal_two_a_vertices():
    inst = extremal_construction(3, 15)
    S = (0, 1, 6, 7, 8)  # two vertices in A
    copy = supports_triangle(inst.graph, S)
    assert copy is not None
    assert validate_copy(inst.graph, copy)


def test_supports_inside_b_is_none():
    inst = extremal_construction(3, 15)
    assert supports_triangle(inst.graph, (5, 6, 7, 8, 9)) is None


def test_supports_wrong_arity():
    with pytest.raises(InvalidArity):
        supports_triangle(complete_kgraph(6, 3), (0, 1, 2))


def test_copy_count_complete_five():
    copies = enumerate_copies(complete_kgraph(5, 3))
    aut = oracle_automorphisms(generalized_triangle(3))
    assert len(copies) == 120 // aut == 30


def test_copy_count_complete_k4():
    copies = enumerate_copies(complete_kgraph(7, 4))
    aut = oracle_automorphisms(generalized_triangle(4))
    import math

    assert len(copies) == math.factorial(7) // aut


def test_enumerate_edgeless_empty():
    assert enumerate_copies(KGraph(8, 3, [])) == []


def test_enumerate_extremal_copies_touch_a_twice():
    inst = extremal_construction(3, 10)
    a = set(inst.A)
    copies = enumerate_copies(inst.graph)
    assert copies
    assert all(len(set(c.vertices) & a) >= 2 for c in copies)


def test_enumerate_cap():
    with pytest.raises(BudgetExceeded):
        enumerate_copies(complete_kgraph(8, 3), cap=10)


def test_enumerate_restricted_matches_supports():
    H = random_with_codegree(9, 3, 3, seed=17)
    for S in [(0, 1, 2, 3, 4), (2, 4, 5, 7, 8), (0, 3, 5, 6, 8)]:
        inside = enumerate_copies(H, restrict=S)
        assert all(set(c.vertices) <= set(S) for c in inside)
        assert bool(inside) == (supports_triangle(H, S) is not None)


def test_k2_triangle_count_in_k4():
    assert len(enumerate_copies(complete_kgraph(4, 2))) == 4


def test_enumerate_matches_supports(small_corpus):
    for _, H in small_corpus[:8]:
        copies = enumerate_copies(H)
        by_set = {}
        for c in copies:
            by_set.setdefault(c.vertices, []).append(c)
        for S in itertools.combinations(range(H.n), 5):
            has = supports_triangle(H, S) is not None
            assert has == (S in by_set)
            assert has == oracle_supports(H, S)


def test_copy_count_invariant_under_relabelling():
    rng = random.Random(3)
    H = random_with_codegree(9, 3, 3, seed=21)
    base = len(enumerate_copies(H))
    for _ in range(3):
        perm = list(range(H.n))
        rng.shuffle(perm)
        H2 = KGraph(H.n, H.k, [tuple(sorted(perm[v] for v in e)) for e in H.edges])
        assert len(enumerate_copies(H2)) == base


def test_all_enumerated_copies_validate(small_corpus):
    for _, H in small_corpus[:10]:
        for c in enumerate_copies(H):
            assert validate_copy(H, c)


def test_supporting_sets_match_enumeration(small_corpus):
    for _, H in small_corpus[:8]:
        sets = supporting_sets(H)
        from_copies = sorted({c.vertices for c in enumerate_copies(H)})
        assert [vs for vs, _ in sets] == from_copies
        for vs, witness in sets:
            assert witness.vertices == vs
            assert validate_copy(H, witness)


def test_tight_2paths_complete_four():
    assert count_tight_2paths(complete_kgraph(4, 3)).total == 6


def test_tight_2paths_single_edge():
    assert count_tight_2paths(KGraph(5, 3, [(0, 1, 2)])).total == 0


def test_tight_2paths_monochromatic_rainbow_zero():
    H = complete_kgraph(5, 3)
    coloring = {e: 1 for e in H.edges}
    counts = count_tight_2paths(H, coloring)
    assert counts.rainbow == 0
    assert counts.total > 0


def test_tight_2paths_rainbow_counts():
    H = KGraph(4, 3, [(0, 1, 2), (0, 1, 3), (0, 2, 3)])
    coloring = {(0, 1, 2): 1, (0, 1, 3): 2, (0, 2, 3): 1}
    counts = count_tight_2paths(H, coloring)
    assert counts.total == 3
    assert counts.rainbow == 2


def test_tight_2paths_bad_coloring():
    H = complete_kgraph(4, 3)
    with pytest.raises(InvalidColoring):
        count_tight_2paths(H, {(0, 1, 2): 1})


def test_blowup_identity():
    H = random_with_codegree(6, 3, 2, seed=9)
    assert blowup(H, 1) == H


def test_blowup_single_edge():
    H = KGraph(3, 3, [(0, 1, 2)])
    B = blowup(H, 2)
    assert B.n == 6
    assert B.edge_count() == 8


def test_blowup_pattern_vertex_count():
    assert blowup(generalized_triangle(3), 2).n == 10
