"""Acceptance suite: one test per criterion, each printing a PASS line with
its measured runtime.  All tolerances are exact; nothing is compared in
floating point."""

import json
import time
from fractions import Fraction

import pytest

from tritile.cli import run as cli_run
from tritile.constructions import SplitMix64, extremal_construction, random_with_codegree
from tritile.core import KGraph, complete_kgraph, min_codegree
from tritile.exact import (
    corollary_thresholds,
    dh_condition,
    kpartite_perfect_matching,
    max_tiling,
    perfect_tiling,
)
from tritile.fractional import (
    FarkasCertificate,
    FractionalTiling,
    packing_lp_value,
    perfect_fractional_tiling,
    verify_certificate,
)
from tritile.lattice import (
    NO,
    YES,
    IntegerLattice,
    VertexPartition,
    find_absorber,
    find_connector,
    index_vector,
    reachable,
    robust_vectors,
)
from tritile.patterns import enumerate_copies, supporting_sets, supports_triangle
from tritile.rainbow import GraphFamily, color_covering_homomorphism, rainbow_perfect_tiling
from tritile.validate import (
    check_absorber,
    check_certificate,
    check_connector,
    check_copy,
    check_fractional,
    check_matching,
    check_rainbow,
    check_tiling,
)

from oracles import oracle_lattice_member, oracle_perfect_tiling, oracle_robust


def _report(name: str, detail: str, elapsed: float):
    print(f"[{name}] PASS: {detail} ({elapsed:.1f}s)")


def _corpus(count, sizes, base_seed=0, max_delta=4):
    out = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        delta = min((i * 7 + 3) % (max_delta + 1), n - 2)
        out.append(random_with_codegree(n, 3, delta, seed=base_seed + i))
    return out


def test_criterion_01_extremal_construction_exactness():
    start = time.time()
    for k, n in [(3, 10), (3, 15), (4, 14)]:
        inst = extremal_construction(k, n)
        expected_delta = 2 * n // (2 * k - 1) - 1
        assert min_codegree(inst.graph)[0] == expected_delta
        a = set(inst.A)
        copies = enumerate_copies(inst.graph)
        assert copies
        assert all(len(set(c.vertices) & a) >= 2 for c in copies)
        size, witness = max_tiling(inst.graph)
        assert size == len(inst.A) // 2
        assert check_tiling(inst.graph, witness)
        assert perfect_tiling(inst.graph) is None
    elapsed = time.time() - start
    assert elapsed < 120
    _report(
        "criterion-01",
        "min codegree, copy A-incidence, max tiling and no perfect tiling on "
        "(3,10), (3,15), (4,14)",
        elapsed,
    )


_DUALITY_CACHE: list = []


def duality_corpus():
    if not _DUALITY_CACHE:
        for H in _corpus(500, sizes=(6, 7, 8, 9, 10, 11, 12)):
            sets = supporting_sets(H)
            verdict = perfect_fractional_tiling(H, sets=sets)
            _DUALITY_CACHE.append((H, sets, verdict))
    return _DUALITY_CACHE


def test_criterion_02_fractional_farkas_duality():
    start = time.time()
    feasible = infeasible = 0
    for H, sets, verdict in duality_corpus():
        if isinstance(verdict, FractionalTiling):
            feasible += 1
            assert verdict.perfect
            assert check_fractional(H, verdict)
        else:
            infeasible += 1
            assert isinstance(verdict, FarkasCertificate)
            assert verify_certificate(H, verdict, sets=sets).valid
    assert feasible + infeasible == 500
    inst = extremal_construction(3, 15)
    hand = FarkasCertificate(tuple([2 * 3 - 3] * 5 + [-2] * 10))
    assert hand.total() == -(2 * 3 - 1) == -5
    assert verify_certificate(inst.graph, hand).valid
    elapsed = time.time() - start
    assert elapsed < 600
    _report(
        "criterion-02",
        f"exactly one of tiling/certificate on 500 graphs "
        f"({feasible} feasible, {infeasible} certificates); "
        f"canonical certificate validates with a.1 = -5",
        elapsed,
    )


def test_criterion_03_integral_fractional_consistency():
    start = time.time()
    tiled = 0
    for H, sets, verdict in duality_corpus():
        t = perfect_tiling(H)
        if t is not None:
            tiled += 1
            assert isinstance(verdict, FractionalTiling)
        size, _ = max_tiling(H)
        lp, _ = packing_lp_value(H, sets=sets)
        assert size <= lp
    elapsed = time.time() - start
    _report(
        "criterion-03",
        f"perfect tiling implies LP feasibility ({tiled} tiled instances); "
        f"max tiling <= exact LP optimum on all 500",
        elapsed,
    )


def test_criterion_04_exact_cover_oracle_equivalence():
    start = time.time()
    agreements = 0
    for i in range(500):
        n = (5, 10, 10, 9, 10)[i % 5]
        delta = min((i * 3 + 1) % 4, n - 2)
        H = random_with_codegree(n, 3, delta, seed=9000 + i)
        mine = perfect_tiling(H)
        oracle = oracle_perfect_tiling(H)
        assert (mine is not None) == oracle
        if mine is not None:
            assert check_tiling(H, mine, require_perfect=True)
        agreements += 1
    elapsed = time.time() - start
    _report(
        "criterion-04",
        f"perfect_tiling agrees with the naive partition oracle on "
        f"{agreements} instances (n <= 10)",
        elapsed,
    )


def _seeded_bipartite(n, seed):
    """Random bipartite graph on n+n repaired to min degree >= n/2."""
    rng = SplitMix64(seed)
    need = (n + 1) // 2
    adj = [[False] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if rng.next_u64() % 2:
                adj[i][j] = True
    for i in range(n):
        while sum(adj[i]) < need:
            adj[i][rng.below(n)] = True
    for j in range(n):
        while sum(adj[i][j] for i in range(n)) < need:
            adj[rng.below(n)][j] = True
    edges = [(i, n + j) for i in range(n) for j in range(n) if adj[i][j]]
    return KGraph(2 * n, 2, edges)


def test_criterion_05_daykin_haggkvist_k2():
    start = time.time()
    checked = 0
    for n in (1, 2, 3, 4):
        classes = [list(range(n)), list(range(n, 2 * n))]
        threshold = Fraction(n, 2)
        for bits in range(1 << (n * n)):
            edges = [
                (i, n + j)
                for i in range(n)
                for j in range(n)
                if bits >> (i * n + j) & 1
            ]
            J = KGraph(2 * n, 2, edges)
            degs = [len(J.vertex_edges(v)) for v in range(2 * n)]
            if min(degs) < threshold:
                continue
            rep = dh_condition(J, classes)
            assert rep.satisfied
            m = kpartite_perfect_matching(J, classes)
            assert m is not None
            assert check_matching(J, m)
            checked += 1
    for n in (5, 6, 7):
        classes = [list(range(n)), list(range(n, 2 * n))]
        for seed in range(200):
            J = _seeded_bipartite(n, seed * 31 + n)
            assert dh_condition(J, classes).satisfied
            m = kpartite_perfect_matching(J, classes)
            assert m is not None
            assert check_matching(J, m)
            checked += 1
    # Corollary threshold arithmetic for k = 3, n = 5, frozen by hand:
    # C(15,3) = 455, C(10,2) = 45, product 20475; 5^4 / 5^16 = 1/244140625.
    for beta, expected_edge in [
        (Fraction(0), Fraction(20475)),
        (Fraction(1, 2), Fraction(20475, 2)),
        (Fraction(1, 3), Fraction(13650)),
    ]:
        edge_thr, vertex_thr = corollary_thresholds(3, 5, beta)
        assert edge_thr == expected_edge
        assert vertex_thr == Fraction(1, 244140625)
    elapsed = time.time() - start
    assert elapsed < 300
    _report(
        "criterion-05",
        f"{checked} bipartite instances under the degree condition all admit "
        f"perfect matchings; corollary thresholds match hand-computed values",
        elapsed,
    )


def test_criterion_06_lattice_and_robustness_oracles():
    start = time.time()
    rng = SplitMix64(424242)
    checked = 0
    while checked < 200:
        dim = 1 + rng.below(3)
        gens = [
            tuple(int(rng.below(9)) - 4 for _ in range(dim))
            for _ in range(1 + rng.below(3))
        ]
        target = tuple(int(rng.below(13)) - 6 for _ in range(dim))
        L = IntegerLattice(dim, gens)
        mine = target in L
        assert mine == oracle_lattice_member(gens, target)
        if mine:
            coeffs = L.express(target)
            assert all(
                sum(c * g[i] for c, g in zip(coeffs, gens)) == target[i]
                for i in range(dim)
            )
        checked += 1

    robustness_checks = 0
    for seed, n, beta in [
        (1, 8, Fraction(1, 8)),
        (2, 8, Fraction(2, 8)),
        (3, 9, Fraction(2, 9)),
        (4, 10, Fraction(1, 5)),
        (5, 10, Fraction(1, 10)),
        (6, 7, Fraction(2, 7)),
    ]:
        H = random_with_codegree(n, 3, 2 + seed % 2, seed=seed + 300)
        half = n // 2
        P = VertexPartition((tuple(range(half)), tuple(range(half, n))))
        reports = robust_vectors(H, P, beta)
        assert int(beta * n) <= 2
        for vec, rep in reports.items():
            want = oracle_robust(
                H,
                P,
                vec,
                rep.removable,
                index_vector,
                lambda G, S: supports_triangle(G, S) is not None,
            )
            assert (rep.status == "robust") == want
            robustness_checks += 1
    elapsed = time.time() - start
    _report(
        "criterion-06",
        f"lattice membership matches the box oracle on 200 generator sets; "
        f"robustness matches the literal for-all-W oracle on "
        f"{robustness_checks} vectors",
        elapsed,
    )


def test_criterion_07_reachability_soundness():
    start = time.time()
    both_decided = 0
    contradictions = 0
    i = 0
    while both_decided < 100:
        n = (7, 8, 9, 10)[i % 4]
        delta = (i % 3) + 1
        H = random_with_codegree(n, 3, delta, seed=7000 + i)
        u, v = i % n, (i * 2 + 1) % n
        if u == v:
            v = (v + 1) % n
        m = i % 2
        cert = reachable(H, u, v, m, mode="certificate")
        exact = reachable(H, u, v, m, mode="exact")
        i += 1
        if exact == "unknown":
            continue
        both_decided += 1
        if cert == YES and exact == NO:
            contradictions += 1
    assert contradictions == 0
    elapsed = time.time() - start
    _report(
        "criterion-07",
        f"certificate mode never contradicted exact mode on "
        f"{both_decided} instances",
        elapsed,
    )


def test_criterion_08_rainbow_checks():
    start = time.time()
    ext = extremal_construction(3, 15).graph
    fam_ext = GraphFamily(tuple([ext] * 9))
    assert rainbow_perfect_tiling(fam_ext) is None

    K10 = complete_kgraph(10, 3)
    fam_complete = GraphFamily(tuple([K10] * 6))
    rt = rainbow_perfect_tiling(fam_complete)
    assert rt is not None
    assert check_rainbow(fam_complete, rt)

    from tritile.patterns import generalized_triangle

    T = generalized_triangle(3)
    found = 0
    for seed in range(100):
        n = 8 + seed % 3
        H1 = random_with_codegree(n, 3, 3, seed=8100 + seed)
        H2 = random_with_codegree(n, 3, 3, seed=8700 + seed)
        emb = color_covering_homomorphism(T, H1, H2)
        assert emb is not None
        img = [tuple(sorted(emb.mapping[v] for v in e)) for e in T.edges]
        assert H1.has_edge(
            tuple(sorted(emb.mapping[v] for v in emb.designated))
        )
        for e, ie in zip(T.edges, img):
            if e != emb.designated:
                assert H2.has_edge(ie)
        found += 1
    elapsed = time.time() - start
    assert elapsed < 600
    _report(
        "criterion-08",
        f"replicated tight family decided-no, replicated complete family "
        f"decided-yes with validated assignment, {found}/100 color-covering "
        f"embeddings found",
        elapsed,
    )


def test_criterion_09_structural_validators():
    start = time.time()
    validated = 0

    # tilings and copies
    for i in range(20):
        n = (5, 10)[i % 2]
        H = random_with_codegree(n, 3, 2 + i % 2, seed=9900 + i)
        for c in enumerate_copies(H):
            assert check_copy(H, c)
            validated += 1
        t = perfect_tiling(H)
        if t is not None:
            assert check_tiling(H, t, require_perfect=True)
            validated += 1
        size, witness = max_tiling(H)
        assert check_tiling(H, witness)
        validated += 1

    # fractional tilings and certificates on small hosts (brute validators)
    for i in range(10):
        H = random_with_codegree(7 + i % 2, 3, 1 + i % 3, seed=9090 + i)
        r = perfect_fractional_tiling(H)
        if isinstance(r, FractionalTiling):
            assert check_fractional(H, r)
        else:
            assert check_certificate(H, r)
        validated += 1

    # connectors and absorbers
    K10 = complete_kgraph(10, 3)
    K15 = complete_kgraph(15, 3)
    for u, v in [(0, 1), (2, 7), (3, 9)]:
        S = find_connector(K10, u, v)
        assert S is not None and check_connector(K10, S, u, v)
        validated += 1
    for S in [(0, 1, 2, 3, 4), (5, 6, 7, 8, 9)]:
        A = find_absorber(K15, S)
        assert A is not None and check_absorber(K15, A, S)
        validated += 1

    # matchings
    J = KGraph(6, 2, [(i, j) for i in range(3) for j in range(3, 6)])
    m = kpartite_perfect_matching(J, [[0, 1, 2], [3, 4, 5]])
    assert m is not None and check_matching(J, m)
    validated += 1

    # rainbow assignments
    fam = GraphFamily(tuple([K10] * 6))
    rt = rainbow_perfect_tiling(fam)
    assert rt is not None and check_rainbow(fam, rt)
    validated += 1

    elapsed = time.time() - start
    _report(
        "criterion-09",
        f"{validated} emitted witnesses all pass their independent validators",
        elapsed,
    )


def test_criterion_10_determinism(tmp_path):
    start = time.time()
    inst = tmp_path / "ext.kg"
    cli_run(["gen", "extremal", "--k", "3", "--n", "10", "-o", str(inst)])
    rnd = tmp_path / "rnd.kg"
    cli_run(
        ["gen", "random", "--n", "10", "--k", "3", "--delta", "3", "--seed", "5", "-o", str(rnd)]
    )

    commands = [
        ["info", str(inst)],
        ["tile", str(inst)],
        ["pack", str(inst)],
        ["farkas", str(inst)],
        ["fractile", str(rnd)],
        ["pack", str(rnd)],
        ["lattice", str(rnd), "--blocks", "0-4;5-9", "--beta", "1/10"],
        ["reach", str(rnd), "--u", "0", "--v", "1", "--m", "0", "--mode", "exact"],
    ]
    for argv in commands:
        r1, c1 = cli_run(argv)
        r2, c2 = cli_run(argv)
        r1.pop("ms"), r2.pop("ms")
        assert c1 == c2
        assert json.dumps(r1, sort_keys=True) == json.dumps(r2, sort_keys=True)

    manifest = tmp_path / "man.jsonl"
    rows = [
        {"id": f"row{i}", "args": cmd}
        for i, cmd in enumerate(commands)
    ]
    manifest.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
    out1, out4 = tmp_path / "w1.csv", tmp_path / "w4.csv"
    cli_run(["batch", str(manifest), "--workers", "1", "-o", str(out1)])
    cli_run(["batch", str(manifest), "--workers", "4", "-o", str(out4)])

    def no_ms(path):
        return ["," .join(l.split(",")[:-1]) for l in path.read_text().splitlines()]

    assert no_ms(out1) == no_ms(out4)
    elapsed = time.time() - start
    _report(
        "criterion-10",
        f"verdict fields byte-identical across repeated runs of "
        f"{len(commands)} commands and across batch worker counts 1 and 4",
        elapsed,
    )
