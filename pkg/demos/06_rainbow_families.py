"""Rainbow tilings: one edge from each host of a family.

A family of 3n/(2k-1) hosts on a shared vertex set admits a perfect rainbow
tiling when some perfect tiling can draw its edges injectively, one per
host.  Host assignment is interleaved with the cover search, so adversarial
families (for instance one edgeless host) are rejected exactly.
"""

from tritile import (
    GraphFamily,
    KGraph,
    color_covering_homomorphism,
    complete_kgraph,
    extremal_construction,
    generalized_triangle,
    rainbow_perfect_tiling,
    random_with_codegree,
)

K10 = complete_kgraph(10, 3)
fam = GraphFamily(tuple([K10] * 6))
rt = rainbow_perfect_tiling(fam)
print(f"replicated complete family: assignment {rt.assignment}")

ext = extremal_construction(3, 15).graph
print(f"replicated tight family: {rainbow_perfect_tiling(GraphFamily(tuple([ext] * 9)))}")

T = generalized_triangle(3)
hosts = tuple(KGraph(5, 3, [e]) for e in T.edges)
rt = rainbow_perfect_tiling(GraphFamily(hosts))
print(f"one edge per host: forced assignment {rt.assignment}")

empty = KGraph(10, 3, [])
fam_bad = GraphFamily((K10,) * 5 + (empty,))
print(f"one edgeless host: {rainbow_perfect_tiling(fam_bad)}")

print("\ncolor covering homomorphisms with min codegree k:")
for seed in (1, 2, 3):
    H1 = random_with_codegree(9, 3, 3, seed=seed)
    H2 = random_with_codegree(9, 3, 3, seed=seed + 50)
    emb = color_covering_homomorphism(T, H1, H2)
    print(f"   seed {seed}: mapping {emb.mapping}, designated edge {emb.designated}")
