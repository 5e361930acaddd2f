"""The tight construction and why it has no perfect tiling.

Split the vertices into a small side A and a large side B and make a k-set
an edge exactly when it touches A.  Every pattern copy must then spend two
A-vertices, so at most |A|/2 disjoint copies fit and the graph narrowly
misses a perfect tiling, although its minimum codegree is as large as |A|.
"""

from fractions import Fraction

from tritile import (
    density,
    enumerate_copies,
    extremal_construction,
    induced,
    is_gamma_extremal,
    max_tiling,
    min_codegree,
    perfect_tiling,
)

for k, n in [(3, 10), (3, 15), (4, 14)]:
    inst = extremal_construction(k, n)
    H = inst.graph
    print(f"== tight instance k={k}, n={n}: |A|={len(inst.A)}, |B|={len(inst.B)}, "
          f"{H.edge_count()} edges")

    value, witness = min_codegree(H)
    print(f"   min codegree {value} (= |A|), attained e.g. by {witness}")

    copies = enumerate_copies(H)
    a = set(inst.A)
    least_a = min(len(set(c.vertices) & a) for c in copies)
    print(f"   {len(copies)} pattern copies, every one meets A in >= {least_a} vertices")

    size, packing = max_tiling(H)
    print(f"   maximum tiling: {size} copies = floor(|A|/2) = {len(inst.A) // 2}")
    print(f"   perfect tiling exists: {perfect_tiling(H) is not None}")

    sub, _ = induced(H, inst.B)
    print(f"   B induces density {density(sub)}; "
          f"0-extremal: {is_gamma_extremal(H, Fraction(0)).extremal}")
    print()
