"""Fractional tilings and hand-checkable infeasibility certificates.

The fractional relaxation either admits a perfect weighting of the copies or
a rational vector a with a . 1_{V(T)} >= 0 on every copy yet a . 1 < 0.
Exactly one of the two ever comes back, and both sides are exact.
"""

from tritile import (
    FarkasCertificate,
    FractionalTiling,
    KGraph,
    complete_kgraph,
    extremal_construction,
    perfect_fractional_tiling,
    verify_certificate,
)

print("== complete host on 10 vertices")
r = perfect_fractional_tiling(complete_kgraph(10, 3))
assert isinstance(r, FractionalTiling)
print(f"   feasible, {len(r.weights)} copies carry weight, "
      f"every vertex weight = {r.vertex_weight(0)}")

print("== tight instance (3, 15)")
ext = extremal_construction(3, 15).graph
r = perfect_fractional_tiling(ext)
assert isinstance(r, FarkasCertificate)
print(f"   infeasible; extracted certificate {r.coeffs}")
print(f"   a . 1 = {r.total()}")
print(f"   validator: {verify_certificate(ext, r).valid}")

print("== the same certificate by hand: 2k-3 on A, -2 on B")
hand = FarkasCertificate(tuple([3] * 5 + [-2] * 10))
check = verify_certificate(ext, hand)
print(f"   valid: {check.valid}; every copy spends two A-vertices, so "
      f"a . 1_V >= 5*2 - 10 = 0 while a . 1 = 15 - 20 = -5")

print("== edgeless host: certificate is all -1")
r = perfect_fractional_tiling(KGraph(8, 3, []))
print(f"   {r.coeffs}")
