"""Finite-n absorption machinery: index vectors, robustness, transferrals,
connectors, absorbers and reachability on a concrete host.
"""

from fractions import Fraction

from tritile import (
    IntegerLattice,
    VertexPartition,
    complete_kgraph,
    find_absorber,
    find_connector,
    has_transferral,
    index_vector,
    is_closed,
    reachable,
    robust_vectors,
)

K12 = complete_kgraph(12, 3)
P = VertexPartition((tuple(range(6)), tuple(range(6, 12))))
print(f"partition blocks of sizes {[len(b) for b in P.blocks]}")
print(f"index vector of {{0,1,6}}: {index_vector(P, (0, 1, 6))}")

print("\n== robustness against removing floor(beta n) = 1 vertex")
reports = robust_vectors(K12, P, Fraction(1, 12))
for vec, rep in sorted(reports.items()):
    print(f"   vector {vec}: {rep.status} (value {rep.value})")

print("\n== transferral between the two blocks")
tr = has_transferral(K12, P, Fraction(1, 12), 0, 1)
print(f"   u_0 - u_1 in the robust lattice: {tr.found}")
print(f"   combination: {tr.combination}")

print("\n== lattice membership with reconstructible coefficients")
L = IntegerLattice(2, [(3, 2), (5, 3)])
print(f"   (1, 1) in <(3,2), (5,3)>: {(1, 1) in L}, coefficients {L.express((1, 1))}")

print("\n== connectors, reachability, absorbers on the complete host")
K10 = complete_kgraph(10, 3)
S = find_connector(K10, 0, 1)
print(f"   connector for 0 and 1: {S}")
print(f"   (m=1)-reachable, certificate mode: {reachable(K10, 0, 1, 1)}")
print(f"   (m=1)-reachable, exact mode:       {reachable(K10, 0, 1, 1, mode='exact')}")
print(f"   whole vertex set closed at m=1:    {is_closed(K10, range(10), 1)[0]}")
A = find_absorber(K10, (0, 1, 2, 3, 4))
print(f"   absorber for {{0..4}}: {A}")
