"""Spreading a perfect fractional tiling thin over vertex pairs.

Among all perfect fractional tilings we minimize the largest pair weight
w(uv) = sum of weights of copies containing both u and v.  On the complete
host the answer is forced by symmetry: every vertex sees total pair weight
2k-2 spread over n-1 partners, so the optimum is exactly (2k-2)/(n-1).
"""

from fractions import Fraction
from itertools import combinations

from tritile import (
    KGraph,
    b_avoiding_fractional_tiling,
    complete_kgraph,
    min_max_pair_weight,
)

print("== complete host on 10 vertices")
w_star, omega = min_max_pair_weight(complete_kgraph(10, 3))
print(f"   optimum W* = {w_star} (expected (2k-2)/(n-1) = 4/9: {w_star == Fraction(4, 9)})")
heaviest = max(omega.pair_weight(u, v) for u, v in combinations(range(10), 2))
print(f"   heaviest pair in the witness: {heaviest}")

print("== pair-avoiding variant")
K10 = complete_kgraph(10, 3)
B = KGraph(10, 2, [(0, 1), (2, 3)])
r = b_avoiding_fractional_tiling(K10, B)
print(f"   avoiding two pairs still feasible: w(0,1) = {r.pair_weight(0, 1)}, "
      f"w(2,3) = {r.pair_weight(2, 3)}")

print("== host with a single supporting set")
from tritile import generalized_triangle

w1, omega1 = min_max_pair_weight(generalized_triangle(3))
print(f"   forced weights give W* = {w1}")
