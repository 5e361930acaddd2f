"""Exact-rational linear programming for perfect fractional tilings.

Feasibility is decided by a phase-1 revised simplex over the cone membership
formulation (one column per supporting set); an infeasible run yields the
dual multipliers, which are returned as an integer-scaled Farkas certificate.
Pivoting is deterministic and anti-cycling (lexicographic ratio test), and
all arithmetic is `fractions.Fraction`, so certificates and optima are exact
and reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

from .core import KGraph
from .errors import BudgetExceeded, InvalidDimension, InvalidVertex
from .patterns import (
    DEFAULT_COPY_CAP,
    TriangleCopy,
    supporting_sets,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- data ------------------------------------------------------------------


@dataclass(frozen=True)
class FractionalTiling:
    """Nonnegative rational weights on canonical copies of the host."""

    n: int
    weights: dict  # TriangleCopy -> Fraction (only nonzero weights stored)

    def vertex_weight(self, u: int) -> Fraction:
        if not 0 <= u < self.n:
            raise InvalidVertex(f"vertex {u} out of range")
        return sum(
            (w for c, w in self.weights.items() if u in c.vertices), start=_ZERO
        )

    def pair_weight(self, u: int, v: int) -> Fraction:
        for x in (u, v):
            if not 0 <= x < self.n:
                raise InvalidVertex(f"vertex {x} out of range")
        if u == v:
            raise InvalidVertex("pair weight needs two distinct vertices")
        return sum(
            (
                w
                for c, w in self.weights.items()
                if u in c.vertices and v in c.vertices
            ),
            start=_ZERO,
        )

    @property
    def perfect(self) -> bool:
        return all(self.vertex_weight(u) == 1 for u in range(self.n))

    def to_json(self) -> dict:
        return {
            "perfect": self.perfect,
            "weights": [
                {"copy": c.to_json(), "weight": _frac_str(w)}
                for c, w in sorted(self.weights.items(), key=lambda cw: cw[0].sort_key())
            ],
        }


@dataclass(frozen=True)
class FarkasCertificate:
    """Integer vector a with a . 1_{V(T)} >= 0 for every copy T and a . 1 < 0."""

    coeffs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.coeffs)

    def total(self) -> int:
        return sum(self.coeffs)

    def copy_value(self, copy: TriangleCopy) -> int:
        return sum(self.coeffs[v] for v in copy.vertices)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "total": self.total()}


def vertex_weight(omega: FractionalTiling, u: int) -> Fraction:
    return omega.vertex_weight(u)


def pair_weight(omega: FractionalTiling, u: int, v: int) -> Fraction:
    return omega.pair_weight(u, v)


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


# -- revised simplex core ---------------------------------------------------
#
# Standard form: rows indexed 0..nrows-1, columns with integer coefficients
# and integer costs, initial basis an identity of slack/artificial columns.
# Entering rule: most negative reduced cost, ties to the lowest column id.
# Leaving rule: lexicographic ratio test against a fresh identity reference,
# which is anti-cycling and deterministic and copes with the massive
# degeneracy of the min-max programs (Bland stalls there).


class _Column:
    __slots__ = ("rows", "coefs", "cost")

    def __init__(self, rows, coefs, cost):
        self.rows = tuple(rows)
        self.coefs = tuple(coefs)
        self.cost = int(cost)


class _Simplex:
    def __init__(self, nrows: int, columns: list[_Column], b: Sequence[Fraction]):
        self.nrows = nrows
        self.columns = columns
        self.b = [Fraction(x) for x in b]

    def solve(
        self,
        *,
        basis: list[int],
        banned=(),
        minimize: bool = True,
        stop_at_zero: bool = False,
        pivot_cap: int = 200_000,
        binv: Optional[list[list[Fraction]]] = None,
    ):
        """Primal simplex from the given basis.

        Returns (objective, basis, binv, xb, y).  ``banned`` columns never
        enter (used to freeze artificials after phase 1).
        """
        n = self.nrows
        cols = self.columns
        if binv is None:
            binv = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
            xb = list(self.b)
        else:
            binv = [row[:] for row in binv]
            xb = self._basic_values(binv)
        basis = list(basis)
        banned = set(banned)
        # Fresh lexicographic reference: rows (xb_i | Q_i) with Q starting at
        # identity are lex-positive and stay so under the lex ratio rule.
        Q = [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]

        for _pivot in range(pivot_cap):
            obj = sum(
                (cols[basis[i]].cost * xb[i] for i in range(n) if cols[basis[i]].cost),
                start=_ZERO,
            )
            if stop_at_zero and obj == 0:
                return obj, basis, binv, xb, self._multipliers(basis, binv)

            y = self._multipliers(basis, binv)
            scale = lcm(*(q.denominator for q in y)) if n else 1
            yi = [int(q * scale) for q in y]
            in_basis = set(basis)
            entering = -1
            best_t = 0
            for j, col in enumerate(cols):
                if j in in_basis or j in banned:
                    continue
                num = 0
                for r, c in zip(col.rows, col.coefs):
                    num += yi[r] * c
                # reduced cost rc_j = cost_j - num/scale; t = rc_j * scale
                t = col.cost * scale - num
                if minimize:
                    if t < best_t:
                        best_t, entering = t, j
                else:
                    if t > best_t:
                        best_t, entering = t, j
            if entering < 0:
                return obj, basis, binv, xb, y

            col = cols[entering]
            d = [_ZERO] * n
            for r, c in zip(col.rows, col.coefs):
                if c:
                    for i in range(n):
                        v = binv[i][r]
                        if v:
                            d[i] += c * v

            leave = -1
            for i in range(n):
                if d[i] <= 0:
                    continue
                if leave < 0 or self._lex_less(i, leave, d, xb, Q):
                    leave = i
            if leave < 0:
                raise ArithmeticError("unbounded direction in simplex")

            piv = d[leave]
            inv_piv = 1 / piv
            binv[leave] = [v * inv_piv for v in binv[leave]]
            Q[leave] = [v * inv_piv for v in Q[leave]]
            xb[leave] *= inv_piv
            row_b, row_q, xl = binv[leave], Q[leave], xb[leave]
            for i in range(n):
                if i == leave:
                    continue
                f = d[i]
                if f:
                    binv[i] = [a - f * c for a, c in zip(binv[i], row_b)]
                    Q[i] = [a - f * c for a, c in zip(Q[i], row_q)]
                    xb[i] -= f * xl
            basis[leave] = entering
        raise BudgetExceeded(f"simplex pivot cap {pivot_cap} exceeded")

    @staticmethod
    def _lex_less(i, j, d, xb, Q):
        """(xb_i|Q_i)/d_i < (xb_j|Q_j)/d_j lexicographically (d_i, d_j > 0)."""
        a = xb[i] * d[j]
        b = xb[j] * d[i]
        if a != b:
            return a < b
        qi, qj = Q[i], Q[j]
        di, dj = d[i], d[j]
        for a_, b_ in zip(qi, qj):
            lhs = a_ * dj
            rhs = b_ * di
            if lhs != rhs:
                return lhs < rhs
        return False

    def repair_basis(self, basis, binv, unwanted: set, allowed: list):
        """Pivot zero-valued ``unwanted`` basic columns out wherever some
        ``allowed`` column crosses their row; rows with no crossing are inert
        (no entering column can ever move them) and are left in place."""
        n = self.nrows
        xb = self._basic_values(binv)
        for i in range(n):
            if basis[i] not in unwanted:
                continue
            if xb[i] != 0:
                raise ArithmeticError("repair expects zero-valued unwanted basics")
            in_basis = set(basis)
            for j in allowed:
                if j in in_basis:
                    continue
                col = self.columns[j]
                dij = _ZERO
                for r, c in zip(col.rows, col.coefs):
                    if c and binv[i][r]:
                        dij += c * binv[i][r]
                if dij == 0:
                    continue
                # theta = xb[i]/dij = 0: basis swap leaves the solution as is
                binv[i] = [v / dij for v in binv[i]]
                self._eliminate(binv, i, col, n)
                basis[i] = j
                break
        return basis, binv

    def _eliminate(self, binv, pivot_row, col, n):
        row_b = binv[pivot_row]
        for t in range(n):
            if t == pivot_row:
                continue
            ft = _ZERO
            for r, c in zip(col.rows, col.coefs):
                if c and binv[t][r]:
                    ft += c * binv[t][r]
            if ft:
                binv[t] = [a - ft * b for a, b in zip(binv[t], row_b)]

    def _multipliers(self, basis, binv):
        n = self.nrows
        y = [_ZERO] * n
        for i in range(n):
            c = self.columns[basis[i]].cost
            if c:
                row = binv[i]
                for r in range(n):
                    if row[r]:
                        y[r] += c * row[r]
        return y

    def _basic_values(self, binv):
        return [
            sum((binv[i][r] * self.b[r] for r in range(self.nrows)), start=_ZERO)
            for i in range(self.nrows)
        ]


# -- LP columns ---------------------------------------------------------------
#
# Every constraint in these programs depends on a copy only through its
# vertex set, so the column universe is the supporting (2k-1)-sets, each
# carrying its least witness copy.  This quotients away pattern symmetry
# without changing any optimum or certificate.


SetList = list  # list[(vertices, TriangleCopy)]


def _sets(H: KGraph, sets, cap) -> SetList:
    if sets is None:
        sets = supporting_sets(H, cap=cap)
    return sets


def _set_columns(sets: SetList, cost) -> list[_Column]:
    return [_Column(vs, (1,) * len(vs), cost) for vs, _ in sets]


def _scale_to_integers(values: Sequence[Fraction]) -> tuple[int, ...]:
    denom = lcm(*(v.denominator for v in values)) if values else 1
    ints = [int(v * denom) for v in values]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _avoiding_sets(sets: SetList, B: KGraph) -> SetList:
    pair_set = set(B.edges)
    out = []
    for vs, witness in sets:
        if any(
            (vs[i], vs[j]) in pair_set
            for i in range(len(vs))
            for j in range(i + 1, len(vs))
        ):
            continue
        out.append((vs, witness))
    return out


# -- operations --------------------------------------------------------------


def perfect_fractional_tiling(
    H: KGraph,
    *,
    sets: Optional[SetList] = None,
    cap: int = DEFAULT_COPY_CAP,
    pivot_cap: int = 1_000_000,
):
    """Perfect fractional tiling of H, or a Farkas certificate of its absence.

    Exactly one of the two is returned; the certificate is validated against
    the full supporting-set list before being handed back.
    """
    sets = _sets(H, sets, cap)
    n = H.n
    m = len(sets)
    cols = _set_columns(sets, 0)
    art0 = m
    for r in range(n):
        cols.append(_Column((r,), (1,), 1))
    sx = _Simplex(n, cols, [_ONE] * n)
    obj, basis, _binv, xb, y = sx.solve(
        basis=list(range(art0, art0 + n)),
        minimize=True,
        stop_at_zero=True,
        pivot_cap=pivot_cap,
    )
    if obj == 0:
        weights: dict[TriangleCopy, Fraction] = {}
        for i, col_id in enumerate(basis):
            if col_id < m and xb[i] != 0:
                witness = sets[col_id][1]
                weights[witness] = weights.get(witness, _ZERO) + xb[i]
        return FractionalTiling(n, weights)
    coeffs = _scale_to_integers([-v for v in y])
    cert = FarkasCertificate(coeffs)
    check = verify_certificate(H, cert, sets=sets)
    if not check.valid:
        raise ArithmeticError(f"internal: extracted certificate fails: {check.reason}")
    return cert


@dataclass(frozen=True)
class CertificateCheck:
    valid: bool
    reason: str = ""
    violating_copy: Optional[TriangleCopy] = None


def verify_certificate(
    H: KGraph,
    cert: FarkasCertificate,
    *,
    sets: Optional[SetList] = None,
    cap: int = DEFAULT_COPY_CAP,
) -> CertificateCheck:
    """Exact check over the full copy universe; reports a violating copy."""
    if cert.n != H.n:
        raise InvalidDimension(f"certificate has {cert.n} entries, host has {H.n}")
    if cert.total() >= 0:
        return CertificateCheck(False, f"a.1 = {cert.total()} is not negative")
    sets = _sets(H, sets, cap)
    for vs, witness in sets:
        value = sum(cert.coeffs[v] for v in vs)
        if value < 0:
            return CertificateCheck(
                False, f"copy on {vs} has a.1_V = {value}", witness
            )
    return CertificateCheck(True)


def b_avoiding_fractional_tiling(
    H: KGraph,
    B: KGraph,
    *,
    cap: int = DEFAULT_COPY_CAP,
    pivot_cap: int = 1_000_000,
):
    """Same verdict restricted to copies spanning no pair of B.

    Returned certificates are valid for the avoiding family (not necessarily
    for all copies of H).
    """
    if B.k != 2 or B.n != H.n:
        raise InvalidDimension("B must be a 2-uniform graph on V(H)")
    sets = _avoiding_sets(supporting_sets(H, cap=cap), B)
    return perfect_fractional_tiling(H, sets=sets, pivot_cap=pivot_cap)


def packing_lp_value(
    H: KGraph,
    *,
    sets: Optional[SetList] = None,
    cap: int = DEFAULT_COPY_CAP,
    pivot_cap: int = 1_000_000,
) -> tuple[Fraction, FractionalTiling]:
    """Exact optimum of the fractional packing relaxation max sum(w), w(u) <= 1."""
    sets = _sets(H, sets, cap)
    n = H.n
    m = len(sets)
    cols = _set_columns(sets, 1)
    for r in range(n):
        cols.append(_Column((r,), (1,), 0))  # slack
    sx = _Simplex(n, cols, [_ONE] * n)
    obj, basis, _binv, xb, _y = sx.solve(
        basis=list(range(m, m + n)),
        minimize=False,
        pivot_cap=pivot_cap,
    )
    weights: dict[TriangleCopy, Fraction] = {}
    for i, col_id in enumerate(basis):
        if col_id < m and xb[i] != 0:
            witness = sets[col_id][1]
            weights[witness] = weights.get(witness, _ZERO) + xb[i]
    return obj, FractionalTiling(n, weights)


def min_max_pair_weight(
    H: KGraph,
    *,
    cap: int = DEFAULT_COPY_CAP,
    pivot_cap: int = 1_000_000,
):
    """Minimize, over perfect fractional tilings, the maximum pair weight.

    Returns (W*, tiling); if no perfect fractional tiling exists, the Farkas
    certificate is passed through instead.
    """
    sets = supporting_sets(H, cap=cap)
    first = perfect_fractional_tiling(H, sets=sets, pivot_cap=pivot_cap)
    if isinstance(first, FarkasCertificate):
        return first

    n = H.n
    m = len(sets)
    pairs = sorted(
        {
            (vs[i], vs[j])
            for vs, _ in sets
            for i in range(len(vs))
            for j in range(i + 1, len(vs))
        }
    )
    pair_row = {p: n + idx for idx, p in enumerate(pairs)}
    nrows = n + len(pairs)

    cols: list[_Column] = []
    for vs, _ in sets:
        rows = list(vs)
        coefs = [1] * len(vs)
        for i in range(len(vs)):
            for j in range(i + 1, len(vs)):
                rows.append(pair_row[(vs[i], vs[j])])
                coefs.append(1)
        cols.append(_Column(rows, coefs, 0))
    w_col = m
    cols.append(_Column(tuple(range(n, nrows)), (-1,) * len(pairs), 0))
    slack0 = m + 1
    for idx in range(len(pairs)):
        cols.append(_Column((n + idx,), (1,), 0))
    art0 = slack0 + len(pairs)
    for r in range(n):
        cols.append(_Column((r,), (1,), 1))

    b = [_ONE] * n + [_ZERO] * len(pairs)
    sx = _Simplex(nrows, cols, b)
    basis = list(range(art0, art0 + n)) + list(range(slack0, slack0 + len(pairs)))
    art = set(range(art0, art0 + n))
    obj, basis, binv, xb, _y = sx.solve(
        basis=basis,
        minimize=True,
        stop_at_zero=True,
        pivot_cap=pivot_cap,
    )
    if obj != 0:
        raise ArithmeticError("internal: phase 1 infeasible after feasibility check")

    # Phase 2: minimize W.  Pivot leftover artificials out of the basis (rows
    # they cannot leave are inert), then ban them from entering, so the
    # program explored is exactly the perfect-tiling polytope.
    basis, binv = sx.repair_basis(basis, binv, art, list(range(art0)))
    for c in cols:
        c.cost = 0
    cols[w_col].cost = 1
    _obj2, basis, binv, xb, _y = sx.solve(
        basis=basis,
        banned=art,
        minimize=True,
        pivot_cap=pivot_cap,
        binv=binv,
    )
    weights: dict[TriangleCopy, Fraction] = {}
    w_star = _ZERO
    for i, col_id in enumerate(basis):
        if col_id < m and xb[i] != 0:
            witness = sets[col_id][1]
            weights[witness] = weights.get(witness, _ZERO) + xb[i]
        elif col_id == w_col:
            w_star = xb[i]
        elif col_id in art and xb[i] != 0:
            raise ArithmeticError("internal: artificial drifted positive in phase 2")
    return w_star, FractionalTiling(n, weights)
