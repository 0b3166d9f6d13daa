"""Closed points of the SL2(C) character variety of a small Seifert manifold.

Abelian characters come from homomorphisms H_1(M) -> C^*, enumerated through the
Smith normal form of the abelianized relation matrix. Irreducible characters have
h acting as a central sign eps, and are fixed by the trace triple (x1, x2, x3).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm
from typing import Optional

from .cyclo import CycloNumber, cyclo_embed, two_cos
from .presentation import SeifertParams


# --------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(A: list[list[int]]):
    """Return (U, D, V) with U A V = D diagonal, d1 | d2 | ..., U and V unimodular."""
    m, n = len(A), len(A[0])
    D = [row[:] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(M, i, j):
        M[i], M[j] = M[j], M[i]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def add_row(M, src, dst, k):  # row dst += k * row src
        M[dst] = [a + k * b for a, b in zip(M[dst], M[src])]

    def add_col(M, src, dst, k):
        for row in M:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the remaining block as pivot
        nz = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(D, t, i)
        swap_rows(U, t, i)
        swap_cols(D, t, j)
        swap_cols(V, t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    k = D[i][t] // D[t][t]
                    add_row(D, t, i, -k)
                    add_row(U, t, i, -k)
                    if D[i][t]:
                        swap_rows(D, t, i)
                        swap_rows(U, t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    k = D[t][j] // D[t][t]
                    add_col(D, t, j, -k)
                    add_col(V, t, j, -k)
                    if D[t][j]:
                        swap_cols(D, t, j)
                        swap_cols(V, t, j)
                        done = False
            if done:
                # divisibility: the pivot must divide the rest of the block
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]]
                if bad:
                    i, _ = bad[0]
                    add_row(D, i, t, 1)
                    add_row(U, i, t, 1)
                    done = False
        if D[t][t] < 0:
            D[t] = [-a for a in D[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return U, D, V


def _matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def det3(A) -> int:
    return (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
            - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
            + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))


def relation_matrix(s: SeifertParams) -> list[list[int]]:
    """Abelianized relations on (h, c1, c2): p_i c_i = q_i h, with c3 = c1 + c2."""
    (p1, p2, p3), (q1, q2, q3) = s.p, s.q
    return [[-q1, p1, 0], [-q2, 0, p2], [-q3, p3, p3]]


@dataclass
class HomologyData:
    invariant_factors: list[int]
    order: Optional[int]  # None when infinite
    order_mod2: int
    # generator images in the invariant-factor basis: V^-1 columns, i.e. [h], [c1], [c2]
    # are expressed through homs: phi(g) = sum_k w_k * V[g][k]
    V: list[list[int]] = field(repr=False, default_factory=list)

    @property
    def exponent(self) -> int:
        return lcm(*[d for d in self.invariant_factors if d]) if self.invariant_factors else 1

    def to_json(self) -> dict:
        return {
            "invariant_factors": self.invariant_factors,
            "order": self.order,
            "order_mod2": self.order_mod2,
        }


class InfiniteHomology(ValueError):
    pass


def homology(s: SeifertParams) -> HomologyData:
    A = relation_matrix(s)
    U, D, V = smith_normal_form(A)
    assert _matmul(_matmul(U, A), V) == D
    factors = [D[i][i] for i in range(3)]
    nontrivial = [d for d in factors if d != 1]
    if 0 in factors:
        return HomologyData(nontrivial, None, 2 ** sum(1 for d in factors if d % 2 == 0), V)
    order = 1
    for d in factors:
        order *= d
    assert order == abs(det3(A))
    return HomologyData(nontrivial, order, 2 ** sum(1 for d in factors if d % 2 == 0), V)


# --------------------------------------------------------------------------
# character points


@dataclass
class CharacterPoint:
    coords: tuple  # 7 CycloNumbers, order u, x1, x2, x3, y1, y2, y3
    kind: str  # "abelian" | "irreducible"
    exceptional: bool
    witness: dict

    @property
    def N(self) -> int:
        return self.coords[0].N

    def complex_coords(self) -> list[complex]:
        return [complex(c) for c in self.coords]

    def key(self):
        """Rounded complex coordinates, for bucketing before exact comparison."""
        return tuple((round(z.real, 6) + 0.0, round(z.imag, 6) + 0.0) for z in self.complex_coords())

    def same_point(self, other: CharacterPoint) -> bool:
        return all(a == b for a, b in zip(self.coords, other.coords))

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "exceptional": self.exceptional,
            "witness": self.witness,
            "conductor": self.N,
            "coords": [c.to_json() for c in self.coords],
            "approx": [[round(z.real, 12), round(z.imag, 12)] for z in self.complex_coords()],
        }


def kappa(x1, x2, x3):
    return x1 * x1 + x2 * x2 + x3 * x3 - x1 * x2 * x3 - 4


def is_exceptional_coords(coords) -> bool:
    u, x1, x2, x3 = coords[:4]
    if not (u == 2 or u == -2):
        return False
    return all(not (x == 2 or x == -2) for x in (x1, x2, x3))


def _abelian_point(n: int, rh: int, r1: int, r2: int) -> CharacterPoint:
    """Character of phi with phi(h) = z^rh, phi(c_i) = z^r_i, z = exp(2 pi i / n)."""
    r3 = r1 + r2
    g = gcd(n, rh, r1, r2)
    N = n // g
    k = [(r // g) % N for r in (rh, r1, r2, r3)]
    kh, k1, k2, k3 = k
    coords = (
        two_cos(kh, N),
        two_cos(k1, N),
        two_cos(k2, N),
        two_cos(k3, N),
        two_cos(kh + k1, N),
        two_cos(kh + k2, N),
        two_cos(kh + k3, N),
    )
    witness = {"order": N, "m": kh, "a1": k1, "a2": k2}
    return CharacterPoint(coords, "abelian", is_exceptional_coords(coords), witness)


def abelian_homs(s: SeifertParams, hd: HomologyData | None = None) -> list[tuple[int, int, int, int]]:
    """All homomorphisms H_1 -> C^*, as (n, r_h, r_c1, r_c2) with values exp(2 pi i r / n)."""
    hd = hd or homology(s)
    if hd.order is None:
        raise InfiniteHomology("H_1 is infinite (Euler number zero)")
    A = relation_matrix(s)
    _, D, V = smith_normal_form(A)
    d = [D[i][i] for i in range(3)]
    n = lcm(*d)
    out = []
    ranges = [range(dk) for dk in d]
    for j0 in ranges[0]:
        for j1 in ranges[1]:
            for j2 in ranges[2]:
                # w_k = j_k / d_k, written over n
                w = [j0 * (n // d[0]), j1 * (n // d[1]), j2 * (n // d[2])]
                r = [sum(V[g][k] * w[k] for k in range(3)) % n for g in range(3)]
                out.append((n, r[0], r[1], r[2]))
    return out


def enumerate_abelian(s: SeifertParams, hd: HomologyData | None = None) -> list[CharacterPoint]:
    """One point per class {phi, phi^-1} of homomorphisms H_1 -> C^*."""
    seen = set()
    pts = []
    for n, rh, r1, r2 in abelian_homs(s, hd):
        key = (rh, r1, r2)
        inv = ((-rh) % n, (-r1) % n, (-r2) % n)
        if inv in seen:
            continue
        seen.add(key)
        pts.append(_abelian_point(n, rh, r1, r2))
    return pts


def root_classes(p: int, sign: int) -> list[int]:
    """Exponents k (mod 2p) of zeta = exp(2 pi i k / 2p) with zeta^p = sign, zeta != +-1, up to inversion."""
    parity = 0 if sign == 1 else 1
    return [k for k in range(1, p) if k % 2 == parity]


def enumerate_irreducible(s: SeifertParams, include_reducible: bool = False) -> list[CharacterPoint]:
    """Characters with h -> eps*I and c_i of finite order; kappa != 0 means irreducible.

    With ``include_reducible`` the kappa = 0 triples are kept too (tagged in the witness).
    """
    pts = []
    seen = set()
    for eps in (1, -1):
        classes = [root_classes(s.p[i], eps ** (s.q[i] % 2)) for i in range(3)]
        for k1 in classes[0]:
            for k2 in classes[1]:
                for k3 in classes[2]:
                    orders = [2 * s.p[i] // gcd(2 * s.p[i], k) for i, k in enumerate((k1, k2, k3))]
                    N = lcm(*orders)
                    ks = [k * N // (2 * s.p[i]) for i, k in enumerate((k1, k2, k3))]
                    xs = [two_cos(k, N) for k in ks]
                    kap = kappa(*xs)
                    if kap.is_zero() and not include_reducible:
                        continue
                    coords = (CycloNumber.from_rational(2 * eps, N), *xs, *[x * eps for x in xs])
                    key = (eps, k1, k2, k3)
                    if key in seen:
                        continue
                    seen.add(key)
                    witness = {"eps": eps, "order": N, "zeta": ks, "kappa_zero": kap.is_zero()}
                    pts.append(CharacterPoint(coords, "irreducible", False, witness))
    return pts


def p_plus(p: int) -> int:
    return (p + 1) // 2 - 1


def p_minus(p: int) -> int:
    return p // 2


def irreducible_term_literal(s: SeifertParams) -> int:
    """p1+ p2+ p3- + p1- p2- p3-, as printed in the count formula."""
    p1, p2, p3 = s.p
    return p_plus(p1) * p_plus(p2) * p_minus(p3) + p_minus(p1) * p_minus(p2) * p_minus(p3)


def irreducible_term_symmetric(s: SeifertParams) -> int:
    """p1+ p2+ p3+ + p1- p2- p3-: number of trace triples with h central (kappa unrestricted)."""
    p1, p2, p3 = s.p
    return p_plus(p1) * p_plus(p2) * p_plus(p3) + p_minus(p1) * p_minus(p2) * p_minus(p3)


class CensusMismatch(AssertionError):
    pass


@dataclass
class Census:
    params: SeifertParams
    homology: HomologyData
    abelian: list[CharacterPoint]
    irreducible: list[CharacterPoint]
    x_M: int
    count_formula_lhs: int
    count_formula_rhs: int  # with the printed p3- term
    count_formula_rhs_symmetric: int

    @property
    def points(self) -> list[CharacterPoint]:
        return self.abelian + self.irreducible

    @property
    def literal_formula_holds(self) -> bool:
        return self.count_formula_lhs == self.count_formula_rhs

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "homology": self.homology.to_json(),
            "abelian": [p.to_json() for p in self.abelian],
            "irreducible": [p.to_json() for p in self.irreducible],
            "x_M": self.x_M,
            "count_formula_lhs": self.count_formula_lhs,
            "count_formula_rhs": self.count_formula_rhs,
            "count_formula_rhs_symmetric": self.count_formula_rhs_symmetric,
        }


def _dedupe(points: list[CharacterPoint]) -> list[CharacterPoint]:
    buckets: dict = {}
    out = []
    for p in points:
        bucket = buckets.setdefault(p.key(), [])
        if any(p.same_point(q) for q in bucket):
            continue
        bucket.append(p)
        out.append(p)
    return out


def census(s: SeifertParams) -> Census:
    hd = homology(s)
    if hd.order is None:
        raise InfiniteHomology("Euler number must be nonzero: H_1 is infinite")
    ab = enumerate_abelian(s, hd)
    irr = enumerate_irreducible(s)
    if len(_dedupe(ab)) != len(ab):
        raise CensusMismatch("duplicate abelian characters")
    if len(_dedupe(irr)) != len(irr):
        raise CensusMismatch("duplicate irreducible characters")
    if len(_dedupe(ab + irr)) != len(ab) + len(irr):
        raise CensusMismatch("an irreducible character coincides with an abelian one")
    n_fixed = sum(1 for n, rh, r1, r2 in abelian_homs(s, hd)
                  if (2 * rh) % n == 0 and (2 * r1) % n == 0 and (2 * r2) % n == 0)
    if len(ab) * 2 != hd.order + n_fixed:
        raise CensusMismatch("abelian count differs from (|H1| + #2-torsion homs)/2")
    if n_fixed != hd.order_mod2:
        raise CensusMismatch("order-2 homomorphisms differ from |H1(M, Z/2)|")
    x_M = sum(1 for p in ab if p.exceptional)
    lhs = len(ab) + len(irr)
    half = (hd.order + hd.order_mod2) // 2
    rhs = irreducible_term_literal(s) + half - x_M
    rhs_sym = irreducible_term_symmetric(s) + half - x_M
    if lhs != rhs_sym:
        raise CensusMismatch(f"|X(M)| = {lhs} but the count formula gives {rhs_sym}")
    return Census(s, hd, ab, irr, x_M, lhs, rhs, rhs_sym)


def complex_point(pt: CharacterPoint) -> list[complex]:
    return [complex(c) for c in pt.coords]


__all__ = [
    "CharacterPoint",
    "Census",
    "HomologyData",
    "census",
    "enumerate_abelian",
    "enumerate_irreducible",
    "homology",
    "kappa",
    "smith_normal_form",
]
