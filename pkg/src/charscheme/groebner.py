"""Buchberger's algorithm over Q and dimensions of zero-dimensional quotient rings.

Monomials are packed into one Python int per monomial: eight bits per variable
(exponents must stay below 128) and, for graded orders, the total degree in the
high bits. Packing is chosen so that integer comparison is the monomial order,
multiplication is integer addition, and divisibility is a single guard-bit test.
Coefficients are gmpy2 rationals and basis elements are kept monic.

Pairs are pruned with the Gebauer-Moeller criteria and selected by sugar degree,
then lcm. The inputs are far from homogeneous (Chebyshev relations), and plain
smallest-lcm selection produced intermediate coefficients of 10^5 bits on some
manifolds whose final bases have single-digit coefficients.
"""
from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

import gmpy2
from gmpy2 import mpq

from .poly import NVARS, Poly

DEFAULT_BUDGET = 200000
BUDGET_ENV = "CHARSCHEME_GB_BUDGET"


def budget_from_env() -> int:
    """Pair budget, overridable through the CHARSCHEME_GB_BUDGET environment variable."""
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))

_BITS = 8
_EMAX = 127
_FIELDS = sum(1 << (_BITS * i) for i in range(NVARS))
_GUARD = sum(128 << (_BITS * i) for i in range(NVARS))
_LOW = (1 << (_BITS * NVARS)) - 1
_DEG_SHIFT = _BITS * NVARS


class GroebnerBudgetExceeded(RuntimeError):
    """Raised when the pair budget runs out; says nothing about the ideal itself."""


class MonomialOrder:
    """Packing of exponent vectors into ints for one monomial order."""

    def __init__(self, name: str):
        if name not in ("degrevlex", "deglex", "lex"):
            raise ValueError(f"unsupported monomial order {name!r}")
        self.name = name
        self.graded = name != "lex"
        self.reversed = name == "degrevlex"
        # packed value of the monomial 1
        self.one = _EMAX * _FIELDS if self.reversed else 0

    def encode(self, exps: Sequence[int]) -> int:
        if max(exps) > _EMAX:
            raise OverflowError("exponent too large for packed monomials")
        k = 0
        if self.reversed:
            for i, e in enumerate(exps):
                k |= (_EMAX - e) << (_BITS * i)
        else:
            for i, e in enumerate(exps):
                k |= e << (_BITS * (NVARS - 1 - i))
        if self.graded:
            k |= sum(exps) << _DEG_SHIFT
        return k

    def decode(self, k: int) -> tuple[int, ...]:
        if self.reversed:
            return tuple(_EMAX - ((k >> (_BITS * i)) & 0xFF) for i in range(NVARS))
        return tuple((k >> (_BITS * (NVARS - 1 - i))) & 0xFF for i in range(NVARS))

    def divides(self, a: int, b: int) -> bool:
        """a | b."""
        A, B = a & _LOW, b & _LOW
        if self.reversed:
            return ((A | _GUARD) - B) & _GUARD == _GUARD
        return ((B | _GUARD) - A) & _GUARD == _GUARD

    def lcm(self, a: int, b: int) -> int:
        ea, eb = self.decode(a), self.decode(b)
        return self.encode([max(x, y) for x, y in zip(ea, eb)])

    def coprime(self, a: int, b: int) -> bool:
        ea, eb = self.decode(a), self.decode(b)
        return all(x == 0 or y == 0 for x, y in zip(ea, eb))


_ORDERS: dict[str, MonomialOrder] = {}


def get_order(name: str) -> MonomialOrder:
    if name not in _ORDERS:
        _ORDERS[name] = MonomialOrder(name)
    return _ORDERS[name]


# internal polynomial: list of (packed monomial, mpq) in decreasing order


def _to_internal(p: Poly, order: MonomialOrder) -> list:
    terms = [(order.encode(m), mpq(c.numerator, c.denominator) if isinstance(c, Fraction) else mpq(c))
             for m, c in p.terms.items()]
    terms.sort(key=lambda t: t[0], reverse=True)
    return terms


def _to_poly(terms: Iterable, order: MonomialOrder) -> Poly:
    return Poly({order.decode(k): Fraction(int(c.numerator), int(c.denominator)) for k, c in terms})


def _monic(terms: list) -> list:
    lc = terms[0][1]
    if lc == 1:
        return terms
    inv = 1 / lc
    return [(k, c * inv) for k, c in terms]


class _Reducer:
    """A growing set of monic reducers with a divisor cache."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        self.lms: list[int] = []
        self.lows: list[int] = []
        self.tails: list[list] = []
        self.cache: dict[int, int] = {}

    def add(self, terms: list) -> int:
        self.lms.append(terms[0][0])
        self.lows.append(terms[0][0] & _LOW)
        self.tails.append(terms[1:])
        return len(self.lms) - 1

    def find(self, k: int, allowed=None) -> int:
        idx = self.cache.get(k)
        if idx is not None and (allowed is None or idx in allowed):
            return idx
        K = k & _LOW
        lows = self.lows
        if self.order.reversed:
            for i in range(len(lows)):
                if ((lows[i] | _GUARD) - K) & _GUARD == _GUARD:
                    if allowed is None or i in allowed:
                        if allowed is None:
                            self.cache[k] = i
                        return i
        else:
            KG = K | _GUARD
            for i in range(len(lows)):
                if (KG - lows[i]) & _GUARD == _GUARD:
                    if allowed is None or i in allowed:
                        if allowed is None:
                            self.cache[k] = i
                        return i
        return -1

    def reduce(self, terms: dict, full: bool = True, allowed=None) -> list:
        """Normal form of the polynomial held in ``terms`` (consumed)."""
        heap = [-k for k in terms]
        heapq.heapify(heap)
        rem = []
        lms, tails = self.lms, self.tails
        pop, push = heapq.heappop, heapq.heappush
        while heap:
            k = -pop(heap)
            c = terms.pop(k, None)
            if c is None:
                continue
            i = self.find(k, allowed)
            if i < 0:
                rem.append((k, c))
                if not full:
                    rest = sorted(terms.items(), key=lambda t: t[0], reverse=True)
                    return rem + rest
                continue
            shift = k - lms[i]
            for kt, ct in tails[i]:
                m = kt + shift
                v = terms.get(m)
                if v is None:
                    terms[m] = -c * ct
                    push(heap, -m)
                else:
                    v = v - c * ct
                    if v:
                        terms[m] = v
                    else:
                        del terms[m]
        return rem


def _spoly(f: list, g: list, L: int) -> dict:
    out: dict = {}
    sf = L - f[0][0]
    for k, c in f[1:]:
        out[k + sf] = c
    sg = L - g[0][0]
    for k, c in g[1:]:
        m = k + sg
        v = out.get(m)
        if v is None:
            out[m] = -c
        else:
            v = v - c
            if v:
                out[m] = v
            else:
                del out[m]
    return out


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis (monic, auto-reduced)."""

    basis: list[Poly]
    order: str = "degrevlex"
    stats: dict = field(default_factory=dict)
    _internal: list = field(default=None, repr=False)

    def __post_init__(self):
        if self._internal is None:
            mo = get_order(self.order)
            self._internal = [_to_internal(p, mo) for p in self.basis]

    def leading_monomials(self) -> list[tuple[int, ...]]:
        mo = get_order(self.order)
        return [mo.decode(t[0][0]) for t in self._internal]

    def _reducer(self) -> _Reducer:
        r = getattr(self, "_red", None)
        if r is None:
            r = _Reducer(get_order(self.order))
            for t in self._internal:
                r.add(t)
            self._red = r
        return r

    def normal_form(self, p: Poly) -> Poly:
        mo = get_order(self.order)
        terms = dict(_to_internal(p, mo))
        return _to_poly(self._reducer().reduce(terms), mo)

    def contains(self, p: Poly) -> bool:
        return not self.normal_form(p)

    @property
    def is_unit_ideal(self) -> bool:
        return any(all(e == 0 for e in m) for m in self.leading_monomials())

    def __len__(self) -> int:
        return len(self.basis)

    @property
    def max_degree(self) -> int:
        return max((p.total_degree for p in self.basis), default=0)


def groebner_compute(gens, order: str = "degrevlex", budget: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    ``gens`` is a list of :class:`Poly` or an object with a ``polys`` attribute.
    Raises :class:`GroebnerBudgetExceeded` after ``budget`` S-pair reductions.
    """
    polys = list(gens.polys if hasattr(gens, "polys") else gens)
    if not polys:
        raise ValueError("empty generator list")
    budget = budget_from_env() if budget is None else budget
    mo = get_order(order)
    red = _Reducer(mo)
    all_polys: list[list] = []
    current: list[int] = []
    pairs: list[tuple[int, int, int, int]] = []  # heap of (sugar, lcm, i, j)
    sugar: list[int] = []

    def deg(k: int) -> int:
        return sum(mo.decode(k))
    stats = {"pairs": 0, "zero_reductions": 0, "product_criterion": 0}

    def insert(terms: list, sug: int) -> None:
        nonlocal pairs, current
        h = red.add(terms)
        all_polys.append(terms)
        sugar.append(sug)
        lm_h = terms[0][0]
        # Gebauer-Moeller update
        C = list(current)
        lcm_h = {g: mo.lcm(lm_h, all_polys[g][0][0]) for g in C}
        D: list[int] = []
        while C:
            g1 = C.pop()
            L1 = lcm_h[g1]
            if mo.coprime(lm_h, all_polys[g1][0][0]):
                D.append(g1)
                continue
            if any(mo.divides(lcm_h[g2], L1) for g2 in C) or any(mo.divides(lcm_h[g2], L1) for g2 in D):
                continue
            D.append(g1)
        new_pairs = []
        for g in D:
            if mo.coprime(lm_h, all_polys[g][0][0]):
                stats["product_criterion"] += 1
                continue
            L = lcm_h[g]
            dL = deg(L)
            s_pair = max(sugar[g] + dL - deg(all_polys[g][0][0]), sug + dL - deg(lm_h))
            new_pairs.append((s_pair, L, g, h))
        kept = []
        for sp, L, i, j in pairs:
            if mo.divides(lm_h, L):
                li = mo.lcm(all_polys[i][0][0], lm_h)
                lj = mo.lcm(all_polys[j][0][0], lm_h)
                if li != L and lj != L:
                    continue
            kept.append((sp, L, i, j))
        kept.extend(new_pairs)
        heapq.heapify(kept)
        pairs = kept
        current = [g for g in current if not mo.divides(lm_h, all_polys[g][0][0])] + [h]

    # seed with the inter-reduced input
    for p in sorted(polys, key=lambda q: q.total_degree):
        if not p:
            continue
        t = red.reduce(dict(_to_internal(p, mo)))
        if t:
            insert(_monic(t), max(deg(k) for k, _ in t))

    while pairs:
        sp, L, i, j = heapq.heappop(pairs)
        stats["pairs"] += 1
        if stats["pairs"] > budget:
            raise GroebnerBudgetExceeded(f"pair budget {budget} exceeded")
        s = _spoly(all_polys[i], all_polys[j], L)
        if not s:
            stats["zero_reductions"] += 1
            continue
        t = red.reduce(s)
        if not t:
            stats["zero_reductions"] += 1
            continue
        insert(_monic(t), sp)

    # minimal basis, then tail reduction
    lms = {g: all_polys[g][0][0] for g in current}
    minimal = []
    for g in sorted(current, key=lambda g: lms[g]):
        if any(mo.divides(lms[m], lms[g]) for m in minimal):
            continue
        minimal.append(g)
    final = _Reducer(mo)
    for g in minimal:
        final.add(all_polys[g])
    reduced = []
    allowed_all = set(range(len(minimal)))
    for idx, g in enumerate(minimal):
        terms = all_polys[g]
        tail = final.reduce(dict(terms[1:]), allowed=allowed_all - {idx})
        reduced.append([terms[0]] + tail)
    reduced.sort(key=lambda t: t[0][0])
    stats["size"] = len(reduced)
    return GroebnerBasis([_to_poly(t, mo) for t in reduced], order, stats, reduced)


def normal_form(p: Poly, gb: GroebnerBasis) -> Poly:
    return gb.normal_form(p)


def s_polynomials_reduce_to_zero(gb: GroebnerBasis) -> bool:
    """Buchberger's criterion, checked directly on every pair of the basis."""
    mo = get_order(gb.order)
    red = gb._reducer()
    polys = gb._internal
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            L = mo.lcm(polys[i][0][0], polys[j][0][0])
            s = _spoly(polys[i], polys[j], L)
            if s and red.reduce(s):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    mo = get_order(gb.order)
    polys = gb._internal
    for i, f in enumerate(polys):
        if f[0][1] != 1:
            return False
        for j, g in enumerate(polys):
            if i != j and any(mo.divides(g[0][0], k) for k, _ in f):
                return False
    return True


def standard_monomials(gb: GroebnerBasis, limit: int | None = None) -> list[tuple[int, ...]] | None:
    """Monomials divisible by no leading monomial; None when there are infinitely many."""
    lms = gb.leading_monomials()
    bound = [None] * NVARS
    for m in lms:
        nz = [i for i, e in enumerate(m) if e]
        if len(nz) == 1:
            i = nz[0]
            bound[i] = m[i] if bound[i] is None else min(bound[i], m[i])
        elif not nz:
            return []
    if any(b is None for b in bound):
        return None

    def standard(e) -> bool:
        return not any(all(a <= b for a, b in zip(m, e)) for m in lms)

    out: list[tuple[int, ...]] = []

    def walk(i: int, e: list[int]) -> None:
        if i == NVARS:
            out.append(tuple(e))
            if limit is not None and len(out) > limit:
                raise OverflowError("too many standard monomials")
            return
        for k in range(bound[i]):
            e[i] = k
            if not standard(e):
                break
            walk(i + 1, e)
        e[i] = 0

    walk(0, [0] * NVARS)
    return out


def quotient_dimension(gb: GroebnerBasis) -> int | float:
    """dim_Q of Q[u, x, y]/I; ``math.inf`` when the ideal is not zero-dimensional."""
    sm = standard_monomials(gb)
    if sm is None:
        return math.inf
    return len(sm)
