"""Chebyshev polynomials T_n, S_n over the integers, for every integer n.

    T_0 = 2, T_1 = X, T_{n+1} = X T_n - T_{n-1}
    S_0 = 0, S_1 = 1, S_{n+1} = X S_n - S_{n-1}

with T_{-n} = T_n and S_{-n} = -S_n.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, NamedTuple


@dataclass(frozen=True)
class IntPoly:
    """Univariate polynomial with integer coefficients, ``coeffs[k]`` multiplies X^k."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(a) for a in c))

    @classmethod
    def constant(cls, a: int) -> IntPoly:
        return cls((a,))

    @classmethod
    def X(cls) -> IntPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return IntPoly(tuple((a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)))

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-a for a in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(tuple(other * a for a in self.coeffs))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPoly(tuple(out))

    __rmul__ = __mul__

    def shift(self) -> IntPoly:
        """Multiply by X."""
        return IntPoly((0,) + self.coeffs) if self.coeffs else self

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(k * a for k, a in enumerate(self.coeffs) if k > 0))

    def __call__(self, x: Any, one: Any = 1) -> Any:
        """Horner evaluation at ``x``; works for any ring element supporting + and *."""
        acc = 0 * one
        for a in reversed(self.coeffs):
            acc = acc * x + a * one
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = abs(a)
            if k == 0:
                body = str(mag)
            else:
                mono = "X" if k == 1 else f"X^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _forward(seed0: IntPoly, seed1: IntPoly, n: int) -> IntPoly:
    if n == 0:
        return seed0
    prev, cur = seed0, seed1
    for _ in range(n - 1):
        prev, cur = cur, cur.shift() - prev
    return cur


@lru_cache(maxsize=None)
def cheb_T(n: int) -> IntPoly:
    """First-kind Chebyshev polynomial T_n, with T_{-n} = T_n."""
    n = abs(n)
    return _forward(IntPoly.constant(2), IntPoly.X(), n)


@lru_cache(maxsize=None)
def cheb_S(n: int) -> IntPoly:
    """Second-kind Chebyshev polynomial S_n, with S_{-n} = -S_n."""
    if n < 0:
        return -cheb_S(-n)
    return _forward(IntPoly(), IntPoly.constant(1), n)


def cheb_backward(kind: str, n: int) -> IntPoly:
    """Run the recurrence backwards, P_{n-1} = X P_n - P_{n+1}, down to a negative index.

    Only used to cross-check the symmetry rules used by :func:`cheb_T`/:func:`cheb_S`.
    """
    if n >= 0:
        return cheb_T(n) if kind == "T" else cheb_S(n)
    if kind == "T":
        nxt, cur = IntPoly.X(), IntPoly.constant(2)
    else:
        nxt, cur = IntPoly.constant(1), IntPoly()
    for _ in range(-n):
        nxt, cur = cur, cur.shift() - nxt
    return cur


def cheb_derivative(p: IntPoly) -> IntPoly:
    return p.derivative()


class SpecialValues(NamedTuple):
    S_n_x: Any
    S_nplus1_x: Any
    S_nminus1_x: Any
    S_n_2eps: int
    dS_n_x: Any
    dS_nplus1_x: Any
    dS_nminus1_x: Any


def cheb_special_values(n: int, eps: int, zeta) -> SpecialValues:
    """Closed forms of S_n, S_{n+-1} and their derivatives at x = zeta + 1/zeta.

    Requires zeta^n = eps, zeta != +-1; ``zeta`` is a :class:`~charscheme.cyclo.CycloNumber`.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    one = zeta.one()
    if zeta == one or zeta == -one:
        raise ValueError("zeta = +-1 makes x^2 - 4 vanish")
    if zeta ** n != eps * one:
        raise ValueError("zeta^n must equal eps")
    x = zeta + zeta.inverse()
    denom = (x * x - 4).inverse()
    return SpecialValues(
        S_n_x=0 * one,
        S_nplus1_x=eps * one,
        S_nminus1_x=-eps * one,
        S_n_2eps=n * eps ** (n - 1),
        dS_n_x=denom * (2 * n * eps),
        dS_nplus1_x=denom * x * (n * eps),
        dS_nminus1_x=denom * x * (n * eps),
    )
