"""Sparse polynomials with rational coefficients in the trace coordinates.

Variables are fixed, in this order: u, x1, x2, x3, y1, y2, y3, where
u = tr(h), x_i = tr(c_i), y_i = tr(h c_i) and c3 = c1 c2.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .cheby import IntPoly

VARS = ("u", "x1", "x2", "x3", "y1", "y2", "y3")
NVARS = len(VARS)
_INDEX = {name: i for i, name in enumerate(VARS)}
ZERO_EXP = (0,) * NVARS

Monomial = tuple  # 7 nonnegative ints


def var_index(v) -> int:
    if isinstance(v, int):
        if not 0 <= v < NVARS:
            raise ValueError(f"variable index out of range: {v}")
        return v
    try:
        return _INDEX[v]
    except KeyError:
        raise ValueError(f"unknown variable {v!r}") from None


# monomial orders: a key function, larger key = larger monomial
def degrevlex_key(m: Monomial) -> tuple:
    return (sum(m),) + tuple(-e for e in reversed(m))


def deglex_key(m: Monomial) -> tuple:
    return (sum(m),) + tuple(m)


def lex_key(m: Monomial) -> tuple:
    return tuple(m)


ORDERS: dict[str, Callable[[Monomial], tuple]] = {
    "degrevlex": degrevlex_key,
    "deglex": deglex_key,
    "lex": lex_key,
}


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class Poly:
    """Immutable sparse polynomial {exponent tuple: nonzero coefficient}."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    if len(m) != NVARS:
                        raise ValueError("exponent vectors have length 7")
                    clean[tuple(m)] = _norm(c)
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> Poly:
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> Poly:
        return cls({ZERO_EXP: c})

    @classmethod
    def var(cls, v) -> Poly:
        e = [0] * NVARS
        e[var_index(v)] = 1
        return cls._raw({tuple(e): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c=1) -> Poly:
        return cls({tuple(exps): c})

    # ------------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _coerce(self, other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({})
            return Poly._raw({m: _norm(c * other) for m, c in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2], m1[3] + m2[3],
                     m1[4] + m2[4], m1[5] + m2[5], m1[6] + m2[6])
                out[m] = out.get(m, 0) + c1 * c2
        return Poly._raw({m: _norm(c) for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # ------------------------------------------------------------------
    @property
    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, v) -> int:
        i = var_index(v)
        return max((m[i] for m in self.terms), default=-1)

    def coefficient(self, v, k: int) -> Poly:
        """Coefficient of v^k, as a polynomial in the remaining variables."""
        i = var_index(v)
        out = {}
        for m, c in self.terms.items():
            if m[i] == k:
                mm = list(m)
                mm[i] = 0
                out[tuple(mm)] = c
        return Poly._raw(out)

    def coeff_of(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def leading_term(self, order: str = "degrevlex"):
        key = ORDERS[order]
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def sorted_terms(self, order: str = "degrevlex") -> list:
        key = ORDERS[order]
        return sorted(self.terms.items(), key=lambda mc: key(mc[0]), reverse=True)

    def monic(self, order: str = "degrevlex") -> Poly:
        _, c = self.leading_term(order)
        return self * (Fraction(1) / c)

    def partial(self, v) -> Poly:
        i = var_index(v)
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            if e:
                mm = list(m)
                mm[i] = e - 1
                out[tuple(mm)] = c * e
        return Poly._raw(out)

    def gradient(self) -> list[Poly]:
        return [self.partial(i) for i in range(NVARS)]

    def eval(self, point: Sequence, zero=None, powers: list | None = None):
        """Evaluate at a point given as 7 ring elements (CycloNumber, Fraction, complex...).

        ``powers`` may be a list of 7 empty lists shared between calls at the same point.
        """
        if len(point) != NVARS:
            raise ValueError("a point has 7 coordinates")
        _check_conductors(point)
        if zero is None:
            zero = point[0] * 0
        cache: list[list] = powers if powers is not None else [[] for _ in range(NVARS)]

        def power(i: int, e: int):
            pw = cache[i]
            if not pw:
                pw.append(point[i] * 0 + 1)
            while len(pw) <= e:
                pw.append(pw[-1] * point[i])
            return pw[e]

        acc = zero
        for m, c in self.terms.items():
            t = None
            for i, e in enumerate(m):
                if e:
                    f = power(i, e)
                    t = f if t is None else t * f
            if t is None:
                acc = acc + c
            else:
                acc = acc + t * c
        return acc

    def subs(self, v, q: Poly) -> Poly:
        """Substitute polynomial ``q`` for variable ``v``."""
        i = var_index(v)
        by_power: dict[int, dict] = {}
        for m, c in self.terms.items():
            mm = list(m)
            e = mm[i]
            mm[i] = 0
            by_power.setdefault(e, {})[tuple(mm)] = c
        out = Poly()
        qpow = {0: Poly.const(1)}
        for e in sorted(by_power):
            while max(qpow) < e:
                k = max(qpow)
                qpow[k + 1] = qpow[k] * q
            out = out + Poly._raw(by_power[e]) * qpow[e]
        return out

    def rename(self, perm: Sequence[int]) -> Poly:
        """Permute variables: variable j becomes variable perm[j]."""
        out = {}
        for m, c in self.terms.items():
            mm = [0] * NVARS
            for j, e in enumerate(m):
                mm[perm[j]] += e
            out[tuple(mm)] = c
        return Poly._raw(out)

    # ------------------------------------------------------------------
    def __str__(self) -> str:
        return self.render()

    def render(self, order: str = "degrevlex") -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                VARS[i] if e == 1 else f"{VARS[i]}^{e}" for i, e in enumerate(m) if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for s, b in pieces[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self.render()})"

    def to_json(self) -> list:
        return [[list(m), str(c)] for m, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, data: Iterable) -> Poly:
        return cls({tuple(m): Fraction(c) for m, c in data})


def _check_conductors(point: Sequence) -> None:
    ns = {getattr(x, "N", None) for x in point} - {None}
    if len(ns) > 1:
        raise ValueError(f"conductor mismatch among coordinates: {sorted(ns)}")


def poly_arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_partial(p: Poly, v) -> Poly:
    return p.partial(v)


def poly_eval(p: Poly, point: Sequence):
    return p.eval(point)


def compose(f: IntPoly, q: Poly) -> Poly:
    """f(q) for a univariate integer polynomial f."""
    acc = Poly()
    for a in reversed(f.coeffs):
        acc = acc * q + a
    return acc


u, x1, x2, x3, y1, y2, y3 = (Poly.var(v) for v in VARS)
X = (None, x1, x2, x3)
Y = (None, y1, y2, y3)


def parse_poly(text: str) -> Poly:
    """Parse a polynomial written with the seven variable names, + - * ^ and parentheses."""
    import ast

    namespace = {name: Poly.var(name) for name in VARS}
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div):
                if isinstance(b, Poly):
                    bc = b.terms.get(ZERO_EXP) if len(b.terms) == 1 else None
                    if bc is None:
                        raise ValueError("division only by constants")
                    b = bc
                return a * Fraction(1) / b if not isinstance(a, Poly) else a * (Fraction(1) / Fraction(b))
            if isinstance(node.op, ast.Pow):
                if not isinstance(b, int):
                    raise ValueError("exponents must be integer literals")
                return a ** b
        if isinstance(node, ast.UnaryOp):
            val = ev(node.operand)
            if isinstance(node.op, ast.USub):
                return -val
            if isinstance(node.op, ast.UAdd):
                return val
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name) and node.id in namespace:
            return namespace[node.id]
        raise ValueError(f"cannot parse polynomial: {text!r}")

    res = ev(tree)
    return res if isinstance(res, Poly) else Poly.const(res)
