"""Exact arithmetic in cyclotomic fields Q(zeta_N) and linear algebra over them.

An element is stored as an integer numerator polynomial (degree < phi(N)) over a
positive common denominator, reduced modulo the N-th cyclotomic polynomial.
"""
from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

import gmpy2
from gmpy2 import mpq


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _exact_div(a: list[int], b: list[int]) -> list[int]:
    # b monic
    a = a[:]
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for j, bj in enumerate(b):
                if bj:
                    a[k - db + j] -= c * bj
    assert not any(a[:db]), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def _phi_tail(n: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """Degree of Phi_n and the sparse list of its non-leading coefficients."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    return deg, tuple((j, c) for j, c in enumerate(phi[:-1]) if c)


def _reduce(coeffs: list[int], n: int) -> list[int]:
    deg, tail = _phi_tail(n)
    c = coeffs
    for k in range(len(c) - 1, deg - 1, -1):
        a = c[k]
        if a:
            c[k] = 0
            base = k - deg
            for j, pj in tail:
                c[base + j] -= a * pj
    del c[deg:]
    return c


def _kronecker_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    la, lb = len(a), len(b)
    if la == 0 or lb == 0:
        return []
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * (la + lb - 1)
    bits = (ma * mb * min(la, lb)).bit_length() + 2
    A = 0
    for x in reversed(a):
        A = (A << bits) + x
    B = 0
    for x in reversed(b):
        B = (B << bits) + x
    C = A * B
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    full = 1 << bits
    out = []
    for _ in range(la + lb - 1):
        r = C & mask
        if r >= half:
            r -= full
        out.append(r)
        C = (C - r) >> bits
    return out


class CycloNumber:
    """An element of Q(zeta_N)."""

    __slots__ = ("N", "num", "den", "_hash")

    def __init__(self, N: int, num: Iterable[int] = (), den: int = 1, *, reduced: bool = False):
        if N < 1:
            raise ValueError("conductor must be positive")
        c = [int(x) for x in num]
        if not reduced:
            c = _reduce(c, N)
        while c and c[-1] == 0:
            c.pop()
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den = -den
            c = [-x for x in c]
        g = den
        for x in c:
            g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            c = [x // g for x in c]
            den //= g
        if not c:
            den = 1
        self.N = N
        self.num = tuple(c)
        self.den = den
        self._hash = None

    # constructors -----------------------------------------------------
    @classmethod
    def from_rational(cls, q, N: int) -> CycloNumber:
        q = Fraction(q)
        return cls(N, (q.numerator,), q.denominator, reduced=True)

    @classmethod
    def zeta(cls, N: int, k: int = 1) -> CycloNumber:
        return cyclo_embed(k, N)

    def one(self) -> CycloNumber:
        return CycloNumber(self.N, (1,), reduced=True)

    def zero(self) -> CycloNumber:
        return CycloNumber(self.N, (), reduced=True)

    @property
    def degree(self) -> int:
        return _phi_tail(self.N)[0]

    # coercion ---------------------------------------------------------
    def _coerce(self, other) -> Optional[CycloNumber]:
        if isinstance(other, CycloNumber):
            if other.N != self.N:
                raise ValueError(f"conductor mismatch: {self.N} vs {other.N}")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(other, self.N)
        try:
            import gmpy2  # noqa: F401

            if type(other).__name__ in ("mpz", "mpq"):
                return CycloNumber.from_rational(Fraction(int(other.numerator), int(other.denominator)), self.N)
        except ImportError:  # pragma: no cover
            pass
        return None

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.num, o.num
        da, db = self.den, o.den
        n = max(len(a), len(b))
        if da == db:
            c = [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)]
            return CycloNumber(self.N, c, da, reduced=True)
        c = [(a[k] * db if k < len(a) else 0) + (b[k] * da if k < len(b) else 0) for k in range(n)]
        return CycloNumber(self.N, c, da * db, reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.N, [-x for x in self.num], self.den, reduced=True)

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
        if isinstance(other, int):
            return CycloNumber(self.N, [other * x for x in self.num], self.den, reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.zero()
        if len(o.num) == 1:
            c = [o.num[0] * x for x in self.num]
            return CycloNumber(self.N, c, self.den * o.den, reduced=True)
        if len(self.num) == 1:
            c = [self.num[0] * x for x in o.num]
            return CycloNumber(self.N, c, self.den * o.den, reduced=True)
        c = _reduce(_kronecker_mul(self.num, o.num), self.N)
        return CycloNumber(self.N, c, self.den * o.den, reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> CycloNumber:
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        if len(self.num) == 1:
            return CycloNumber(self.N, (self.den,), self.num[0], reduced=True)
        # extended Euclid: s*self + t*Phi = g (a nonzero constant), Phi irreducible
        r0 = [mpq(x) for x in cyclotomic_poly(self.N)]
        r1 = [mpq(x, self.den) for x in self.num]
        s0: list = []
        s1 = [mpq(1)]
        while len(r1) > 1:
            q, r = _divmod_q(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _sub_q(s0, _mul_q(q, s1))
        c = r1[0]
        inv = [x / c for x in s1]
        den = 1
        for x in inv:
            den = lcm(den, x.denominator)
        return CycloNumber(self.N, [int(x * den) for x in inv], int(den))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            if other.N != self.N:
                m = lcm(self.N, other.N)
                a, b = self.lift(m), other.lift(m)
                return a.num == b.num and a.den == b.den
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if q == 0:
                return not self.num
            return self.num == (q.numerator,) and self.den == q.denominator
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.N, self.num, self.den))
        return self._hash

    # misc -------------------------------------------------------------
    def rational(self) -> Optional[Fraction]:
        """The value as a Fraction when it lies in Q, else None."""
        if len(self.num) <= 1:
            return Fraction(self.num[0] if self.num else 0, self.den)
        return None

    def lift(self, M: int) -> CycloNumber:
        """Re-express in Q(zeta_M) for a multiple M of N."""
        if M % self.N:
            raise ValueError(f"{M} is not a multiple of {self.N}")
        if M == self.N:
            return self
        step = M // self.N
        c = [0] * (step * max(len(self.num) - 1, 0) + 1)
        for k, x in enumerate(self.num):
            c[k * step] = x
        return CycloNumber(M, c, self.den)

    def conjugate(self) -> CycloNumber:
        """Image under zeta -> zeta^-1."""
        acc = self.zero()
        for k, x in enumerate(self.num):
            if x:
                acc = acc + cyclo_embed(-k, self.N) * x
        return acc * Fraction(1, self.den)

    def __complex__(self) -> complex:
        z = cmath.exp(2j * cmath.pi / self.N)
        return complex(sum(x * z ** k for k, x in enumerate(self.num)) / self.den)

    def __repr__(self) -> str:
        if not self.num:
            return "0"
        terms = []
        for k, x in enumerate(self.num):
            if x == 0:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            terms.append(f"{x}{'*' + mono if mono else ''}")
        body = " + ".join(terms).replace("+ -", "- ")
        if self.den != 1:
            body = f"({body})/{self.den}"
        return f"{body} [N={self.N}]"

    def to_json(self) -> dict:
        return {"N": self.N, "num": list(self.num), "den": self.den}

    @classmethod
    def from_json(cls, d: dict) -> CycloNumber:
        return cls(d["N"], d["num"], d["den"], reduced=True)


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _divmod_q(a: list, b: list):
    a = a[:]
    db = len(b) - 1
    lead = b[-1]
    q = [mpq(0)] * max(len(a) - db, 1)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k] / lead
        if c:
            q[k - db] = c
            for j, bj in enumerate(b):
                a[k - db + j] -= c * bj
    return _trim(q), _trim(a[:db])


def _mul_q(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _sub_q(a: list, b: list) -> list:
    n = max(len(a), len(b))
    return _trim([(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)])


def cyclo_embed(k: int, N: int) -> CycloNumber:
    """zeta_N^k, reduced modulo Phi_N."""
    if N < 1:
        raise ValueError("conductor must be positive")
    k %= N
    return CycloNumber(N, [0] * k + [1])


def cyclo_const(q, N: int) -> CycloNumber:
    return CycloNumber.from_rational(q, N)


def two_cos(k: int, N: int) -> CycloNumber:
    """zeta_N^k + zeta_N^-k."""
    return cyclo_embed(k, N) + cyclo_embed(-k, N)


# --------------------------------------------------------------------------
# linear algebra


class CycloMatrix:
    """Rectangular matrix over Q(zeta_N)."""

    def __init__(self, rows: Sequence[Sequence], N: int):
        self.N = N
        self.rows = [[_as_cyclo(x, N) for x in row] for row in rows]
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix")
        self.nrows = len(self.rows)
        self.ncols = widths.pop() if widths else 0

    @classmethod
    def zeros(cls, r: int, c: int, N: int) -> CycloMatrix:
        return cls([[0] * c for _ in range(r)], N)

    @classmethod
    def identity(cls, n: int, N: int) -> CycloMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], N)

    def transpose(self) -> CycloMatrix:
        return CycloMatrix([list(col) for col in zip(*self.rows)], self.N) if self.rows else CycloMatrix([], self.N)

    def matvec(self, v: Sequence[CycloNumber]) -> list[CycloNumber]:
        if len(v) != self.ncols:
            raise ValueError("dimension mismatch")
        out = []
        for row in self.rows:
            acc = CycloNumber(self.N, ())
            for a, x in zip(row, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]


def _as_cyclo(x, N: int) -> CycloNumber:
    if isinstance(x, CycloNumber):
        if x.N != N:
            raise ValueError(f"conductor mismatch: {x.N} vs {N}")
        return x
    return CycloNumber.from_rational(x, N)


def _size(x: CycloNumber) -> tuple[int, int]:
    return (sum(1 for c in x.num if c), max((abs(c) for c in x.num), default=0).bit_length() + x.den.bit_length())


def _echelon(rows: list[list[CycloNumber]], ncols: int, pivot_limit: int | None = None):
    """Reduced row echelon form, built one row at a time.

    On return ``rows`` holds the nonzero reduced rows, each with a 1 in its pivot column
    and 0 in every other pivot column. Returns the pivot columns, aligned with ``rows``.
    Rows after the rank reaches ``ncols`` are skipped: they lie in the span already.
    Pivots are taken below ``pivot_limit`` whenever the row allows it.
    """
    limit = ncols if pivot_limit is None else pivot_limit
    basis: list[list[CycloNumber]] = []
    pivots: list[int] = []
    for row in rows:
        if len(basis) == ncols:
            break
        row = list(row)
        for b, pc in zip(basis, pivots):
            f = row[pc]
            if f:
                row = [a - f * x if x else a for a, x in zip(row, b)]
        nz = [(_size(x), c) for c, x in enumerate(row) if x]
        if not nz:
            continue
        # cheapest entry as pivot keeps coefficient growth down
        inside = [t for t in nz if t[1] < limit]
        _, col = min(inside) if inside else nz[0]
        inv = row[col].inverse()
        row = [x * inv if x else x for x in row]
        for k, b in enumerate(basis):
            f = b[col]
            if f:
                basis[k] = [a - f * x if x else a for a, x in zip(b, row)]
        basis.append(row)
        pivots.append(col)
    rows[:] = basis
    return pivots


def cyclo_rank(M: CycloMatrix) -> int:
    rows = [list(r) for r in M.rows]
    return len(_echelon(rows, M.ncols))


def cyclo_kernel(M: CycloMatrix) -> list[list[CycloNumber]]:
    """A basis of {v : M v = 0}."""
    rows = [list(r) for r in M.rows]
    pivots = _echelon(rows, M.ncols)
    free = [j for j in range(M.ncols) if j not in pivots]
    basis = []
    zero = CycloNumber(M.N, ())
    one = CycloNumber(M.N, (1,))
    for f in free:
        v = [zero] * M.ncols
        v[f] = one
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][f]
        basis.append(v)
    return basis


def cyclo_solve(M: CycloMatrix, b: Sequence) -> Optional[list[CycloNumber]]:
    """One solution w of M w = b, or None when the system is inconsistent."""
    if len(b) != M.nrows:
        raise ValueError("dimension mismatch")
    bb = [_as_cyclo(x, M.N) for x in b]
    rows = [list(r) + [x] for r, x in zip(M.rows, bb)]
    pivots = _echelon(rows, M.ncols + 1, pivot_limit=M.ncols)
    if M.ncols in pivots:
        return None
    zero = CycloNumber(M.N, ())
    w = [zero] * M.ncols
    for r, pc in enumerate(pivots):
        w[pc] = rows[r][M.ncols]
    return w


# --------------------------------------------------------------------------
# reduction modulo a prime that splits completely in Q(zeta_N)


@lru_cache(maxsize=None)
def split_prime(N: int, start: int = 1 << 61) -> tuple[int, int]:
    """A prime P = 1 mod N and an element w of exact order N in F_P."""
    k = start // N + 1
    while not gmpy2.is_prime(k * N + 1):
        k += 1
    P = k * N + 1
    ell = [l for l in range(2, N + 1) if N % l == 0 and gmpy2.is_prime(l)]
    g = 2
    while True:
        w = pow(g, (P - 1) // N, P)
        if all(pow(w, N // l, P) != 1 for l in ell):
            return P, w
        g += 1


def reduce_mod_prime(x: CycloNumber, P: int, w: int) -> int | None:
    """Image of x under zeta_N -> w in F_P; None if P divides the denominator."""
    if x.den % P == 0:
        return None
    acc = 0
    for c in reversed(x.num):
        acc = (acc * w + c) % P
    return acc * pow(x.den, -1, P) % P


def rank_mod_prime(rows: Sequence[Sequence[int]], P: int) -> int:
    """Rank over F_P of an integer matrix."""
    basis: list[tuple[int, list[int]]] = []
    for row in rows:
        r = [a % P for a in row]
        for pc, b in basis:
            f = r[pc]
            if f:
                r = [(a - f * x) % P for a, x in zip(r, b)]
        col = next((c for c, a in enumerate(r) if a), None)
        if col is None:
            continue
        inv = pow(r[col], -1, P)
        basis.append((col, [a * inv % P for a in r]))
    return len(basis)
