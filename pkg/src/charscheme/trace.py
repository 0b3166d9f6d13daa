"""Trace functions of words in F3 = <h, c1, c2> as polynomials in the trace coordinates.

Every trace function t_w is rewritten, using only

    t_{xy} + t_{xy^-1} = t_x t_y,   t_{xy} = t_{yx},   t_1 = 2,
    t_{a^n b} = S_n(t_a) t_{ab} - S_{n-1}(t_a) t_b,   t_{a^n} = T_n(t_a),

into a polynomial in u, x1, x2, x3, y1, y2, y3 whose y3-degree is at most one
(the character ring of F3 is the polynomial ring modulo a single relation that is
monic of degree two in y3).

The memo table is a module-level dict. Inserts are idempotent, so concurrent
readers in threads can at worst recompute an entry; no further locking is done.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cheby import cheb_S, cheb_T
from .poly import Poly, compose, u, x1, x2, x3, y1, y2, y3

# letters: 1 = h, 2 = c1, 3 = c2; negative = inverse
GEN_NAMES = {1: "h", 2: "c1", 3: "c2"}
_GEN_VAR = {1: u, 2: x1, 3: x2}


def _rank(letter: int) -> int:
    # h < c1 < c2 < h^-1 < c1^-1 < c2^-1
    return letter - 1 if letter > 0 else 2 - letter


@dataclass(frozen=True)
class GroupWord:
    """A word in h, c1, c2 stored as syllables (generator, nonzero exponent)."""

    syllables: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "syllables", _merge(self.syllables))

    @classmethod
    def from_letters(cls, letters: Iterable[int]) -> GroupWord:
        return cls(tuple((abs(a), 1 if a > 0 else -1) for a in letters))

    @classmethod
    def parse(cls, text: str) -> GroupWord:
        return parse_word(text)

    @property
    def letters(self) -> tuple[int, ...]:
        out = []
        for g, e in self.syllables:
            out.extend([g if e > 0 else -g] * abs(e))
        return tuple(out)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __mul__(self, other: GroupWord) -> GroupWord:
        return GroupWord(self.syllables + other.syllables)

    def inverse(self) -> GroupWord:
        return GroupWord(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, n: int) -> GroupWord:
        base = self if n >= 0 else self.inverse()
        return GroupWord(base.syllables * abs(n))

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(GEN_NAMES[g] if e == 1 else f"{GEN_NAMES[g]}^{e}" for g, e in self.syllables)


def _merge(syllables: Sequence[tuple[int, int]]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for g, e in syllables:
        if g not in GEN_NAMES:
            raise ValueError(f"unknown generator {g}")
        if e == 0:
            continue
        if out and out[-1][0] == g:
            out[-1][1] += e
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, e])
    return tuple((g, e) for g, e in out)


_TOKEN = re.compile(r"\s*(h|c1|c2|c3)\s*(?:\^\s*\(?\s*([+-]?\d+)\s*\)?)?")


def parse_word(text: str) -> GroupWord:
    """Parse words such as ``"h c1^-2 c2 h^3"``; ``c3`` stands for ``c1 c2``; ``1`` is empty."""
    s = text.strip()
    if s in ("", "1"):
        return GroupWord()
    pos = 0
    syl: list[tuple[int, int]] = []
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word at {s[pos:]!r}")
        name, exp = m.group(1), int(m.group(2) or 1)
        if name == "c3":
            base = [(2, 1), (3, 1)]
            piece = base * exp if exp >= 0 else [(3, -1), (2, -1)] * (-exp)
            syl.extend(piece)
        else:
            syl.append(({"h": 1, "c1": 2, "c2": 3}[name], exp))
        pos = m.end()
    return GroupWord(tuple(syl))


# --------------------------------------------------------------------------
# reduction of words


def free_reduce(letters: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(letters: Sequence[int]) -> tuple[int, ...]:
    w = free_reduce(letters)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def least_rotation(letters: Sequence[int]) -> tuple[int, ...]:
    if not letters:
        return ()
    n = len(letters)
    best = None
    for k in range(n):
        rot = tuple(letters[k:]) + tuple(letters[:k])
        key = tuple(_rank(a) for a in rot)
        if best is None or key < best[0]:
            best = (key, rot)
    return best[1]


def word_reduce(w: GroupWord) -> GroupWord:
    """Freely and cyclically reduced, least rotation of the cyclic word."""
    return GroupWord.from_letters(least_rotation(cyclic_reduce(w.letters)))


def _inverse_letters(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-a for a in reversed(letters))


def _canonical(letters: Sequence[int]) -> tuple[int, ...]:
    """Memo key: same key for conjugate or inverse words."""
    w = cyclic_reduce(letters)
    a = least_rotation(w)
    b = least_rotation(_inverse_letters(w))
    ka = tuple(_rank(x) for x in a)
    kb = tuple(_rank(x) for x in b)
    return a if ka <= kb else b


# --------------------------------------------------------------------------
# the relation F of the F3 character ring

# F = y3^2 - s*y3 + r
_S = u * x3 + x1 * y2 + x2 * y1 - u * x1 * x2
_R = (u**2 + x1**2 + x2**2 + y1**2 + y2**2 + x3**2 + y1 * y2 * x3
      - u * x1 * y1 - u * x2 * y2 - x1 * x2 * x3 - 4)


def charring_F3() -> Poly:
    """The defining relation F of the character ring of F3 = <h, c1, c2>."""
    return y3**2 - _S * y3 + _R


def reduce_mod_F(p: Poly) -> Poly:
    """Normal form of p modulo F with y3-degree at most one."""
    d = p.degree_in("y3")
    if d < 2:
        return p
    parts = [p.coefficient("y3", k) for k in range(d + 1)]
    # y3^k = s*y3^{k-1} - r*y3^{k-2}, from the top down
    for k in range(d, 1, -1):
        c = parts[k]
        if c:
            parts[k - 1] = parts[k - 1] + c * _S
            parts[k - 2] = parts[k - 2] - c * _R
            parts[k] = Poly()
    return parts[0] + parts[1] * y3


# --------------------------------------------------------------------------

_MEMO: dict[tuple[int, ...], Poly] = {}

# traces of positive words with distinct letters, keyed by canonical rotation
_T_H_C2_C1 = u * x3 + x1 * y2 + x2 * y1 - u * x1 * x2 - y3
_BASE = {
    (): Poly.const(2),
    (1, 2): y1,
    (1, 3): y2,
    (2, 3): x3,
    (1, 2, 3): y3,
    (1, 3, 2): _T_H_C2_C1,
}


def clear_cache() -> None:
    _MEMO.clear()


def _syllables_cyclic(w: tuple[int, ...]) -> list[tuple[int, int]] | None:
    """Cyclic syllable decomposition starting at a syllable boundary; None for a pure power."""
    n = len(w)
    start = None
    for i in range(n):
        if w[i - 1] != w[i]:
            start = i
            break
    if start is None:
        return None
    rot = w[start:] + w[:start]
    syl: list[tuple[int, int]] = []
    for a in rot:
        if syl and syl[-1][0] == a:
            syl[-1] = (a, syl[-1][1] + 1)
        else:
            syl.append((a, 1))
    return syl


def _trace(letters: tuple[int, ...]) -> Poly:
    key = _canonical(letters)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    res = _trace_uncached(key)
    _MEMO[key] = res
    return res


def _trace_uncached(w: tuple[int, ...]) -> Poly:
    if w in _BASE:
        return _BASE[w]
    syl = _syllables_cyclic(w)
    if syl is None:
        a = w[0]
        n = len(w) if a > 0 else -len(w)
        return compose(cheb_T(n), _GEN_VAR[abs(a)])

    # collapse the largest power (or an inverse letter) first
    powers = [(k, a, n) for k, (a, n) in enumerate(syl) if a < 0 or n > 1]
    if powers:
        k, a, n = max(powers, key=lambda t: (t[2], -t[0]))
        g = abs(a)
        e = n if a > 0 else -n
        rest = syl[k + 1:] + syl[:k]
        b = tuple(l for l, m in rest for _ in range(m))
        t_g = _GEN_VAR[g]
        s_e = compose(cheb_S(e), t_g)
        s_e1 = compose(cheb_S(e - 1), t_g)
        res = s_e * _trace((g,) + b) - s_e1 * _trace(b)
        return reduce_mod_F(res)

    # positive word, every syllable a single letter
    n = len(w)
    best = None
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] == w[j]:
                longer = max(j - i, n - (j - i))
                if best is None or longer < best[0]:
                    best = (longer, i, j)
    if best is None:
        raise AssertionError(f"no base case for positive word {w}")  # pragma: no cover
    _, i, j = best
    rot = w[i:] + w[:i]
    j -= i
    gA, gB = rot[:j], rot[j:]
    A, B = gA[1:], gB[1:]
    # t_{gA gB} = t_{gA} t_{gB} - t_{gA B^-1 g^-1} = t_{gA} t_{gB} - t_{A B^-1}
    res = _trace(gA) * _trace(gB) - _trace(A + _inverse_letters(B))
    return reduce_mod_F(res)


def trace_reduce(w: GroupWord | str) -> Poly:
    """Canonical trace polynomial of a word in F3 (y3-degree at most one)."""
    if isinstance(w, str):
        w = parse_word(w)
    return _trace(w.letters)


def trace_numeric(w: GroupWord, H, C1, C2) -> complex:
    """Trace of w evaluated on concrete 2x2 numpy matrices (test oracle helper)."""
    import numpy as np

    mats = {1: H, 2: C1, 3: C2}
    inv = {g: np.linalg.inv(M) for g, M in mats.items()}
    acc = np.eye(2, dtype=complex)
    for a in w.letters:
        acc = acc @ (mats[a] if a > 0 else inv[-a])
    return complex(np.trace(acc))


def fricke_coordinates(H, C1, C2) -> list[complex]:
    """(u, x1, x2, x3, y1, y2, y3) for a triple of 2x2 matrices."""
    import numpy as np

    tr = lambda M: complex(np.trace(M))  # noqa: E731
    C3 = C1 @ C2
    return [tr(H), tr(C1), tr(C2), tr(C3), tr(H @ C1), tr(H @ C2), tr(H @ C3)]
