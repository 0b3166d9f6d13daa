"""Generators of the ideal cutting out the character scheme of S^2(a1/b1, a2/b2, a3/b3).

User-facing parameters use the convention M = S^2(a1/b1, a2/b2, a3/b3) with Euler
number a1/b1 + a2/b2 + a3/b3. Internally we use (p_i, q_i) with
M = S^2(-q1/p1, -q2/p2, q3/p3), so that

    pi_1(M) = < h, c1, c2 | h c1 = c1 h, h c2 = c2 h, c_i^{p_i} = h^{q_i} (i = 1, 2, 3) >

with c3 = c1 c2, and no signs appear in the relations.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .cheby import cheb_S, cheb_T
from .poly import Poly, compose, u, x1, x2, x3, y1, y2, y3
from .trace import GroupWord, charring_F3, trace_reduce

X = {1: x1, 2: x2, 3: x3}
Y = {1: y1, 2: y2, 3: y3}


@dataclass(frozen=True)
class SeifertParams:
    """Normalized Seifert invariants of a small Seifert manifold."""

    p: tuple[int, int, int]
    q: tuple[int, int, int]

    def __post_init__(self):
        if len(self.p) != 3 or len(self.q) != 3:
            raise ValueError("exactly three exceptional fibers are supported")
        for pi, qi in zip(self.p, self.q):
            if pi < 2:
                raise ValueError(f"fiber order must be >= 2, got {pi}")
            if qi == 0 or gcd(pi, qi) != 1:
                raise ValueError(f"need q nonzero and coprime to p, got q={qi}, p={pi}")

    @property
    def euler(self) -> Fraction:
        p, q = self.p, self.q
        return -Fraction(q[0], p[0]) - Fraction(q[1], p[1]) + Fraction(q[2], p[2])

    @property
    def fractions(self) -> tuple[Fraction, Fraction, Fraction]:
        """The user-convention fractions a_i/b_i."""
        p, q = self.p, self.q
        return (Fraction(-q[0], p[0]), Fraction(-q[1], p[1]), Fraction(q[2], p[2]))

    def label(self) -> str:
        return ",".join(f"{a.numerator}/{a.denominator}" for a in self.fractions)

    def swap12(self) -> SeifertParams:
        return SeifertParams((self.p[1], self.p[0], self.p[2]), (self.q[1], self.q[0], self.q[2]))

    def to_json(self) -> dict:
        return {
            "fractions": self.label(),
            "p": list(self.p),
            "q": list(self.q),
            "euler": str(self.euler),
        }


def params_normalize(fracs: Sequence) -> SeifertParams:
    """Map S^2(a1/b1, a2/b2, a3/b3) to internal (p, q).

    ``fracs`` holds three (a, b) pairs or Fractions/strings; a/b must be in lowest terms.
    """
    if len(fracs) != 3:
        raise ValueError(f"expected three fibers, got {len(fracs)}")
    pairs = []
    for f in fracs:
        if isinstance(f, str):
            if "/" not in f:
                raise ValueError(f"malformed fraction {f!r}")
            a_s, b_s = f.split("/", 1)
            try:
                a, b = int(a_s), int(b_s)
            except ValueError:
                raise ValueError(f"malformed fraction {f!r}") from None
        elif isinstance(f, Fraction):
            a, b = f.numerator, f.denominator
        else:
            a, b = f
        if b < 2:
            raise ValueError(f"fiber order must be >= 2 in {a}/{b}")
        if gcd(a, b) != 1:
            raise ValueError(f"{a}/{b} is not in lowest terms")
        pairs.append((a, b))
    (a1, b1), (a2, b2), (a3, b3) = pairs
    return SeifertParams((b1, b2, b3), (-a1, -a2, a3))


def parse_seifert(text: str) -> SeifertParams:
    return params_normalize([s.strip() for s in text.split(",")])


@dataclass(frozen=True)
class Generator:
    label: str
    index: tuple[int, ...]
    source: str  # "hardcoded" or "generic"
    poly: Poly

    def name(self) -> str:
        if not self.index:
            return self.label
        return f"{self.label}[{','.join(map(str, self.index))}]"

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "index": list(self.index),
            "source": self.source,
            "poly": self.poly.render(),
        }


@dataclass
class IdealPresentation:
    params: SeifertParams | None
    source: str
    generators: list[Generator] = field(default_factory=list)

    @property
    def polys(self) -> list[Poly]:
        return [g.poly for g in self.generators]

    def __len__(self) -> int:
        return len(self.generators)

    def without(self, label: str, index: tuple[int, ...]) -> IdealPresentation:
        gens = [g for g in self.generators if not (g.label == label and g.index == index)]
        return IdealPresentation(self.params, self.source, gens)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json() if self.params else None,
            "source": self.source,
            "generators": [g.to_json() for g in self.generators],
        }


# --------------------------------------------------------------------------
# the F2 x Z part


def rel1(i: int) -> Poly:
    return u**2 + X[i] ** 2 + Y[i] ** 2 - u * X[i] * Y[i] - 4


def rel2(i: int) -> Poly:
    j = 3 - i
    return 2 * Y[i] - (u * X[i] + X[j] * y3 - x3 * Y[j])


def rel3() -> Poly:
    return 2 * y3 - (u * (x3 - x1 * x2) + y1 * x2 + y2 * x1)


def rel4() -> Poly:
    return 2 * x3 - (u * y3 + x1 * x2 - y1 * y2)


def _T(n: int, v: Poly) -> Poly:
    return compose(cheb_T(n), v)


def _S(n: int, v: Poly) -> Poly:
    return compose(cheb_S(n), v)


# index sets, in the order the relations are emitted
_REL10_INDICES = ((1, 2, 3), (2, 1, 3), (3, 1, 2), (3, 2, 1))


def build_ideal_hardcoded(s: SeifertParams) -> IdealPresentation:
    """Generators rel1..rel12 written out in closed form."""
    p = {i + 1: s.p[i] for i in range(3)}
    q = {i + 1: s.q[i] for i in range(3)}
    gens: list[Generator] = []

    def add(label, index, poly):
        if poly:
            gens.append(Generator(label, tuple(index), "hardcoded", poly))

    for i in (1, 2, 3):
        add("rel1", (i,), rel1(i))
    for i in (1, 2):
        add("rel2", (i,), rel2(i))
    add("rel3", (), rel3())
    add("rel4", (), rel4())
    for i in (1, 2, 3):
        add("rel5", (i,), _T(q[i], u) - _T(p[i], X[i]))
    for i in (1, 2, 3):
        add("rel6", (i,), _T(q[i] + 1, u) - _S(p[i], X[i]) * Y[i] + _S(p[i] - 1, X[i]) * u)
    for i in (1, 2, 3):
        add("rel9", (i,), _S(q[i], u) * Y[i] - _S(q[i] - 1, u) * X[i] - _T(p[i] + 1, X[i]))
    for i, j in ((1, 2), (2, 1)):
        add("rel7", (i, j),
            _S(q[i], u) * Y[j] - _S(q[i] - 1, u) * X[j] - _S(p[i], X[i]) * x3 + _S(p[i] - 1, X[i]) * X[j])
    for i in (1, 2, 3):
        add("rel8", (i,),
            _S(q[i] + 1, u) * Y[i] - _S(q[i], u) * X[i] - _S(p[i] + 1, X[i]) * Y[i] + _S(p[i], X[i]) * u)
    for i, j, k in _REL10_INDICES:
        add("rel10", (i, j, k),
            _S(q[i], u) * Y[k] - _S(q[i] - 1, u) * X[k] - _S(p[i] + 1, X[i]) * X[k] + _S(p[i], X[i]) * X[j])
    for i, j in ((1, 2), (2, 1)):
        add("rel11", (i, j),
            _S(q[i] + 1, u) * Y[j] - _S(q[i], u) * X[j] - _S(p[i], X[i]) * y3 + _S(p[i] - 1, X[i]) * Y[j])
    for i, j in ((1, 2), (2, 1)):
        add("rel12", (i, j),
            _S(q[3] + 1, u) * Y[i] - _S(q[3], u) * X[i]
            - _S(p[3], x3) * (X[i] * y3 - Y[j]) + _S(p[3] - 1, x3) * Y[i])
    return IdealPresentation(s, "hardcoded", gens)


# --------------------------------------------------------------------------
# the generic construction from the group presentation

H = GroupWord(((1, 1),))
C1 = GroupWord(((2, 1),))
C2 = GroupWord(((3, 1),))
ONE = GroupWord()

MULTIPLIERS = (
    ("1", ONE),
    ("h", H),
    ("c1", C1),
    ("c2", C2),
    ("hc1", H * C1),
    ("hc2", H * C2),
    ("c1c2", C1 * C2),
)


def group_relations(s: SeifertParams) -> list[tuple[str, GroupWord, GroupWord]]:
    """Relations w = w' of the fundamental group, c3 = c1 c2."""
    c3 = C1 * C2
    rels = [("comm1", H * C1, C1 * H), ("comm2", H * C2, C2 * H)]
    for i, c in enumerate((C1, C2, c3)):
        rels.append((f"r{i + 1}", c ** s.p[i], H ** s.q[i]))
    return rels


def build_ideal_generic(s: SeifertParams, multipliers: Iterable = MULTIPLIERS) -> IdealPresentation:
    """Generators t_{w x} - t_{w' x} for every relation w = w' and multiplier x, plus F."""
    gens: list[Generator] = []
    mults = list(multipliers)
    for name, w, w2 in group_relations(s):
        for xname, xw in mults:
            poly = trace_reduce(w * xw) - trace_reduce(w2 * xw)
            if poly:
                gens.append(Generator(f"{name}*{xname}", (), "generic", poly))
    gens.append(Generator("F", (), "generic", charring_F3()))
    return IdealPresentation(s, "generic", gens)


def build_ideal(s: SeifertParams, source: str = "hardcoded") -> IdealPresentation:
    if source == "hardcoded":
        return build_ideal_hardcoded(s)
    if source == "generic":
        return build_ideal_generic(s)
    raise ValueError(f"unknown source {source!r}")


def redundancy_rhs(literal: bool = False, delta1_shift=0) -> Poly:
    """delta1 + delta2 - delta3 combined with mu = rel3, nu = rel4.

    The identity that holds is F = delta1 + delta2 - delta3 + y3*mu + x3*nu. With
    ``literal`` the multipliers are -x3 on mu and -y3 on nu instead (which does not
    reproduce F for either sign of mu, nu).
    """
    base = rel1(1) + delta1_shift + rel1(2) - rel1(3)
    if literal:
        return base - x3 * rel3() - y3 * rel4()
    return base + y3 * rel3() + x3 * rel4()


def verify_redundancy_identity(delta1_shift=0, swap12: bool = False, literal: bool = False) -> bool:
    """Check that F is a combination of rel1, rel3, rel4, so F is redundant given them.

    ``delta1_shift`` perturbs delta1 (negative test); ``swap12`` recomputes both sides
    after exchanging (x1, y1) with (x2, y2), a symmetry of F.
    """
    F = charring_F3()
    rhs = redundancy_rhs(literal, delta1_shift)
    if swap12:
        perm = [0, 2, 1, 3, 5, 4, 6]
        if F.rename(perm) != F:
            return False
        rhs = rhs.rename(perm)
    return F == rhs
