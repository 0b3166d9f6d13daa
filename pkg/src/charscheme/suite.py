"""Parameter sweeps and the pinned manifold subsets used by the acceptance runs."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

from .presentation import SeifertParams, params_normalize


def fibers(p_max: int, q_max: int) -> list[tuple[int, int]]:
    """Fiber invariants (b, a) with 2 <= b <= p_max, 1 <= |a| <= q_max, gcd(a, b) = 1."""
    return sorted((b, a) for b in range(2, p_max + 1) for a in range(-q_max, q_max + 1)
                  if a and gcd(a, b) == 1)


def sweep(p_max: int, q_max: int) -> list[SeifertParams]:
    """Unordered fiber triples with e != 0, one per orientation pair.

    Fibers are sorted by (order, numerator); of a triple and its negation, the
    lexicographically smaller one is kept. Output order is deterministic.
    """
    if p_max < 2 or q_max < 1:
        raise ValueError("empty sweep: need p_max >= 2 and q_max >= 1")
    out = []
    for t in combinations_with_replacement(fibers(p_max, q_max), 3):
        if sum(Fraction(a, b) for b, a in t) == 0:
            continue
        negated = tuple(sorted((b, -a) for b, a in t))
        if negated < t:
            continue
        out.append(params_normalize([(a, b) for b, a in t]))
    return out


# ten manifolds for the presentation cross-check, spread over the fiber orders
PINNED_PRESENTATION = [
    "-1/2,-1/3,1/5",
    "-1/2,-1/2,1/2",
    "1/2,1/3,1/4",
    "-1/2,2/3,-3/4",
    "1/3,1/3,-2/5",
    "-1/2,1/5,2/5",
    "1/3,-1/4,3/5",
    "2/3,2/3,2/3",
    "-1/4,3/4,-3/5",
    "1/2,-3/5,3/5",
]


def pinned_presentation() -> list[SeifertParams]:
    return [params_normalize(s.split(",")) for s in PINNED_PRESENTATION]


def cross_check_presentations(s: SeifertParams, budget: int | None = None) -> dict:
    """Hardcoded and generic ideals are equal: each reduces to zero modulo the other's basis."""
    from .groebner import groebner_compute, quotient_dimension
    from .presentation import build_ideal_generic, build_ideal_hardcoded

    hard = build_ideal_hardcoded(s)
    gen = build_ideal_generic(s)
    gb_h = groebner_compute(hard, budget=budget)
    gb_g = groebner_compute(gen, budget=budget)
    g_in_h = all(gb_h.contains(f) for f in gen.polys)
    h_in_g = all(gb_g.contains(f) for f in hard.polys)
    return {
        "params": s.label(),
        "generic_in_hardcoded": g_in_h,
        "hardcoded_in_generic": h_in_g,
        "equal": g_in_h and h_in_g,
        "dim": quotient_dimension(gb_h),
    }


def pinned_dimension(p_max: int = 5, q_max: int = 3, spread: int = 20, with_exceptional: int = 3) -> list[SeifertParams]:
    """Evenly spaced members of the sweep, plus the first few (in sweep order) with x_M > 0.

    The rule looks only at the sweep order and the enumerated exceptional count, never
    at a Groebner dimension.
    """
    from .characters import census

    full = sweep(p_max, q_max)
    n = len(full)
    idx = sorted({round(k * (n - 1) / (spread - 1)) for k in range(spread)})
    chosen = [full[i] for i in idx]
    extra = 0
    for s in full:
        if extra == with_exceptional:
            break
        if s not in chosen and census(s).x_M > 0:
            chosen.append(s)
            extra += 1
    return chosen
