"""Local structure of the character scheme at each closed point.

The tangent space comes from the exact Jacobian over Q(zeta_N). At a point with a
one-dimensional tangent space we look for a second-order jet: a vector w with
J w = -Q, Q_f = 1/2 v^T Hess(f) v. No solution means multiplicity 2.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .characters import Census, CharacterPoint, census, irreducible_term_literal, irreducible_term_symmetric
from .cheby import cheb_T
from .cyclo import (CycloMatrix, CycloNumber, cyclo_embed, cyclo_kernel, cyclo_rank, cyclo_solve,
                    rank_mod_prime, reduce_mod_prime, split_prime)
from .groebner import GroebnerBudgetExceeded, groebner_compute, quotient_dimension
from .poly import VARS, Poly, compose
from .presentation import IdealPresentation, SeifertParams, build_ideal

U, X1, X2, X3, Y1, Y2, Y3 = range(7)


class PointNotOnVariety(ValueError):
    pass


class DerivativeCache:
    """Gradients and Hessians of the generators of one ideal, computed once."""

    def __init__(self, ideal: IdealPresentation):
        self.ideal = ideal
        self.grads = [f.gradient() for f in ideal.polys]
        self._hess: list | None = None

    @property
    def hessians(self) -> list[list[list[Poly]]]:
        if self._hess is None:
            self._hess = [[g.gradient() for g in grad] for grad in self.grads]
        return self._hess


@dataclass
class TangentReport:
    point: CharacterPoint
    jacobian_rank: int
    tangent_dim: int
    tangent_basis: list
    obstruction_solvable: Optional[bool] = None
    multiplicity: Optional[int] = None
    anomaly: Optional[str] = None
    checks: dict = field(default_factory=dict)
    rel5_witness: Optional[CycloNumber] = None
    rank_method: str = "exact"

    def to_json(self) -> dict:
        return {
            "point": self.point.to_json(),
            "jacobian_rank": self.jacobian_rank,
            "rank_method": self.rank_method,
            "tangent_dim": self.tangent_dim,
            "tangent_basis": [[c.to_json() for c in v] for v in self.tangent_basis],
            "obstruction_solvable": self.obstruction_solvable,
            "multiplicity": self.multiplicity,
            "anomaly": self.anomaly,
            "checks": self.checks,
            "rel5_witness": self.rel5_witness.to_json() if self.rel5_witness is not None else None,
        }


def _powers(pt: CharacterPoint) -> list:
    """Shared power table for repeated evaluation at one point."""
    table = pt.__dict__.get("_powers")
    if table is None:
        table = [[] for _ in range(7)]
        pt.__dict__["_powers"] = table
    return table


def evaluate(f: Poly, pt: CharacterPoint) -> CycloNumber:
    return f.eval(pt.coords, powers=_powers(pt))


def jacobian(cache: DerivativeCache, pt: CharacterPoint) -> CycloMatrix:
    rows = [[evaluate(d, pt) for d in grad] for grad in cache.grads]
    return CycloMatrix(rows, pt.N)


def _eval_mod(f: Poly, vals: list[int], P: int, powers: list[dict]) -> int:
    acc = 0
    for m, c in f.terms.items():
        if isinstance(c, Fraction):
            c = c.numerator * pow(c.denominator, -1, P)
        t = c
        for i, e in enumerate(m):
            if e:
                pw = powers[i].get(e)
                if pw is None:
                    pw = powers[i][e] = pow(vals[i], e, P)
                t = t * pw % P
        acc += t
    return acc % P


def modular_rank(cache: DerivativeCache, pt: CharacterPoint) -> int | None:
    """Jacobian rank after reducing modulo a prime P = 1 mod N.

    Reduction can only lower the rank, so a full-rank result certifies full rank
    over Q(zeta_N). None when the point does not reduce (P divides a denominator).
    """
    P, w = split_prime(pt.N)
    vals = [reduce_mod_prime(c, P, w) for c in pt.coords]
    if any(v is None for v in vals):
        return None
    powers: list[dict] = [{} for _ in range(7)]
    rows = [[_eval_mod(d, vals, P, powers) for d in grad] for grad in cache.grads]
    return rank_mod_prime(rows, P)


def check_on_variety(ideal: IdealPresentation, pt: CharacterPoint) -> None:
    for g in ideal.generators:
        if evaluate(g.poly, pt):
            raise PointNotOnVariety(f"generator {g.name()} does not vanish at the point")


def zeta_exponents(pt: CharacterPoint) -> tuple[int, int, int]:
    """Exponents k_i (over the point conductor) of the roots zeta_i with x_i = zeta_i + zeta_i^-1."""
    w = pt.witness
    if pt.kind == "abelian":
        return (w["a1"], w["a2"], w["a1"] + w["a2"])
    return tuple(w["zeta"])


def exceptional_tangent_checks(s: SeifertParams, pt: CharacterPoint, v: list) -> dict:
    """du = 0, eps q_i dy_i = (p_i + q_i) dx_i, and equal ratios p_i dx_i / (q_i (zeta_i - zeta_i^-1))."""
    N = pt.N
    eps = 1 if pt.coords[U] == 2 else -1
    ks = zeta_exponents(pt)
    diffs = [cyclo_embed(k, N) - cyclo_embed(-k, N) for k in ks]
    ok1 = v[U].is_zero()
    ok2 = all(v[Y1 + i] * (eps * s.q[i]) == v[X1 + i] * (s.p[i] + s.q[i]) for i in range(3))
    ratios = [v[X1 + i] * s.p[i] / (diffs[i] * s.q[i]) for i in range(3)]
    ok4 = ratios[0] == ratios[1] == ratios[2] and not ratios[0].is_zero()
    return {"diff1": ok1, "diff2": ok2, "diff4": ok4, "dx_nonzero": all(v[X1 + i] for i in range(3))}


def tangent_space(ideal: IdealPresentation, pt: CharacterPoint, cache: DerivativeCache | None = None) -> TangentReport:
    check_on_variety(ideal, pt)
    cache = cache or DerivativeCache(ideal)
    if modular_rank(cache, pt) == 7:
        return TangentReport(pt, 7, 0, [], rank_method="modular")
    J = jacobian(cache, pt)
    basis = cyclo_kernel(J)
    rank = 7 - len(basis)
    if len(basis) == 1 and pt.exceptional:
        v = basis[0]
        if v[X1]:
            k1 = zeta_exponents(pt)[0]
            scale = (cyclo_embed(k1, pt.N) - cyclo_embed(-k1, pt.N)) / v[X1]
            basis = [[c * scale for c in v]]
    tr = TangentReport(pt, rank, 7 - rank, basis)
    if pt.exceptional and len(basis) == 1 and ideal.params is not None:
        tr.checks.update(exceptional_tangent_checks(ideal.params, pt, basis[0]))
    return tr


def second_derivative_along(hess: list[list[Poly]], pt: CharacterPoint, v: list) -> CycloNumber:
    """v^T Hess(f) v at the point."""
    acc = CycloNumber(pt.N, ())
    nz = [j for j in range(7) if v[j]]
    for j in nz:
        for k in nz:
            h = hess[j][k]
            if h:
                acc = acc + evaluate(h, pt) * v[j] * v[k]
    return acc


def rel5_poly(s: SeifertParams, i: int) -> Poly:
    var = Poly.var(VARS[i])
    return compose(cheb_T(s.q[i - 1]), Poly.var("u")) - compose(cheb_T(s.p[i - 1]), var)


def rel5_witness(s: SeifertParams, pt: CharacterPoint, v: list, i: int = 1) -> tuple[CycloNumber, CycloNumber]:
    """Second derivative of rel5_i along v, and its closed form -2 p^2 eps^q dx^2 / (x^2 - 4).

    Valid when du = 0 and zeta_i^p = eps^q, zeta_i != +-1.
    """
    f = rel5_poly(s, i)
    hess = [[f.partial(a).partial(b) for b in range(7)] for a in range(7)]
    value = second_derivative_along(hess, pt, v)
    eps = 1 if pt.coords[U] == 2 else -1
    p, q = s.p[i - 1], s.q[i - 1]
    x, dx = pt.coords[i], v[i]
    closed = dx * dx * (-2 * p * p * eps ** (q % 2)) / (x * x - 4)
    return value, closed


def order2_obstruction(ideal: IdealPresentation, pt: CharacterPoint, v: list,
                       cache: DerivativeCache | None = None) -> bool:
    """True when some w solves J w = -1/2 (v^T Hess(f) v)_f, i.e. v extends to order 2."""
    cache = cache or DerivativeCache(ideal)
    J = jacobian(cache, pt)
    if any(J.matvec(v)):
        raise ValueError("v is not a tangent vector at the point")
    Q = [second_derivative_along(h, pt, v) * Fraction(1, 2) for h in cache.hessians]
    return cyclo_solve(J, [-q for q in Q]) is not None


def multiplicity_verdict(tr: TangentReport) -> TangentReport:
    if tr.tangent_dim == 0:
        tr.multiplicity = 1
    elif tr.tangent_dim == 1 and tr.obstruction_solvable is False:
        tr.multiplicity = 2
    else:
        tr.multiplicity = None
        tr.anomaly = (f"undetermined: tangent dim {tr.tangent_dim}, "
                      f"order-2 obstruction solvable={tr.obstruction_solvable}")
    return tr


def analyze_point(ideal: IdealPresentation, pt: CharacterPoint, cache: DerivativeCache) -> TangentReport:
    tr = tangent_space(ideal, pt, cache)
    if tr.tangent_dim == 1:
        v = tr.tangent_basis[0]
        tr.obstruction_solvable = order2_obstruction(ideal, pt, v, cache)
        if pt.exceptional and ideal.params is not None:
            value, closed = rel5_witness(ideal.params, pt, v)
            tr.rel5_witness = value
            tr.checks["rel5_nonzero"] = not value.is_zero()
            tr.checks["rel5_closed_form"] = value == closed
    return multiplicity_verdict(tr)


def derived_redundancy_ranks(ideal: IdealPresentation, pt: CharacterPoint, cache: DerivativeCache) -> tuple[int, int]:
    """Jacobian rank of rel5, rel9, rel7, rel4 alone and with every other generator added."""
    J = jacobian(cache, pt)
    core = [row for g, row in zip(ideal.generators, J.rows) if g.label in ("rel5", "rel9", "rel7", "rel4")]
    return cyclo_rank(CycloMatrix(core, pt.N)), cyclo_rank(J)


# --------------------------------------------------------------------------


@dataclass
class SchemeReport:
    params: SeifertParams
    census: Census
    points: list[TangentReport]
    multiplicity_sum: Optional[int]
    groebner_dim: Optional[int]
    groebner_status: str  # "ok", "skipped", "budget", "infinite"
    dim_formula: int  # printed irreducible term + (|H1| + |H1(Z/2)|)/2
    dim_formula_symmetric: int
    reduced: Optional[bool]
    checks: dict

    @property
    def anomaly(self) -> bool:
        return any(p.anomaly for p in self.points)

    @property
    def passed(self) -> bool:
        return all(self.checks.values()) and not self.anomaly

    def summary_row(self) -> dict:
        return {
            "params": self.params.label(),
            "H1": self.census.homology.order,
            "X": self.census.count_formula_lhs,
            "x_M": self.census.x_M,
            "dim": self.groebner_dim,
            "reduced": self.reduced,
        }

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "census": self.census.to_json(),
            "points": [p.to_json() for p in self.points],
            "multiplicity_sum": self.multiplicity_sum,
            "groebner_dim": self.groebner_dim,
            "groebner_status": self.groebner_status,
            "dim_formula": self.dim_formula,
            "dim_formula_symmetric": self.dim_formula_symmetric,
            "reduced": self.reduced,
            "checks": self.checks,
            "anomaly": self.anomaly,
            "passed": self.passed,
        }


def scheme_report(s: SeifertParams, run_groebner: bool = True, budget: int | None = None,
                  source: str = "hardcoded") -> SchemeReport:
    cen = census(s)
    ideal = build_ideal(s, source)
    cache = DerivativeCache(ideal)
    reports = [analyze_point(ideal, pt, cache) for pt in cen.points]

    mults = [r.multiplicity for r in reports]
    mult_sum = sum(mults) if all(m is not None for m in mults) else None
    half = (cen.homology.order + cen.homology.order_mod2) // 2
    dim_formula = irreducible_term_literal(s) + half
    dim_formula_sym = irreducible_term_symmetric(s) + half

    gdim, status = None, "skipped"
    if run_groebner:
        try:
            d = quotient_dimension(groebner_compute(ideal, budget=budget))
            gdim, status = (None, "infinite") if d == float("inf") else (int(d), "ok")
        except GroebnerBudgetExceeded:
            status = "budget"

    exc = [r for r in reports if r.point.exceptional]
    checks = {
        "census_formula": cen.literal_formula_holds,
        "census_formula_symmetric": cen.count_formula_lhs == cen.count_formula_rhs_symmetric,
        "rank_dichotomy": all(r.jacobian_rank == (6 if r.point.exceptional else 7) for r in reports),
        "exceptional_tangent": all(all(r.checks.get(k, False) for k in ("diff1", "diff2", "diff4")) for r in exc),
        "rel5_witness": all(r.checks.get("rel5_nonzero", False) and r.checks.get("rel5_closed_form", False)
                            for r in exc),
        "order2_obstructed": all(r.obstruction_solvable is False for r in exc),
        "exceptional_multiplicity_2": all(r.multiplicity == 2 for r in exc),
    }
    if source == "hardcoded":
        ok = True
        for r in exc:
            core, full = derived_redundancy_ranks(ideal, r.point, cache)
            ok = ok and core == full
        checks["derived_redundancy"] = ok
    reduced = None if mult_sum is None else all(m == 1 for m in mults)
    checks["reduced_iff_no_exceptional"] = reduced is not None and reduced == (cen.x_M == 0)
    if gdim is not None:
        checks["dim_eq_multiplicity_sum"] = gdim == mult_sum
        checks["dim_formula"] = gdim == dim_formula
        checks["dim_formula_symmetric"] = gdim == dim_formula_sym
    elif status in ("budget", "infinite"):
        checks["groebner"] = False
    return SchemeReport(s, cen, reports, mult_sum, gdim, status, dim_formula, dim_formula_sym, reduced, checks)
