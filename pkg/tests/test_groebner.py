import math

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from charscheme.groebner import (BUDGET_ENV, DEFAULT_BUDGET, GroebnerBudgetExceeded, budget_from_env,
                                 groebner_compute, is_reduced, normal_form, quotient_dimension,
                                 s_polynomials_reduce_to_zero, standard_monomials)
from charscheme.poly import VARS, Poly, parse_poly, u, x1, x2, x3, y1, y2, y3
from charscheme.presentation import build_ideal_hardcoded, parse_seifert

SYMS = sympy.symbols(" ".join(VARS))
ALL = [u, x1, x2, x3, y1, y2, y3]


def to_sympy(p: Poly):
    return sympy.sympify(p.render().replace("^", "**"), locals=dict(zip(VARS, SYMS)))


def test_linear():
    gb = groebner_compute([u - 2])
    assert gb.basis == [u - 2]


def test_monomial_ideal():
    gb = groebner_compute([x1**2, x1 * y1])
    assert sorted(gb.basis, key=repr) == sorted([x1**2, x1 * y1], key=repr)
    assert s_polynomials_reduce_to_zero(gb)


def test_maximal_ideal():
    gb = groebner_compute(ALL)
    assert quotient_dimension(gb) == 1
    assert standard_monomials(gb) == [(0,) * 7]


def test_positive_dimensional():
    assert quotient_dimension(groebner_compute([u**2])) == math.inf


def test_unit_ideal():
    gb = groebner_compute([u - 1, u])
    assert gb.is_unit_ideal and gb.basis == [Poly.const(1)]
    assert quotient_dimension(gb) == 0


def test_normal_form_examples():
    s = parse_seifert("-1/2,-1/3,1/5")
    ideal = build_ideal_hardcoded(s)
    gb = groebner_compute(ideal)
    for f in ideal.polys:
        assert normal_form(f, gb).is_zero()
    assert normal_form(Poly.const(1), gb) == Poly.const(1)
    assert quotient_dimension(gb) == 12
    assert s_polynomials_reduce_to_zero(gb) and is_reduced(gb)


def test_empty_generators():
    with pytest.raises(ValueError):
        groebner_compute([])


def test_budget():
    ideal = build_ideal_hardcoded(parse_seifert("1/3,-1/4,3/5"))
    with pytest.raises(GroebnerBudgetExceeded):
        groebner_compute(ideal, budget=3)


def test_budget_env(monkeypatch):
    monkeypatch.delenv(BUDGET_ENV, raising=False)
    assert budget_from_env() == DEFAULT_BUDGET
    monkeypatch.setenv(BUDGET_ENV, "3")
    assert budget_from_env() == 3
    with pytest.raises(GroebnerBudgetExceeded):
        groebner_compute(build_ideal_hardcoded(parse_seifert("1/3,-1/4,3/5")))


small = st.builds(
    lambda cs, es: sum((Poly.const(c) * Poly.monomial(e) for c, e in zip(cs, es)), Poly.const(0)),
    st.lists(st.integers(-3, 3), min_size=1, max_size=3),
    st.lists(st.tuples(*[st.integers(0, 2)] * 3, *[st.just(0)] * 4), min_size=3, max_size=3),
)


@settings(max_examples=40)
@given(st.lists(small, min_size=1, max_size=3), small)
def test_against_sympy(gens, f):
    gens = [g for g in gens if g]
    if not gens:
        return
    gb = groebner_compute(gens)
    ref = sympy.groebner([to_sympy(g) for g in gens], *SYMS, order="grevlex")
    mine = {sympy.expand(to_sympy(p)) for p in gb.basis}
    assert mine == {sympy.expand(g / sympy.LC(g, *SYMS, order="grevlex")) for g in ref.exprs}
    assert gb.contains(f) == ref.contains(to_sympy(f))
    assert s_polynomials_reduce_to_zero(gb) and is_reduced(gb)
    nf = normal_form(f, gb)
    assert normal_form(nf, gb) == nf


@pytest.mark.parametrize("fracs", ["-1/2,-1/3,1/5", "1/3,-1/4,3/5", "-1/2,2/3,-3/4", "1/3,1/3,-2/5"])
def test_swap12_invariance(fracs):
    s = parse_seifert(fracs)
    d = quotient_dimension(groebner_compute(build_ideal_hardcoded(s)))
    assert quotient_dimension(groebner_compute(build_ideal_hardcoded(s.swap12()))) == d


@pytest.mark.parametrize("order", ["deglex", "lex"])
def test_dimension_independent_of_order(order):
    ideal = build_ideal_hardcoded(parse_seifert("-1/2,-1/2,1/2"))
    assert quotient_dimension(groebner_compute(ideal, order=order)) == \
        quotient_dimension(groebner_compute(ideal))
