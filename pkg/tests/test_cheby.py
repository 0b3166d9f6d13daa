import pytest
import sympy as sp
from hypothesis import given, strategies as st

from charscheme.cheby import (IntPoly, cheb_backward, cheb_derivative, cheb_S,
                              cheb_special_values, cheb_T)
from charscheme.cyclo import CycloNumber, cyclo_embed
from conftest import Laurent

X = sp.Symbol("X")


def as_sympy(p: IntPoly):
    return sum(c * X**k for k, c in enumerate(p.coeffs))


def test_small_values():
    assert cheb_T(0) == IntPoly.constant(2)
    assert cheb_T(2).coeffs == (-2, 0, 1)
    assert cheb_T(-5) == cheb_T(5)
    assert cheb_S(1) == IntPoly.constant(1)
    assert cheb_S(3).coeffs == (-1, 0, 1)
    assert cheb_S(-3) == -cheb_S(3)
    assert cheb_S(0).is_zero()


def test_derivatives():
    assert cheb_derivative(cheb_T(2)) == cheb_S(2) * 2
    assert cheb_derivative(IntPoly.constant(2)).is_zero()
    assert cheb_derivative(cheb_S(3)).coeffs == (0, 2)


@pytest.mark.parametrize("n", range(0, 40))
def test_against_sympy_chebyshev(n):
    # T_n(X) = 2 T^classical_n(X/2), S_n(X) = U_{n-1}(X/2)
    assert sp.expand(as_sympy(cheb_T(n)) - 2 * sp.chebyshevt(n, X / 2)) == 0
    if n >= 1:
        assert sp.expand(as_sympy(cheb_S(n)) - sp.chebyshevu(n - 1, X / 2)) == 0


@given(st.integers(-64, 64))
def test_recurrence(n):
    Xp = IntPoly.X()
    assert cheb_T(n + 1) == Xp * cheb_T(n) - cheb_T(n - 1)
    assert cheb_S(n + 1) == Xp * cheb_S(n) - cheb_S(n - 1)


@given(st.integers(-40, 0))
def test_symmetry_matches_backward_recurrence(n):
    assert cheb_backward("T", n) == cheb_T(n)
    assert cheb_backward("S", n) == cheb_S(n)


@given(st.integers(0, 30))
def test_laurent_identities(n):
    x, xi = Laurent.x(1), Laurent.x(-1)
    t = x + xi
    assert cheb_T(n)(t, Laurent({0: 1})) == Laurent.x(n) + Laurent.x(-n)
    assert (x - xi) * cheb_S(n)(t, Laurent({0: 1})) == Laurent.x(n) - Laurent.x(-n)


@given(st.integers(1, 30))
def test_T_derivative_is_n_S(n):
    assert cheb_derivative(cheb_T(n)) == cheb_S(n) * n


def test_special_values_examples():
    z5 = cyclo_embed(1, 5)
    sv = cheb_special_values(5, 1, z5)
    assert sv.S_n_x == 0 and sv.S_nplus1_x == 1 and sv.S_nminus1_x == -1
    assert cheb_special_values(3, 1, cyclo_embed(1, 3)).S_n_2eps == 3
    assert cheb_S(3)(2) == 3
    i = cyclo_embed(1, 4)
    sv = cheb_special_values(2, -1, i)
    assert sv.dS_n_x == 1
    assert cheb_derivative(cheb_S(2))(0) == 1


def test_special_values_rejects_bad_input():
    with pytest.raises(ValueError):
        cheb_special_values(3, 1, cyclo_embed(0, 3))
    with pytest.raises(ValueError):
        cheb_special_values(3, -1, cyclo_embed(1, 3))
    with pytest.raises(ValueError):
        cheb_special_values(3, 2, cyclo_embed(1, 3))


def admissible(n):
    # zeta = exp(2 pi i k / 2n), zeta^n = (-1)^k, zeta != +-1
    for k in range(1, 2 * n):
        if k != n:
            yield (1 if k % 2 == 0 else -1), cyclo_embed(k, 2 * n)


@pytest.mark.parametrize("n", range(1, 17))
def test_special_values_match_evaluation(n):
    for eps, z in admissible(n):
        one = z.one()
        x = z + z.inverse()
        sv = cheb_special_values(n, eps, z)
        assert sv.S_n_x == cheb_S(n)(x, one)
        assert sv.S_nplus1_x == cheb_S(n + 1)(x, one)
        assert sv.S_nminus1_x == cheb_S(n - 1)(x, one)
        assert sv.S_n_2eps == cheb_S(n)(2 * eps)
        assert sv.dS_n_x == cheb_derivative(cheb_S(n))(x, one)
        assert sv.dS_nplus1_x == cheb_derivative(cheb_S(n + 1))(x, one)
        assert sv.dS_nminus1_x == cheb_derivative(cheb_S(n - 1))(x, one)
