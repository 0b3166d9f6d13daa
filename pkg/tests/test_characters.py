import cmath
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from charscheme.analysis import check_on_variety
from charscheme.characters import (InfiniteHomology, census, det3, enumerate_abelian,
                                   enumerate_irreducible, homology, kappa, p_minus, p_plus,
                                   relation_matrix, smith_normal_form)
from charscheme.cyclo import CycloNumber
from charscheme.presentation import SeifertParams, build_ideal_generic, build_ideal_hardcoded, parse_seifert

fiber = st.tuples(st.integers(2, 7), st.integers(-7, 7)).filter(lambda t: t[1] and gcd(*t) == 1)
params = st.lists(fiber, min_size=3, max_size=3).map(
    lambda f: SeifertParams(tuple(p for p, _ in f), tuple(q for _, q in f))).filter(lambda s: s.euler != 0)


def rounded(zs):
    return tuple((round(z.real, 7) + 0.0, round(z.imag, 7) + 0.0) for z in zs)


def brute_abelian(s):
    """Inversion classes of homs H1 -> C*, by solving the relations mod |H1| directly."""
    n = homology(s).order
    (p1, p2, p3), (q1, q2, q3) = s.p, s.q
    pts = set()
    homs = 0
    for rh in range(n):
        for r1 in range(n):
            if (p1 * r1 - q1 * rh) % n:
                continue
            for r2 in range(n):
                if (p2 * r2 - q2 * rh) % n or (p3 * (r1 + r2) - q3 * rh) % n:
                    continue
                homs += 1
                z = lambda r: cmath.exp(2j * cmath.pi * r / n)
                m, a1, a2 = z(rh), z(r1), z(r2)
                vals = [m, a1, a2, a1 * a2, m * a1, m * a2, m * a1 * a2]
                pts.add(rounded([v + 1 / v for v in vals]))
    return homs, pts


def test_snf_oracle_examples():
    hd = homology(parse_seifert("-1/2,-1/3,1/5"))
    assert (hd.order, hd.order_mod2) == (19, 1)
    hd = homology(parse_seifert("-1/2,-1/2,1/2"))
    assert hd.order == 4


@given(params)
def test_snf_properties(s):
    A = relation_matrix(s)
    U, D, V = smith_normal_form(A)
    d = [D[i][i] for i in range(3)]
    assert all(D[i][j] == 0 for i in range(3) for j in range(3) if i != j)
    assert all(d[i + 1] % d[i] == 0 for i in range(2))
    assert abs(det3(U)) == 1 and abs(det3(V)) == 1
    hd = homology(s)
    assert hd.order == abs(det3(A)) == abs(s.p[0] * s.p[1] * s.p[2] * s.euler)
    assert hd.order_mod2 == 2 ** sum(1 for x in d if x % 2 == 0)


def test_infinite_homology():
    s = parse_seifert("1/2,1/3,-5/6")
    assert s.euler == 0
    assert homology(s).order is None
    with pytest.raises(InfiniteHomology):
        census(s)
    with pytest.raises(InfiniteHomology):
        enumerate_abelian(s)


def test_frozen_counts():
    c = census(parse_seifert("-1/2,-1/3,1/5"))
    assert len(c.abelian) == 10 and len(c.irreducible) == 2
    assert c.count_formula_lhs == 12 - c.x_M


def test_trivial_homology():
    s = parse_seifert("-1/2,1/3,1/5")
    c = census(s)
    assert c.homology.order == 1
    assert len(c.abelian) == 1 and c.x_M == 0
    assert all(x == 2 for x in c.abelian[0].coords)
    assert len(c.irreducible) == 2


@pytest.mark.parametrize("fracs", ["-1/2,-1/3,1/5", "-1/3,-1/3,-1/3", "1/2,-3/5,3/5", "-1/4,3/4,-3/5",
                                   "2/3,2/3,2/3", "-1/2,-1/2,1/2"])
def test_abelian_against_brute_force(fracs):
    s = parse_seifert(fracs)
    homs, pts = brute_abelian(s)
    assert homs == homology(s).order
    mine = [rounded(p.complex_coords()) for p in enumerate_abelian(s)]
    assert len(set(mine)) == len(mine)
    assert set(mine) == pts


@pytest.mark.parametrize("fracs", ["-1/2,-1/3,1/5", "-1/3,-1/3,-1/3", "1/3,-1/4,3/5", "-1/2,1/5,2/5"])
def test_points_on_both_presentations(fracs):
    s = parse_seifert(fracs)
    c = census(s)
    for ideal in (build_ideal_hardcoded(s), build_ideal_generic(s)):
        for pt in c.points:
            check_on_variety(ideal, pt)
            z = pt.complex_coords()
            assert all(abs(g.poly.eval(z, zero=0j)) < 1e-8 for g in ideal.generators)


@settings(max_examples=30)
@given(params)
def test_census_invariants(s):
    c = census(s)
    assert len(c.abelian) * 2 == c.homology.order + c.homology.order_mod2
    keys = [rounded(p.complex_coords()) for p in c.points]
    assert len(set(keys)) == len(keys)
    for pt in c.abelian:
        u, x1, x2, x3 = pt.coords[:4]
        flag = (u == 2 or u == -2) and all(not (x == 2 or x == -2) for x in (x1, x2, x3))
        assert pt.exceptional == flag
    for pt in c.irreducible:
        eps = pt.witness["eps"]
        u, x1, x2, x3, y1, y2, y3 = pt.coords
        assert u == 2 * eps and not pt.exceptional
        assert (y1, y2, y3) == (eps * x1, eps * x2, eps * x3)
        assert not kappa(x1, x2, x3).is_zero()
        assert all(not (x == 2 or x == -2) for x in (x1, x2, x3))
    assert c.x_M == sum(p.exceptional for p in c.points)
    assert c.count_formula_lhs == c.count_formula_rhs_symmetric


@given(params)
def test_irreducible_with_reducible_count(s):
    # every admissible trace triple, kappa unrestricted, gives the symmetric product count
    p = s.p
    total = len(enumerate_irreducible(s, include_reducible=True))
    assert total == (p_plus(p[0]) * p_plus(p[1]) * p_plus(p[2]) + p_minus(p[0]) * p_minus(p[1]) * p_minus(p[2]))


def test_kappa_zero_triples_are_abelian():
    s = parse_seifert("-1/3,-1/3,-1/3")
    ab = enumerate_abelian(s)
    for pt in enumerate_irreducible(s, include_reducible=True):
        if pt.witness["kappa_zero"]:
            assert any(pt.same_point(a) for a in ab)


@pytest.mark.parametrize("p", range(2, 12))
def test_p_plus_minus(p):
    from math import ceil, floor
    assert p_plus(p) == ceil(p / 2) - 1 and p_minus(p) == floor(p / 2)
    assert p_plus(p) + p_minus(p) == p - 1


def test_json_roundtrip():
    c = census(parse_seifert("-1/2,-1/3,1/5"))
    d = c.to_json()
    assert d["homology"]["order"] == 19
    pt = c.points[0]
    back = [CycloNumber.from_json(x) for x in pt.to_json()["coords"]]
    assert back == list(pt.coords)
