from itertools import groupby

import pytest

from hookharm.macdonald import QT, coeff_t, nabla, nabla_shat_hook
from hookharm.paths import (DyckPath, NotComparable, OutOfRange, area, big_gamma, chain_d, dinv,
                            dyck_paths, llt, shuffle_rhs, staircase, tamari, trivariate_rhs)
from hookharm.rings import MPoly
from hookharm.symfunc import SymFunc, s


def test_catalan_counts():
    assert [len(dyck_paths(n)) for n in range(1, 8)] == [1, 2, 5, 14, 42, 132, 429]


def test_paths_validate():
    with pytest.raises(ValueError):
        DyckPath((0, 1))
    with pytest.raises(ValueError):
        DyckPath((2, 0))
    assert DyckPath((1, 0)).row_areas() == (0, 0)
    assert area(DyckPath((0, 0, 0))) == 3


def test_big_gamma():
    assert big_gamma(4, 0) == DyckPath(staircase(4))
    assert big_gamma(4, 2).gamma == (3, 1, 0, 0)
    assert area(big_gamma(5, 3)) == 3
    with pytest.raises(OutOfRange):
        big_gamma(3, 3)


def test_word_roundtrip():
    for n in range(1, 6):
        for g in dyck_paths(n):
            w = g.word()
            assert w.count("S") == w.count("E") == n
            assert DyckPath.from_word(w) == g
            assert DyckPath.from_json(g.to_json()) == g


def test_llt_extremes():
    # tallest path: one vertical strip with distinct row areas, so no dinv
    assert llt((0, 0, 0)) == s(1, 1, 1)
    # staircase: every row has area zero; this is the t^0 part of nabla e_n
    for n in (2, 3, 4):
        en = SymFunc.term("e", (n,)).to("s")
        want = coeff_t(nabla(en), 0).map_coeffs(lambda c: MPoly.coerce(c).subs({"t": 0}))
        got = llt(staircase(n)).map_coeffs(lambda c: MPoly.coerce(c).lift(QT))
        assert got == want
    assert dinv(DyckPath((1, 0)), (1, 2)) == 1
    assert dinv(DyckPath((1, 0)), (2, 1)) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_shuffle_matches_nabla(n):
    for a in range(n):
        want = nabla_shat_hook(a, n - 1 - a).map_coeffs(lambda c: MPoly.coerce(c, QT).lift(QT))
        assert shuffle_rhs(n, a) == want, a


def test_tamari_pentagon():
    rel = tamari(3)
    assert len(rel.elements) == 5
    assert sum(len(v) for v in rel.covers.values()) == 5
    bottom, top = staircase(3), (0, 0, 0)
    assert all(rel.leq(bottom, g) and rel.leq(g, top) for g in rel.elements)
    assert chain_d(bottom, top) == 3
    with pytest.raises(NotComparable):
        chain_d(top, bottom)
    with pytest.raises(NotComparable):
        chain_d(bottom, (0, 0))


def test_trivariate_at_size_two():
    # intervals (low, low), (low, high), (high, high) with LLT_low(t) = s_2 + t s_11
    # and LLT_high(t) = s_11
    got = trivariate_rhs(2, 0)
    q, t = MPoly.vars("q", "t")
    assert got.coefficient((2,)) == 1
    assert got.coefficient((1, 1)) == 1 + q + t
    with pytest.raises(OutOfRange):
        trivariate_rhs(5, 2)


def test_llt_at_q_one_is_product_of_strips():
    # cells in a run of equal gamma entries form one vertical strip
    for g in dyck_paths(4):
        runs = sorted((len(list(r)) for _, r in groupby(g.gamma)), reverse=True)
        got = llt(g).map_coeffs(lambda c: MPoly.coerce(c).evaluate({"q": 1}))
        assert got == SymFunc.term("e", tuple(runs)).to("s"), g
