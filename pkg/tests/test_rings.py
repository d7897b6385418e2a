from fractions import Fraction

import pytest

from hookharm.rings import (DivisionByZero, MPoly, RatFunc, parse_poly, parse_ratfunc,
                            render_poly, render_ratfunc)


def qt():
    return MPoly.vars("q", "t")


def test_arithmetic_and_names_merge():
    q, t = qt()
    r = MPoly.var("r")
    f = (q + t) * (q - t) + r
    assert f == q ** 2 - t ** 2 + r
    assert set(f.names) == {"q", "t", "r"}
    assert f.degree_in("q") == 2
    assert (f - r).coefficient_of("t", 2) == MPoly.const(-1)


def test_from_terms_respects_name_order():
    a = MPoly.from_terms({(2, 1): 3}, ("t", "q"))
    q, t = qt()
    assert a == 3 * t ** 2 * q


def test_exact_division_and_divides():
    q, t = qt()
    num = q ** 3 - t ** 3
    den = q - t
    assert num.exact_div(den) == q ** 2 + q * t + t ** 2
    assert den.divides(num)
    assert not num.divides(den)
    with pytest.raises(ArithmeticError):
        (q + 1).exact_div(t)
    with pytest.raises(DivisionByZero):
        q.exact_div(MPoly.const(0))
    with pytest.raises(DivisionByZero):
        q / 0


def test_gcd():
    q, t = qt()
    g = ((q + t) * (q - 1)).gcd((q + t) * (t - 1))
    assert g == q + t or g == -(q + t)


def test_subs_and_evaluate():
    q, t = qt()
    f = q ** 2 * t + 3
    assert f.subs({"t": 1}) == q ** 2 + 3
    assert f.evaluate({"q": 2, "t": Fraction(1, 2)}) == 5


def test_render_parse_roundtrip():
    q, t = qt()
    for f in [q + t, q ** 3 * t + 2 * t ** 2 - 1, MPoly.const(Fraction(3, 4)), 7 * q * t ** 5]:
        assert parse_poly(render_poly(f)) == f


def test_ratfunc_reduces():
    q, t = qt()
    f = RatFunc((q - t) * (q + 1), (q - t) * (t + 2))
    assert f.den == t + 2 or f.den == (t + 2) * 1
    assert f * RatFunc(t + 2) == RatFunc(q + 1)
    assert not f.is_polynomial()
    assert RatFunc(q ** 2 - 1, q - 1).as_poly() == q + 1
    assert parse_ratfunc(render_ratfunc(f)) == f


def test_ratfunc_zero_denominator():
    with pytest.raises(DivisionByZero):
        RatFunc(MPoly.var("q"), 0)
