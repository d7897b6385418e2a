import pytest

from golden import HTILDE_41_T0, HTILDE_41_T1, NABLA_3
from hookharm.macdonald import (Q, QT, T, cell_stats, coeff_t, delta,
                                expand_in_htilde, expand_in_htilde_bareiss, hl_H, htilde,
                                htilde_gram_schmidt, kostka_foulkes, nabla, nabla_shat_hook,
                                reverse_q, science_fiction, shat_hook, specialize, star_scalar)
from hookharm.partitions import conjugate, n_stat, partition_list
from hookharm.rings import MPoly, parse_poly
from hookharm.symfunc import SymFunc, e_perp, omega, s


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_filling_formula_matches_gram_schmidt(n):
    for mu in partition_list(n):
        assert htilde(mu) == htilde_gram_schmidt(mu), mu


def test_htilde_41_low_t_coefficients():
    H = htilde((4, 1))
    for k, want in ((0, HTILDE_41_T0), (1, HTILDE_41_T1)):
        got = coeff_t(H, k)
        assert got == SymFunc("s", {la: parse_poly(c).lift(QT) for la, c in want.items()})


def test_htilde_orthogonal_under_star_product():
    mus = partition_list(3)
    for i, a in enumerate(mus):
        for b in mus[i + 1:]:
            assert star_scalar(htilde(a), htilde(b)) == 0


def test_nabla_small_golden():
    got = nabla_shat_hook(2, 0)
    want = SymFunc("s", {la: parse_poly(c).lift(QT) for la, c in NABLA_3.items()})
    assert got == want
    # nabla e_n at n = 2 is s_2 + (q + t) s_11
    assert nabla(s(1, 1)) == SymFunc("s", {(2,): 1, (1, 1): Q + T})


def test_bareiss_route_agrees():
    for f in (s(2, 1, 1), s(3, 1) + 2 * s(2, 2), shat_hook(1, 2).to("s")):
        assert expand_in_htilde(f) == expand_in_htilde_bareiss(f)


def test_kostka_foulkes_values():
    q = MPoly.var("q")
    assert kostka_foulkes((2, 1), (1, 1, 1)) == q + q ** 2
    assert kostka_foulkes((3,), (1, 1, 1)) == q ** 3
    assert kostka_foulkes((2, 1), (2, 1)) == MPoly.const(1, ("q",))
    assert kostka_foulkes((2, 2), (2, 1, 1)) == q
    with pytest.raises(ValueError):
        kostka_foulkes((2,), (1,))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_htilde_at_t_zero_is_hall_littlewood(n):
    # H~_mu(q, 0) = q^{n(mu')} omega H_mu(1/q)
    for mu in partition_list(n):
        want = reverse_q(omega(hl_H(mu)), n_stat(conjugate(mu)))
        assert specialize(htilde(mu), {"t": 0}) == want, mu


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_near_row_splitting(n):
    sf = science_fiction(n)
    assert all(sf.checks.values()), sf.checks


def test_near_row_at_q_one():
    # H~_{(n-1,1)}(1, t) = h_{2 1^{n-2}} + t e_{2 1^{n-2}}
    for n in (3, 4, 5):
        mu = (2,) + (1,) * (n - 2)
        want = SymFunc.term("h", mu).to("s") + SymFunc.term("e", mu).to("s") * SymFunc.one("s", T)
        got = specialize(htilde((n - 1, 1)), {"q": 1})
        assert got == specialize(want, {"q": 1})


def test_delta_e1_and_eigenvalues():
    # Delta_{e_1} H~_mu = B_mu H~_mu
    for mu in partition_list(3):
        assert delta(s(1), htilde(mu)) == htilde(mu) * SymFunc.one("s", cell_stats(mu).B)
    assert cell_stats((2, 1)).B == 1 + Q + T
    assert cell_stats((2, 1)).T == Q * T


def test_nabla_hooks_are_polynomial_and_skew():
    # e_1^perp nabla(s-hat_(n-1|0)) = sum_a nabla(s-hat_(a|n-a-2)) at n = 4
    lhs = e_perp(1, nabla_shat_hook(3, 0))
    rhs = SymFunc("s")
    for a in range(3):
        rhs = rhs + nabla_shat_hook(a, 2 - a)
    assert lhs == rhs


def test_science_fiction_needs_n_two():
    with pytest.raises(ValueError):
        science_fiction(1)
