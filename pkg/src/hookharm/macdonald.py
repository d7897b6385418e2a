"""Modified Macdonald polynomials and the operators diagonal on them.

``htilde`` builds H~_mu from the Haglund-Haiman-Loehr filling formula
(inv and maj statistics on fillings of the French diagram).  An independent
construction, Gram-Schmidt for P_mu followed by J_mu and the plethystic
substitution, is available as ``htilde_gram_schmidt`` and serves as an
oracle in the tests.

``nabla`` and ``delta`` expand their argument in the H~ basis using the
star scalar product <p_la, p_mu>_* = (-1)^{|mu|-l(mu)} z_mu
prod (1 - q^mu_i)(1 - t^mu_i), for which the H~_mu are orthogonal.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from . import cache
from .partitions import (arm, cells, centralizer_size, conjugate, leg, n_stat, partition_list)
from .rings import MPoly, RatFunc, is_zero
from .symfunc import (Alphabet, SymFunc, _add_into, omega, plethysm, symfunc_from_json,
                      symfunc_to_json)

Q, T = MPoly.vars("q", "t")
QT = Q.names


class SingularBasis(ArithmeticError):
    pass


class NonPolynomialQuotient(ArithmeticError):
    pass


def qt_term(i: int, j: int) -> MPoly:
    return MPoly.from_terms({(i, j): 1}, QT)


def qt_poly(d: dict) -> MPoly:
    return MPoly.from_terms(d, QT)


@dataclass(frozen=True)
class CellStats:
    T: MPoly
    B: MPoly


def cell_stats(mu) -> CellStats:
    """T_mu = prod q^i t^j and B_mu = sum q^i t^j over cells (i, j), (0,0) included."""
    cs = cells(mu)
    Texp = (sum(k for k, _ in cs), sum(l for _, l in cs))
    B = {}
    for k, l in cs:
        B[(k, l)] = B.get((k, l), 0) + 1
    return CellStats(qt_poly({Texp: 1}), qt_poly(B))


# HHL construction ------------------------------------------------------------------

def _multiset_perms(items):
    items = sorted(items)
    n = len(items)
    out = []
    cur = []
    counts = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1
    keys = sorted(counts)

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                cur.append(k)
                rec()
                cur.pop()
                counts[k] += 1

    rec()
    return out


def _hhl_data(mu):
    cs = cells(mu)
    index = {c: i for i, c in enumerate(cs)}
    attack = []
    for (k, l), i in index.items():
        for (k2, l2), j in index.items():
            # (u, v) with u before v in reading order (top row first, left to right)
            if l2 == l and k < k2:
                attack.append((i, j))
            elif l2 == l - 1 and k2 < k:
                attack.append((i, j))
    desc = []
    for (k, l), i in index.items():
        if l > 0:
            desc.append((i, index[(k, l - 1)], arm(mu, (k, l)), leg(mu, (k, l)) + 1))
    return len(cs), attack, desc


def _hhl_monomial_coeff(mu, nu, data) -> dict:
    n, attack, desc = data
    word = [i + 1 for i, p in enumerate(nu) for _ in range(p)]
    out = {}
    for f in _multiset_perms(word):
        inv = 0
        for i, j in attack:
            if f[i] > f[j]:
                inv += 1
        maj = 0
        for i, j, a, lg in desc:
            if f[i] > f[j]:
                inv -= a
                maj += lg
        key = (inv, maj)
        out[key] = out.get(key, 0) + 1
    return out


def _htilde_compute(mu) -> SymFunc:
    n = sum(mu)
    data = _hhl_data(mu)
    mon = {}
    for nu in partition_list(n):
        mon[nu] = qt_poly(_hhl_monomial_coeff(mu, nu, data))
    return SymFunc("m", mon).to("s")


@lru_cache(maxsize=None)
def htilde(mu) -> SymFunc:
    """H~_mu in the Schur basis, coefficients in Z[q, t]."""
    mu = tuple(mu)
    if not mu:
        return SymFunc.one("s", MPoly.const(1, QT))
    return cache.cached("htilde", list(mu), lambda: _htilde_compute(mu),
                        symfunc_to_json, _decode_qt)


def _decode_qt(payload) -> SymFunc:
    f = symfunc_from_json(payload)
    return f.map_coeffs(lambda c: MPoly.coerce(c, QT) if not isinstance(c, RatFunc) else c)


@lru_cache(maxsize=None)
def htilde_p(mu) -> SymFunc:
    return htilde(tuple(mu)).to("p")


# Gram-Schmidt oracle -------------------------------------------------------------------

def _qt_hall_weight(la, q=Q, t=T) -> RatFunc:
    num = MPoly.const(centralizer_size(la), QT)
    den = MPoly.const(1, QT)
    for k in la:
        num = num * (1 - q ** k)
        den = den * (1 - t ** k)
    return RatFunc(num, den)


def _qt_scalar(f: SymFunc, g: SymFunc):
    fp, gp = f.to("p"), g.to("p")
    total = RatFunc(0)
    for la, c in fp.coeffs.items():
        d = gp.coeffs.get(la)
        if d is not None:
            total = total + RatFunc.coerce(c) * d * _qt_hall_weight(la)
    return total


def macdonald_P(mu) -> SymFunc:
    """P_mu by Gram-Schmidt on monomials along reverse dominance order."""
    n = sum(mu)
    P = list(reversed(partition_list(n)))  # (1^n) first
    basis = {}
    for la in P:
        v = SymFunc.term("m", la, RatFunc(1)).to("p")
        for nu, pn in basis.items():
            c = _qt_scalar(SymFunc.term("m", la, RatFunc(1)), pn) / _qt_scalar(pn, pn)
            v = v - pn.scale(c)
        basis[la] = v
        if la == tuple(mu):
            return v.to("m")
    raise ValueError(mu)


def _invert_t(c) -> RatFunc:
    """c(q, 1/t) for a RatFunc c(q, t)."""
    c = RatFunc.coerce(c)

    def rev(p: MPoly):
        d = p.degree_in("t")
        if d < 0:
            return p, 0
        out = {}
        pl = p.lift(QT)
        for (i, j), v in pl.terms().items():
            out[(i, d - j)] = v
        return qt_poly(out), d

    a, da = rev(c.num)
    b, db = rev(c.den)
    # num(q,1/t)/den(q,1/t) = (a t^-da)/(b t^-db)
    if da >= db:
        return RatFunc(a, b * T ** (da - db))
    return RatFunc(a * T ** (db - da), b)


def htilde_gram_schmidt(mu) -> SymFunc:
    """H~_mu = t^{n(mu)} J_mu[X/(1 - 1/t); q, 1/t], J_mu = c_mu P_mu."""
    mu = tuple(mu)
    Pm = macdonald_P(mu)
    c = MPoly.const(1, QT)
    for cell in cells(mu):
        c = c * (1 - qt_term(arm(mu, cell), leg(mu, cell) + 1))
    J = Pm.scale(RatFunc(c))
    Jinv = J.map_coeffs(_invert_t).to("p")
    out = {}
    for la, v in Jinv.coeffs.items():
        w = v
        for k in la:
            w = w * RatFunc(T ** k, T ** k - 1)
        out[la] = w * T ** n_stat(mu)
    return SymFunc("p", out).to("s").map_coeffs(lambda r: RatFunc.coerce(r).as_poly())


# star scalar product and H~ expansions ----------------------------------------------------

@lru_cache(maxsize=None)
def star_weight(la) -> MPoly:
    n = sum(la)
    w = MPoly.const((-1) ** (n - len(la)) * centralizer_size(la), QT)
    for k in la:
        w = w * (1 - Q ** k) * (1 - T ** k)
    return w


def star_scalar(f: SymFunc, g: SymFunc):
    fp, gp = f.to("p"), g.to("p")
    total = 0
    for la, c in fp.coeffs.items():
        d = gp.coeffs.get(la)
        if d is not None:
            total = total + c * d * star_weight(la)
    return total


@lru_cache(maxsize=None)
def htilde_norm(mu) -> MPoly:
    h = htilde_p(mu)
    return star_scalar(h, h)


def expand_in_htilde(f: SymFunc) -> dict:
    """{mu: c_mu} with f = sum c_mu H~_mu, for f homogeneous."""
    degs = f.degrees()
    if not degs:
        return {}
    if len(degs) != 1:
        raise ValueError("expand_in_htilde needs a homogeneous argument")
    n = degs.pop()
    fp = f.to("p")
    out = {}
    for mu in partition_list(n):
        nrm = htilde_norm(mu)
        if nrm.is_zero():
            raise SingularBasis(f"zero norm for {mu}")
        v = star_scalar(fp, htilde_p(mu))
        if not is_zero(v):
            out[mu] = RatFunc.coerce(v) / nrm
    return out


def expand_in_htilde_bareiss(f: SymFunc) -> dict:
    """Same as expand_in_htilde, by fraction-free elimination in the Schur basis.

    Independent of the star scalar product; used as a cross-check.
    """
    degs = f.degrees()
    if not degs:
        return {}
    n = degs.pop()
    mus = list(partition_list(n))
    las = mus
    fs = f.to("s")
    N = len(mus)
    # augmented matrix over Q[q,t]; rows indexed by la, columns by mu plus rhs
    A = []
    dens = [RatFunc.coerce(fs.coefficient(la)).den for la in las]
    L = MPoly.const(1, QT)
    for d in dens:
        L = L * d.exact_div(L.gcd(d))
    for la in las:
        row = [MPoly.coerce(htilde(mu).coefficient(la), QT).lift(QT) for mu in mus]
        c = RatFunc.coerce(fs.coefficient(la))
        row.append((c.num * L.exact_div(c.den)).lift(QT))
        A.append(row)
    prev = MPoly.const(1, QT)
    for k in range(N):
        piv = next((i for i in range(k, N) if not A[i][k].is_zero()), None)
        if piv is None:
            raise SingularBasis("H~ basis matrix is singular")
        A[k], A[piv] = A[piv], A[k]
        for i in range(k + 1, N):
            for j in range(k + 1, N + 1):
                A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]).exact_div(prev)
            A[i][k] = MPoly.const(0, QT)
        prev = A[k][k]
    x = [None] * N
    for i in range(N - 1, -1, -1):
        r = RatFunc(A[i][N])
        for j in range(i + 1, N):
            r = r - RatFunc(A[i][j]) * x[j]
        x[i] = r / RatFunc(A[i][i])
    return {mu: xi / RatFunc(L) for mu, xi in zip(mus, x) if not xi.is_zero()}


def combine_htilde(coeffs: dict, eigen=None) -> SymFunc:
    """sum_mu eigen(mu) c_mu H~_mu in the Schur basis, reduced once per term."""
    if not coeffs:
        return SymFunc("s", {})
    dens = [RatFunc.coerce(c).den for c in coeffs.values()]
    L = dens[0]
    for d in dens[1:]:
        g = L.gcd(d)
        L = L * d.exact_div(g)
    acc = {}
    for mu, c in coeffs.items():
        c = RatFunc.coerce(c)
        factor = c.num * L.exact_div(c.den)
        if eigen is not None:
            factor = factor * eigen(mu)
        for la, h in htilde(mu).coeffs.items():
            _add_into(acc, la, factor * h)
    out = {}
    for la, v in acc.items():
        r = RatFunc(v, L)
        if not r.is_zero():
            out[la] = r.as_poly() if r.is_polynomial() else r
    return SymFunc("s", out)


def _qt_coerce(f: SymFunc) -> SymFunc:
    return f.to("s")


def nabla(f: SymFunc) -> SymFunc:
    """nabla f: scale the H~_mu component of f by T_mu."""
    f = f.to("s")
    out = SymFunc("s")
    for d in sorted(f.degrees()):
        part = f.homogeneous_part(d)
        co = expand_in_htilde(part)
        out = out + combine_htilde(co, lambda mu: cell_stats(mu).T)
    return out


def delta(g: SymFunc, f: SymFunc, primed: bool = False) -> SymFunc:
    """Delta_g (or Delta'_g) with eigenvalue g[B_mu] (or g[B_mu - 1]) on H~_mu."""
    f = f.to("s")

    def eig(mu):
        B = cell_stats(mu).B - (1 if primed else 0)
        v = plethysm(g, Alphabet(B, 0))
        return MPoly.coerce(v, QT) if not isinstance(v, RatFunc) else v.as_poly()

    out = SymFunc("s")
    for d in sorted(f.degrees()):
        co = expand_in_htilde(f.homogeneous_part(d))
        out = out + combine_htilde(co, eig)
    return out


def shat(rho) -> SymFunc:
    """(-1/qt)^{iota(rho)} s_rho."""
    from .partitions import iota
    a = iota(rho)
    return SymFunc.term("s", rho, RatFunc((-1) ** a, (Q * T) ** a))


def shat_hook(a: int, b: int) -> SymFunc:
    if a < 0 or b < 0:
        raise ValueError("hook arms and legs are nonnegative")
    return SymFunc.term("s", (a + 1,) + (1,) * b, RatFunc((-1) ** a, (Q * T) ** a))


def nabla_shat_hook(a: int, b: int) -> SymFunc:
    """nabla(shat_(a|b)) with polynomial coefficients (checked), cached on disk."""
    def compute():
        r = nabla(shat_hook(a, b))
        return r.map_coeffs(_as_qt_poly)

    return cache.cached("nabla_shat", [a, b], compute, symfunc_to_json, _decode_qt)


def _as_qt_poly(c):
    if isinstance(c, RatFunc):
        if not c.is_polynomial():
            raise ArithmeticError(f"non-polynomial coefficient {c}")
        c = c.as_poly()
    return MPoly.coerce(c, QT).lift(QT)


# Hall-Littlewood ---------------------------------------------------------------------------

def _standard_subword_charge(word: list) -> tuple:
    """Extract one standard subword (cyclic right-to-left scan); return (charge, rest)."""
    n = len(word)
    m = max(word)
    picked = []
    pos = n
    for letter in range(1, m + 1):
        found = None
        for step in range(1, n + 1):
            i = (pos - step) % n
            if word[i] == letter and i not in picked:
                found = i
                break
        if found is None:
            break
        picked.append(found)
        pos = found
    # index: letter 1 -> 0; letter r+1 gets +1 if it sits to the right of r
    idx = 0
    ch = 0
    for r in range(1, len(picked)):
        if picked[r] > picked[r - 1]:
            idx += 1
        ch += idx
    rest = [w for i, w in enumerate(word) if i not in set(picked)]
    return ch, rest


def charge(word) -> int:
    word = list(word)
    total = 0
    while word:
        c, word = _standard_subword_charge(word)
        total += c
    return total


def reading_word(tab: dict) -> list:
    """Rows from top to bottom, each read left to right (French)."""
    rows = {}
    for (k, l), v in tab.items():
        rows.setdefault(l, []).append((k, v))
    out = []
    for l in sorted(rows, reverse=True):
        out.extend(v for _, v in sorted(rows[l]))
    return out


@lru_cache(maxsize=None)
def kostka_foulkes(la: tuple, mu: tuple) -> MPoly:
    """K_{la,mu}(q) = sum over SSYT of shape la, content mu, of q^charge."""
    from .partitions import ssyt_enumerate
    q = MPoly.var("q")
    if sum(la) != sum(mu):
        raise ValueError("size mismatch")
    out = {}
    for tb in ssyt_enumerate(la, (), len(mu)):
        cont = tb.content()
        if tuple(cont.get(i + 1, 0) for i in range(len(mu))) != tuple(mu):
            continue
        c = charge(reading_word(tb.as_dict()))
        out[(c,)] = out.get((c,), 0) + 1
    return MPoly.from_terms(out, ("q",)) if out else MPoly.const(0, ("q",))


def hl_H(mu) -> SymFunc:
    """H_mu = omega Q'_{mu'} = sum_la K_{la', mu'}(q) s_la."""
    mu = tuple(mu)
    n = sum(mu)
    mc = conjugate(mu)
    out = {}
    for la in partition_list(n):
        k = kostka_foulkes(conjugate(la), mc)
        if not k.is_zero():
            out[la] = k.lift(QT)
    return SymFunc("s", out)


def reverse_q(f: SymFunc, d: int) -> SymFunc:
    """q^d f(1/q), coefficientwise (must stay polynomial)."""
    def rev(c):
        c = MPoly.coerce(c, QT).lift(QT)
        out = {}
        for (i, j), v in c.terms().items():
            if i > d:
                raise ArithmeticError("q-degree exceeds the reversal degree")
            out[(d - i, j)] = v
        return qt_poly(out)

    return f.map_coeffs(rev)


def coeff_t(f: SymFunc, k: int) -> SymFunc:
    return f.map_coeffs(lambda c: MPoly.coerce(c, QT).lift(QT).coefficient_of("t", k))


def specialize(f: SymFunc, values: dict) -> SymFunc:
    def sub(c):
        if isinstance(c, RatFunc):
            return c.subs(values)
        if isinstance(c, MPoly):
            return c.subs(values)
        return c
    return f.map_coeffs(sub)


@dataclass
class ScienceFiction:
    n: int
    I: SymFunc
    I_perp: SymFunc
    checks: dict = field(default_factory=dict)


def frobenius_dimension(f: SymFunc) -> int:
    """Dimension of the module with Frobenius characteristic f at q = t = 1."""
    total = 0
    for la, c in f.to("s").coeffs.items():
        v = c
        if isinstance(c, (MPoly, RatFunc)):
            v = c.subs({"q": 1, "t": 1})
            v = v.as_poly() if isinstance(v, RatFunc) else v
            v = v.constant_value() if isinstance(v, MPoly) else v
        total += v * _flag_dim(la)
    return int(total)


@lru_cache(maxsize=None)
def _flag_dim(la) -> int:
    """Number of standard tableaux (hook length formula)."""
    n = sum(la)
    lc = conjugate(la)
    prod = 1
    for l, p in enumerate(la):
        for k in range(p):
            prod *= (p - k - 1) + (lc[k] - l - 1) + 1
    return factorial(n) // prod


def science_fiction(n: int) -> ScienceFiction:
    if n < 2:
        raise ValueError("n >= 2 required")
    H1 = htilde((n - 1, 1))
    Hn = htilde((n,))
    den = Q ** (n - 1) - T
    I = {}
    for la in set(H1.coeffs) | set(Hn.coeffs):
        num = MPoly.coerce(H1.coefficient(la), QT) * Q ** (n - 1) - T * MPoly.coerce(Hn.coefficient(la), QT)
        if not den.divides(num):
            raise NonPolynomialQuotient(f"I_{n} coefficient of s_{la} is not a polynomial")
        I[la] = num.exact_div(den)
    I = SymFunc("s", I)
    Iperp = H1 - I
    HL = hl_H((n - 1, 1))
    checks = {
        "I_is_reversed_omega_H": I == reverse_q(omega(HL), comb(n - 1, 2)),
        "I_perp_is_t_H": Iperp == HL.scale(T),
        "decomposition": H1 == reverse_q(omega(HL), comb(n - 1, 2)) + HL.scale(T),
        "dim_I": frobenius_dimension(I) == factorial(n) // 2,
        "dim_I_perp": frobenius_dimension(Iperp) == factorial(n) // 2,
    }
    return ScienceFiction(n, I, Iperp, checks)
