"""Symmetric functions over a pluggable coefficient domain.

A :class:`SymFunc` is a finite linear combination of basis elements indexed
by partitions, in one of the bases ``m, e, h, p, s, f`` (``f`` is the
forgotten basis, ``f_la = omega(m_la)``).  Coefficients may be ints,
Fractions, :class:`MPoly` or :class:`RatFunc`.

All transitions go through the Schur basis, using Kostka numbers and
Murnaghan-Nakayama characters; matrices are cached per degree.
"""
from __future__ import annotations

import re
import threading
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .partitions import (SizeMismatch, centralizer_size, conjugate, kostka, partition_list,
                         horizontal_strips_added, vertical_strips_added,
                         vertical_strips_removed, _horizontal_strips_removed)
from .rings import MPoly, RatFunc, coeff_to_str, is_zero, parse_ratfunc

BASES = ("m", "e", "h", "p", "s", "f")


class NotSymmetric(ValueError):
    pass


class IllFormedAlphabet(ValueError):
    pass


# characters and transition matrices -----------------------------------------

def _beta(la, L):
    return tuple(la[i] + (L - 1 - i) if i < len(la) else L - 1 - i for i in range(L))


@lru_cache(maxsize=None)
def character(la: tuple, mu: tuple) -> int:
    """chi^la evaluated at the class of cycle type mu (Murnaghan-Nakayama)."""
    if sum(la) != sum(mu):
        raise SizeMismatch(f"|{la}| != |{mu}|")
    if not mu:
        return 1
    r = mu[0]
    rest = mu[1:]
    L = len(la)
    beta = _beta(la, L)
    bs = set(beta)
    total = 0
    for b in beta:
        c = b - r
        if c < 0 or c in bs:
            continue
        sign = -1 if sum(1 for x in beta if c < x < b) % 2 else 1
        nb = sorted((bs - {b}) | {c}, reverse=True)
        nu = tuple(x - (L - 1 - i) for i, x in enumerate(nb))
        nu = tuple(p for p in nu if p > 0)
        total += sign * character(nu, tuple(sorted(rest, reverse=True)))
    return total


_lock = threading.Lock()
_to_s_cache: dict = {}
_from_s_cache: dict = {}


def _to_s(basis: str, n: int) -> dict:
    """{mu: {la: coeff}}: expansion of basis element mu in the Schur basis."""
    key = (basis, n)
    if key in _to_s_cache:
        return _to_s_cache[key]
    with _lock:
        if key not in _to_s_cache:
            _to_s_cache[key] = _build_to_s(basis, n)
    return _to_s_cache[key]


def _from_s(basis: str, n: int) -> dict:
    """{la: {mu: coeff}}: expansion of s_la in the given basis."""
    key = (basis, n)
    if key in _from_s_cache:
        return _from_s_cache[key]
    with _lock:
        if key not in _from_s_cache:
            _from_s_cache[key] = _build_from_s(basis, n)
    return _from_s_cache[key]


def _build_to_s(basis, n):
    P = partition_list(n)
    if basis == "s":
        return {la: {la: 1} for la in P}
    if basis == "p":
        return {mu: {la: character(la, mu) for la in P if character(la, mu)} for mu in P}
    if basis == "h":
        return {mu: {la: kostka(la, mu) for la in P if kostka(la, mu)} for mu in P}
    if basis == "e":
        return {mu: {la: kostka(conjugate(la), mu) for la in P if kostka(conjugate(la), mu)}
                for mu in P}
    if basis == "m":
        return _inverse_kostka_rows(n)
    if basis == "f":
        mrows = _inverse_kostka_rows(n)
        return {mu: {conjugate(la): c for la, c in row.items()} for mu, row in mrows.items()}
    raise ValueError(f"unknown basis {basis!r}")


def _inverse_kostka_rows(n):
    """m_mu = sum_la A[mu][la] s_la, by back substitution in dominance order."""
    P = partition_list(n)
    out = {}
    for mu in reversed(P):  # least dominant first
        row = {mu: 1}
        # s_mu = m_mu + sum_{nu < mu} K[mu][nu] m_nu
        for nu in out:
            k = kostka(mu, nu)
            if k and nu != mu:
                for la, c in out[nu].items():
                    row[la] = row.get(la, 0) - k * c
        out[mu] = {la: c for la, c in row.items() if c}
    return out


def _build_from_s(basis, n):
    P = partition_list(n)
    if basis == "s":
        return {la: {la: 1} for la in P}
    if basis == "p":
        return {la: {mu: Fraction(character(la, mu), centralizer_size(mu)) for mu in P
                     if character(la, mu)} for la in P}
    if basis == "m":
        return {la: {mu: kostka(la, mu) for mu in P if kostka(la, mu)} for la in P}
    if basis == "f":
        return {la: {mu: kostka(conjugate(la), mu) for mu in P if kostka(conjugate(la), mu)}
                for la in P}
    if basis == "h":
        return _inverse_h_rows(n)
    if basis == "e":
        hrows = _inverse_h_rows(n)
        return {la: hrows[conjugate(la)] for la in P}
    raise ValueError(f"unknown basis {basis!r}")


def _inverse_h_rows(n):
    """s_la = sum_mu B[la][mu] h_mu, processing la from most dominant down."""
    P = partition_list(n)
    out = {}
    for la in P:
        row = {la: 1}
        for nu in out:
            k = kostka(nu, la)
            if k and nu != la:
                for mu, c in out[nu].items():
                    row[mu] = row.get(mu, 0) - k * c
        out[la] = {mu: c for mu, c in row.items() if c}
    return out


# the SymFunc type ------------------------------------------------------------------

def _add_into(acc: dict, key, c):
    v = acc.get(key)
    acc[key] = c if v is None else v + c


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if not is_zero(v)}


class SymFunc:
    """Finite linear combination of basis elements b_la."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: str, coeffs: dict | None = None):
        if basis not in BASES:
            raise ValueError(f"unknown basis {basis!r}")
        self.basis = basis
        self.coeffs = _clean({tuple(k): v for k, v in (coeffs or {}).items()})

    @staticmethod
    def term(basis: str, la, c=1) -> "SymFunc":
        return SymFunc(basis, {tuple(p for p in la if p): c})

    @staticmethod
    def zero(basis: str = "s") -> "SymFunc":
        return SymFunc(basis, {})

    @staticmethod
    def one(basis: str = "s", c=1) -> "SymFunc":
        return SymFunc(basis, {(): c})

    # basic operations -------------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.one(self.basis, other)
        o = other.to(self.basis)
        d = dict(self.coeffs)
        for k, v in o.coeffs.items():
            _add_into(d, k, v)
        return SymFunc(self.basis, d)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc(self.basis, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, SymFunc) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SymFunc":
        if is_zero(c):
            return SymFunc(self.basis, {})
        return SymFunc(self.basis, {k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            return product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            if is_zero(other):
                return not self.coeffs
            other = SymFunc.one("s", other)
        if self.basis == other.basis:
            a, b = self, other
        else:
            a, b = self.to("s"), other.to("s")
        keys = set(a.coeffs) | set(b.coeffs)
        return all(is_zero(a.coeffs.get(k, 0) - b.coeffs.get(k, 0)) for k in keys)

    def __hash__(self):
        return hash(tuple(sorted(self.to("s").coeffs)))

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(sorted(self.coeffs.items(), key=lambda kv: _order_key(kv[0])))

    def __len__(self):
        return len(self.coeffs)

    def coefficient(self, la):
        return self.coeffs.get(tuple(la), 0)

    def degrees(self) -> set:
        return {sum(k) for k in self.coeffs}

    def homogeneous_part(self, d: int) -> "SymFunc":
        return SymFunc(self.basis, {k: v for k, v in self.coeffs.items() if sum(k) == d})

    def map_coeffs(self, fn) -> "SymFunc":
        return SymFunc(self.basis, {k: fn(v) for k, v in self.coeffs.items()})

    def to(self, target: str) -> "SymFunc":
        return to_basis(self, target)

    def omega(self) -> "SymFunc":
        return omega(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"SymFunc({self.basis!r}, {render(self)!r})"


def _order_key(la):
    return (sum(la), tuple(-p for p in la))


def s(*la) -> SymFunc:
    if len(la) == 1 and isinstance(la[0], (tuple, list)):
        la = la[0]
    return SymFunc.term("s", la)


def to_basis(f: SymFunc, target: str) -> SymFunc:
    if f.basis == target:
        return f
    if target not in BASES:
        raise ValueError(f"unknown basis {target!r}")
    # source -> s
    if f.basis == "s":
        sf = f.coeffs
    else:
        sf = {}
        for mu, c in f.coeffs.items():
            for la, k in _to_s(f.basis, sum(mu))[mu].items():
                _add_into(sf, la, c * k)
    if target == "s":
        return SymFunc("s", sf)
    out = {}
    for la, c in sf.items():
        if is_zero(c):
            continue
        for mu, k in _from_s(target, sum(la))[la].items():
            _add_into(out, mu, c * k)
    return SymFunc(target, out)


def omega(f: SymFunc) -> SymFunc:
    b = f.basis
    if b == "s":
        return SymFunc("s", {conjugate(la): c for la, c in f.coeffs.items()})
    if b in ("e", "h"):
        return SymFunc("h" if b == "e" else "e", dict(f.coeffs))
    if b in ("m", "f"):
        return SymFunc("f" if b == "m" else "m", dict(f.coeffs))
    return SymFunc("p", {la: (c if (sum(la) - len(la)) % 2 == 0 else -c)
                         for la, c in f.coeffs.items()})


def product(f: SymFunc, g: SymFunc) -> SymFunc:
    basis = f.basis
    if basis in ("e", "h", "p") and g.basis == basis:
        out = {}
        for a, c in f.coeffs.items():
            for b, d in g.coeffs.items():
                _add_into(out, tuple(sorted(a + b, reverse=True)), c * d)
        return SymFunc(basis, out)
    fp, gp = f.to("p"), g.to("p")
    return product(fp, gp).to(basis)


def hall_scalar(f: SymFunc, g: SymFunc):
    """Hall inner product: <s_la, s_mu> = delta."""
    a, b = f.to("s"), g.to("s")
    total = 0
    for la, c in a.coeffs.items():
        d = b.coeffs.get(la)
        if d is not None:
            total = total + c * d
    return total


def _p_skew(nu: tuple, la: tuple):
    """p_nu^perp p_la = coefficient * p_{la - nu}, or None."""
    from collections import Counter
    cl, cn = Counter(la), Counter(nu)
    coef = 1
    for k, m in cn.items():
        if cl[k] < m:
            return None
        for j in range(m):
            coef *= k * (cl[k] - j)
    rest = cl - cn
    return coef, tuple(sorted(rest.elements(), reverse=True))


def skew(g: SymFunc, f: SymFunc) -> SymFunc:
    """g^perp f, the adjoint of multiplication by g for the Hall product."""
    if g.basis in ("e", "h") and len(g.coeffs) == 1:
        (mu, c), = g.coeffs.items()
        r = f.to("s")
        for k in mu:
            r = _pieri_skew(g.basis, k, r)
        return r.scale(c).to(f.basis) if f.basis != "s" else r.scale(c)
    gp, fp = g.to("p"), f.to("p")
    out = {}
    for nu, c in gp.coeffs.items():
        for la, d in fp.coeffs.items():
            r = _p_skew(nu, la)
            if r is not None:
                _add_into(out, r[1], c * d * r[0])
    return SymFunc("p", out).to(f.basis)


def _pieri_skew(kind: str, k: int, f: SymFunc) -> SymFunc:
    out = {}
    for la, c in f.coeffs.items():
        it = vertical_strips_removed(la, k) if kind == "e" else _horizontal_strips_removed(la, k)
        for mu in it:
            _add_into(out, tuple(mu), c)
    return SymFunc("s", out)


def e_perp(k: int, f: SymFunc) -> SymFunc:
    if k == 0:
        return f
    return skew(SymFunc.term("e", (k,)), f)


def h_perp(k: int, f: SymFunc) -> SymFunc:
    if k == 0:
        return f
    return skew(SymFunc.term("h", (k,)), f)


def mul_e(k: int, f: SymFunc) -> SymFunc:
    """e_k * f in the Schur basis via the Pieri rule."""
    out = {}
    for la, c in f.to("s").coeffs.items():
        for mu in vertical_strips_added(la, k):
            _add_into(out, mu, c)
    return SymFunc("s", out)


def mul_h(k: int, f: SymFunc) -> SymFunc:
    out = {}
    for la, c in f.to("s").coeffs.items():
        for mu in horizontal_strips_added(la, k):
            _add_into(out, mu, c)
    return SymFunc("s", out)


def is_schur_positive(f: SymFunc) -> bool:
    """True if every Schur coefficient is a polynomial with nonnegative coefficients."""
    for c in f.to("s").coeffs.values():
        if not _nonneg(c):
            return False
    return True


def _nonneg(c) -> bool:
    if isinstance(c, RatFunc):
        if not c.is_polynomial():
            return False
        c = c.as_poly()
    if isinstance(c, MPoly):
        return all(v > 0 for v in c.terms().values())
    return c >= 0


def length(f: SymFunc) -> int:
    """Largest number of parts among Schur terms (-1 for zero)."""
    ks = f.to("s").coeffs
    return max((len(la) for la in ks), default=-1)


def length_part(f: SymFunc, d: int) -> SymFunc:
    g = f.to("s")
    return SymFunc("s", {la: c for la, c in g.coeffs.items() if len(la) == d})


# alphabets and plethysm ----------------------------------------------------------------

def _power_map(x, k: int):
    """Replace every variable v by v^k in a scalar coefficient."""
    if k == 1:
        return x
    if isinstance(x, MPoly):
        if x.is_constant():
            return x
        return x.subs({n: MPoly.var(n) ** k for n in x.names})
    if isinstance(x, RatFunc):
        return RatFunc(_power_map(x.num, k), _power_map(x.den, k))
    return x


class Alphabet:
    """The formal alphabet ``const + mult * Z``.

    ``const`` is a signed sum of monomials (MPoly or RatFunc whose
    denominator is a product of factors 1 - monomial); ``mult`` scales the
    symmetric-function variables Z.  Examples: 1 + Q is Alphabet(1, 1),
    Q - 1 is Alphabet(-1, 1), Z(q-1) is Alphabet(0, q-1), Z/(1-t) is
    Alphabet(0, RatFunc(1, 1-t)), and the finite alphabet q + t is
    Alphabet(q + t, 0).
    """

    def __init__(self, const=0, mult=1):
        for x in (const, mult):
            if not isinstance(x, (int, Fraction, MPoly, RatFunc)):
                raise IllFormedAlphabet(f"cannot substitute {x!r}")
            if isinstance(x, RatFunc) and not _geometric_den(x.den):
                raise IllFormedAlphabet(f"denominator {x.den} is not a product of 1 - monomial")
        self.const = const
        self.mult = mult

    @staticmethod
    def of_variables(*names: str) -> "Alphabet":
        acc = 0
        for n in names:
            acc = acc + MPoly.var(n)
        return Alphabet(acc, 0)

    def pk(self, k: int):
        """(p_k[const], p_k[mult]) so that p_k[A] = c + m * p_k(Z)."""
        return _power_map(self.const, k), _power_map(self.mult, k)


def _geometric_den(den: MPoly) -> bool:
    """True if den is a product of monomials and binomials of the form c(1 - monomial)."""
    if den.is_constant():
        return True
    _, factors = den.p.factor()
    for fac, _mult in factors:
        terms = list(fac.to_dict().items())
        if len(terms) == 1:
            continue
        if len(terms) != 2:
            return False
        (e1, c1), (e2, c2) = terms
        if c1 != -c2 or not (sum(e1) == 0 or sum(e2) == 0):
            return False
    return True


def plethysm(f: SymFunc, A: Alphabet):
    """f[A]; returns a SymFunc in p-basis re-expressed in f's basis, or a scalar when A has no Z part."""
    fp = f.to("p")
    out = {}
    scalar_only = is_zero(A.mult)
    for la, c in fp.coeffs.items():
        # product over parts of (c_k + m_k p_k)
        terms = {(): c}
        for k in la:
            ck, mk = A.pk(k)
            new = {}
            for mu, v in terms.items():
                if not is_zero(ck):
                    _add_into(new, mu, v * ck)
                if not is_zero(mk):
                    _add_into(new, tuple(sorted(mu + (k,), reverse=True)), v * mk)
            terms = new
        for mu, v in terms.items():
            _add_into(out, mu, v)
    res = SymFunc("p", out)
    if scalar_only:
        return res.coeffs.get((), 0)
    return res.to(f.basis if f.basis != "p" else "p")


def evaluate(f: SymFunc, names) -> MPoly:
    """f(x_1, ..., x_k) for the named variables."""
    r = plethysm(f, Alphabet.of_variables(*names))
    return MPoly.coerce(r) if not isinstance(r, RatFunc) else r


@lru_cache(maxsize=None)
def _schur_weights(la: tuple, k: int) -> dict:
    """{exponent composition of length k: K_{la, content}}."""
    out = {}
    d = sum(la)
    if len(la) > k:
        return out

    def comps(rem, parts):
        if parts == 1:
            yield (rem,)
            return
        for first in range(rem, -1, -1):
            for rest in comps(rem - first, parts - 1):
                yield (first,) + rest

    for e in comps(d, k):
        kk = kostka(la, tuple(sorted((x for x in e if x), reverse=True)))
        if kk:
            out[e] = kk
    return out


def schur_poly(la, names) -> MPoly:
    names = tuple(names)
    return MPoly.from_terms(_schur_weights(tuple(la), len(names)), names)


def glk_schur_expand(p, names) -> dict:
    """Coefficients c_la with p = sum c_la s_la(names), by leading monomial elimination."""
    names = tuple(names)
    k = len(names)
    if isinstance(p, MPoly):
        pl = p.lift(tuple(sorted(set(p.names) | set(names), key=_vk())))
        idx = [pl.names.index(n) for n in names]
        others = [i for i in range(len(pl.names)) if i not in idx]
        if others and any(any(e[i] for i in others) for e in pl.terms()):
            raise NotSymmetric("polynomial involves variables outside the alphabet")
        D = {tuple(e[i] for i in idx): c for e, c in pl.terms().items()}
    elif isinstance(p, dict):
        D = {tuple(e): c for e, c in p.items() if c}
    else:
        D = {(0,) * k: p} if p else {}
    for e in list(D):
        for j in range(k - 1):
            sw = list(e)
            sw[j], sw[j + 1] = sw[j + 1], sw[j]
            if D.get(tuple(sw), 0) != D[e]:
                raise NotSymmetric(f"not symmetric in {names}")
    out = {}
    while D:
        lead = max(D)
        if any(lead[i] < lead[i + 1] for i in range(k - 1)):
            raise NotSymmetric(f"not symmetric in {names}")
        c = D[lead]
        la = tuple(x for x in lead if x)
        out[la] = _as_int(c)
        for e, w in _schur_weights(la, k).items():
            v = D.get(e, 0) - c * w
            if v:
                D[e] = v
            else:
                D.pop(e, None)
    return out


def _vk():
    from .rings import var_key
    return var_key


# tensors -------------------------------------------------------------------------------

class TensorSF:
    """sum c_{la,mu} s_la (x) b_mu, with outer side in Schur and inner basis b."""

    __slots__ = ("coeffs", "inner")

    def __init__(self, coeffs: dict | None = None, inner: str = "s"):
        self.inner = inner
        self.coeffs = _clean({(tuple(a), tuple(b)): v for (a, b), v in (coeffs or {}).items()})

    @staticmethod
    def from_coefficients(by_inner: dict, inner: str = "s") -> "TensorSF":
        """Build from {mu: SymFunc of the outer side}."""
        d = {}
        for mu, f in by_inner.items():
            for la, c in f.to("s").coeffs.items():
                _add_into(d, (la, tuple(mu)), c)
        return TensorSF(d, inner)

    def by_inner(self) -> dict:
        out = {}
        for (la, mu), c in self.coeffs.items():
            out.setdefault(mu, {})[la] = c
        return {mu: SymFunc("s", d) for mu, d in out.items()}

    def inner_partitions(self) -> list:
        return sorted({mu for _, mu in self.coeffs}, key=_order_key)

    def __add__(self, other):
        if other == 0:
            return self
        self._check(other)
        d = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _add_into(d, k, v)
        return TensorSF(d, self.inner)

    __radd__ = __add__

    def __neg__(self):
        return TensorSF({k: -v for k, v in self.coeffs.items()}, self.inner)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return TensorSF({k: v * c for k, v in self.coeffs.items()}, self.inner)

    def _check(self, other):
        if not isinstance(other, TensorSF) or other.inner != self.inner:
            raise TypeError("incompatible tensors")

    def __eq__(self, other):
        if not isinstance(other, TensorSF):
            return NotImplemented if other != 0 else not self.coeffs
        if other.inner != self.inner:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(is_zero(self.coeffs.get(k, 0) - other.coeffs.get(k, 0)) for k in keys)

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs)))

    def __bool__(self):
        return bool(self.coeffs)

    def is_nonnegative(self) -> bool:
        return all(_nonneg(c) for c in self.coeffs.values())

    def negative_entries(self) -> dict:
        return {k: v for k, v in self.coeffs.items() if not _nonneg(v)}

    def max_outer_length(self) -> int:
        return max((len(la) for la, _ in self.coeffs), default=-1)

    def apply_inner(self, op) -> "TensorSF":
        """(Id (x) op) where op maps SymFunc(s) -> SymFunc(s)."""
        out = {}
        for (la, mu), c in self.coeffs.items():
            img = op(SymFunc.term(self.inner, mu)).to(self.inner)
            for nu, d in img.coeffs.items():
                _add_into(out, (la, nu), c * d)
        return TensorSF(out, self.inner)

    def apply_outer(self, op) -> "TensorSF":
        out = {}
        for (la, mu), c in self.coeffs.items():
            img = op(SymFunc.term("s", la)).to("s")
            for nu, d in img.coeffs.items():
                _add_into(out, (nu, mu), c * d)
        return TensorSF(out, self.inner)

    def to_inner_basis(self, basis: str) -> "TensorSF":
        out = {}
        for (la, mu), c in self.coeffs.items():
            img = SymFunc.term(self.inner, mu).to(basis)
            for nu, d in img.coeffs.items():
                _add_into(out, (la, nu), c * d)
        return TensorSF(out, basis)

    def specialize(self, names) -> SymFunc:
        """Evaluate the outer side at the finite alphabet of named variables."""
        out = {}
        for (la, mu), c in self.coeffs.items():
            v = schur_poly(la, names)
            if not v.is_zero():
                _add_into(out, mu, v * c)
        return SymFunc(self.inner, out)

    def __str__(self):
        return render_tensor(self)

    def __repr__(self):
        return f"TensorSF({render_tensor(self)!r})"


def length_restrict(F: TensorSF, k: int) -> TensorSF:
    return TensorSF({(la, mu): c for (la, mu), c in F.coeffs.items() if len(la) <= k}, F.inner)


def length_component(F: TensorSF, d: int) -> TensorSF:
    return TensorSF({(la, mu): c for (la, mu), c in F.coeffs.items() if len(la) == d}, F.inner)


def tensor_coeff(F: TensorSF, mu) -> SymFunc:
    """<F, s_mu>: the outer-side coefficient of b_mu."""
    mu = tuple(mu)
    return SymFunc("s", {la: c for (la, nu), c in F.coeffs.items() if nu == mu})


def tensor_from_qt(f: SymFunc, names=("q", "t")) -> TensorSF:
    """Expand each coefficient of f (symmetric in ``names``) into Schur functions."""
    out = {}
    for mu, c in f.to("s").coeffs.items():
        if isinstance(c, RatFunc):
            c = c.as_poly()
        for la, m in glk_schur_expand(c, names).items():
            _add_into(out, (la, mu), m)
    return TensorSF({k: _as_int(v) for k, v in out.items()}, "s")


def _as_int(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v.numerator)
    return v


# rendering and parsing --------------------------------------------------------------------

def _part_str(la, latex=False) -> str:
    if not la:
        return ""
    if all(p < 10 for p in la):
        return "".join(map(str, la))
    return "(" + ",".join(map(str, la)) + ")"


def _basis_str(b, la, latex=False):
    if not la:
        return "1"
    return f"{b}_{{{_part_str(la)}}}"


def render(f: SymFunc, latex: bool = False) -> str:
    if not f.coeffs:
        return "0"
    parts = []
    for la, c in f:
        parts.append(_term_str(c, _basis_str(f.basis, la), latex))
    return _join(parts)


def _term_str(c, body, latex=False):
    if isinstance(c, (int, Fraction)) or (isinstance(c, MPoly) and c.is_constant()) or (
            isinstance(c, RatFunc) and c.num.is_constant() and c.den.is_constant()):
        v = c if isinstance(c, (int, Fraction)) else (
            c.constant_value() if isinstance(c, MPoly) else c.num.constant_value() / c.den.constant_value())
        v = Fraction(v)
        if body == "1":
            return str(v)
        if v == 1:
            return body
        if v == -1:
            return "-" + body
        return f"{v}{'' if latex else '*'}{body}"
    cs = coeff_to_str(c)
    if body == "1":
        return f"({cs})"
    return f"({cs}){'' if latex else '*'}{body}"


def _join(parts):
    s = parts[0]
    for p in parts[1:]:
        s += " - " + p[1:] if p.startswith("-") else " + " + p
    return s


def render_tensor(F: TensorSF, latex: bool = False) -> str:
    if not F.coeffs:
        return "0"
    groups = F.by_inner()
    chunks = []
    otimes = r" \otimes " if latex else " ⊗ "
    for mu in sorted(groups, key=_order_key):
        g = groups[mu]
        outer = render(g, latex)
        if len(g.coeffs) > 1:
            outer = f"({outer})"
        chunks.append(f"{outer}{otimes}{_basis_str(F.inner, mu)}")
    return " + ".join(chunks)


def symfunc_to_json(f: SymFunc) -> dict:
    items = []
    for la, c in f:
        if isinstance(c, RatFunc):
            coeff = {"num": coeff_to_str(c.num), "den": coeff_to_str(c.den)}
        else:
            coeff = coeff_to_str(c)
        items.append({"part": list(la), "coeff": coeff})
    return {"basis": f.basis, "coeffs": items}


def symfunc_from_json(d: dict) -> SymFunc:
    out = {}
    for item in d["coeffs"]:
        c = item["coeff"]
        if isinstance(c, dict):
            v = RatFunc(parse_ratfunc(c["num"]).num, parse_ratfunc(c["den"]).num)
        else:
            v = parse_ratfunc(c)
            v = v.num if v.is_polynomial() and v.den == 1 else v
            if isinstance(v, MPoly) and v.is_constant():
                v = _as_int(v.constant_value())
        out[tuple(item["part"])] = v
    return SymFunc(d["basis"], out)


def tensor_to_json(F: TensorSF) -> list:
    out = []
    for (la, mu), c in sorted(F.coeffs.items(), key=lambda kv: (_order_key(kv[0][1]), _order_key(kv[0][0]))):
        out.append({"outer": list(la), "inner": list(mu), "mult": c if isinstance(c, int) else coeff_to_str(c)})
    return out


def tensor_from_json(items, inner: str = "s") -> TensorSF:
    return TensorSF({(tuple(i["outer"]), tuple(i["inner"])): int(i["mult"]) for i in items}, inner)


_IDX = re.compile(r"\{([^}]*)\}")


def parse_index(body: str) -> tuple:
    """Partition index in table notation: 211, (10,1), (10), 10. ."""
    body = body.strip()
    if body.startswith("("):
        return tuple(int(x) for x in body.strip("()").split(",") if x.strip())
    if body.endswith("."):
        return (int(body[:-1]),)
    return tuple(int(ch) for ch in body)


def parse_schur_sum(text: str, basis: str = "s") -> SymFunc:
    """Parse sums like ``1 + 2s_{21} + s_{(10,1)}`` with integer coefficients."""
    text = text.replace(" ", "")
    text = text.strip("+")
    out = {}
    if not text:
        return SymFunc(basis, {})
    tok = re.compile(r"([+-]?)(\d*)(?:\*?([a-z])_\{([^}]*)\}|)")
    pos = 0
    while pos < len(text):
        m = tok.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        sign, num, b, idx = m.groups()
        if b is None and not num:
            raise ValueError(f"cannot parse {text[pos:]!r}")
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        la = parse_index(idx) if b is not None else ()
        if b is not None and b != basis:
            raise ValueError(f"unexpected basis {b!r}")
        _add_into(out, la, c)
        pos = m.end()
    return SymFunc(basis, out)


def parse_tensor(text: str, inner: str = "s") -> TensorSF:
    """Parse ``A ⊗ s_{mu} + (B + C) ⊗ s_{nu}`` (also accepts \\otimes)."""
    text = text.replace(r"\otimes", "⊗").replace("\n", " ")
    by_inner = {}
    pos = 0
    t = text.strip()
    pat = re.compile(r"\s*\+?\s*(\((?:[^()]|\([^()]*\))*\)|[^⊗+()]+?)\s*⊗\s*" + inner + r"_\{([^}]*)\}")
    while pos < len(t):
        m = pat.match(t, pos)
        if not m:
            if t[pos:].strip(" +,;") == "":
                break
            raise ValueError(f"cannot parse tensor near {t[pos:pos+40]!r}")
        outer, idx = m.groups()
        outer = outer.strip()
        if outer.startswith("(") and outer.endswith(")"):
            outer = outer[1:-1]
        mu = parse_index(idx)
        f = parse_schur_sum(outer)
        by_inner[mu] = by_inner.get(mu, SymFunc("s")) + f
        pos = m.end()
    return TensorSF.from_coefficients(by_inner, inner)
