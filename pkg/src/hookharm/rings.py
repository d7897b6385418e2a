"""Exact arithmetic: rationals, sparse multivariate polynomials, rational functions.

Polynomials are thin immutable wrappers around python-flint ``fmpq_mpoly``
values.  Every polynomial carries its own sorted tuple of variable names;
binary operations promote both sides to the union of the names.  The term
order is graded lexicographic with variables ordered by :func:`var_key`
(alphabetic prefix, then numeric suffixes), so ``q < q1 < q2 < t < x_1_2``.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

from flint import fmpq, fmpq_mpoly, fmpq_mpoly_ctx, fmpz

BigRational = Fraction


class DivisionByZero(ZeroDivisionError):
    pass


class ParseError(ValueError):
    pass


def var_key(name: str):
    parts = re.findall(r"[A-Za-z]+|\d+", name)
    return tuple((0, p) if p.isalpha() else (1, int(p)) for p in parts) + ((2, name),)


@lru_cache(maxsize=None)
def _ctx(names: tuple):
    return fmpq_mpoly_ctx.get(names, "deglex")


def _to_fmpq(c):
    if isinstance(c, Fraction):
        return fmpq(c.numerator, c.denominator)
    if isinstance(c, (int, fmpq, fmpz)):
        return fmpq(c)
    raise TypeError(f"unsupported scalar {c!r}")


def _from_fmpq(c) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _merge_names(a: tuple, b: tuple) -> tuple:
    if a == b:
        return a
    return tuple(sorted(set(a) | set(b), key=var_key))


class MPoly:
    """Polynomial with rational coefficients in named variables."""

    __slots__ = ("names", "p")

    def __init__(self, names: tuple, p):
        self.names = names
        self.p = p

    # construction -------------------------------------------------------
    @staticmethod
    def const(c, names: tuple = ()) -> "MPoly":
        ctx = _ctx(names)
        return MPoly(names, ctx.constant(_to_fmpq(c)))

    @staticmethod
    def var(name: str) -> "MPoly":
        names = (name,)
        return MPoly(names, _ctx(names).gen(0))

    @staticmethod
    def vars(*names: str):
        ns = tuple(sorted(set(names), key=var_key))
        ctx = _ctx(ns)
        gens = ctx.gens()
        return tuple(MPoly(ns, gens[ns.index(n)]) for n in names)

    @staticmethod
    def from_terms(terms: dict, names) -> "MPoly":
        """Build from {exponent tuple: coefficient}; exponents follow ``names``."""
        names = tuple(names)
        ns = tuple(sorted(names, key=var_key))
        if ns != names:
            perm = [names.index(n) for n in ns]
            terms = {tuple(e[i] for i in perm): c for e, c in terms.items()}
        d = {e: _to_fmpq(c) for e, c in terms.items() if c}
        return MPoly(ns, _ctx(ns).from_dict(d))

    @staticmethod
    def coerce(x, names: tuple = ()) -> "MPoly":
        if isinstance(x, MPoly):
            return x
        return MPoly.const(x, names)

    # promotion ----------------------------------------------------------
    def lift(self, names: tuple) -> "MPoly":
        if names == self.names:
            return self
        return MPoly(names, self.p.project_to_context(_ctx(names)))

    def _pair(self, other):
        if isinstance(other, MPoly):
            if other.names == self.names:
                return self.p, other.p, self.names
            ns = _merge_names(self.names, other.names)
            return self.lift(ns).p, other.lift(ns).p, ns
        return self.p, _to_fmpq(other), self.names

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            a, b, ns = self._pair(other)
        except TypeError:
            return NotImplemented
        return MPoly(ns, a + b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            a, b, ns = self._pair(other)
        except TypeError:
            return NotImplemented
        return MPoly(ns, a - b)

    def __rsub__(self, other):
        try:
            a, b, ns = self._pair(other)
        except TypeError:
            return NotImplemented
        return MPoly(ns, b - a)

    def __mul__(self, other):
        try:
            a, b, ns = self._pair(other)
        except TypeError:
            return NotImplemented
        return MPoly(ns, a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return MPoly(self.names, -self.p)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        return MPoly(self.names, self.p ** k)

    def __truediv__(self, other):
        """Division by a scalar, or exact division by a polynomial."""
        if isinstance(other, MPoly):
            return self.exact_div(other)
        c = _to_fmpq(other)
        if c == 0:
            raise DivisionByZero("division by zero")
        return MPoly(self.names, self.p / c)

    def exact_div(self, other: "MPoly") -> "MPoly":
        a, b, ns = self._pair(other)
        if b == 0:
            raise DivisionByZero("division by zero polynomial")
        q, r = divmod(a, b)
        if r != 0:
            raise ArithmeticError("polynomial division is not exact")
        return MPoly(ns, q)

    def divides(self, other: "MPoly") -> bool:
        """True when self | other."""
        a, b, _ = self._pair(other)
        return a != 0 and divmod(b, a)[1] == 0

    def gcd(self, other: "MPoly") -> "MPoly":
        a, b, ns = self._pair(other)
        return MPoly(ns, a.gcd(b))

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MPoly):
            a, b, _ = self._pair(other)
            return a == b
        try:
            return self.p == _to_fmpq(other)
        except TypeError:
            return NotImplemented

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        return hash(tuple(sorted(self.named_terms().items())))

    def __bool__(self):
        return not self.p.is_zero()

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return self.p.is_zero()

    def is_constant(self) -> bool:
        return self.p.is_constant()

    def constant_value(self) -> Fraction:
        if not self.p.is_constant():
            raise ValueError("not a constant")
        return _from_fmpq(self.p.coefficient(0)) if not self.p.is_zero() else Fraction(0)

    def terms(self) -> dict:
        """{exponent tuple (in self.names order): Fraction}."""
        return {e: _from_fmpq(c) for e, c in self.p.to_dict().items()}

    def named_terms(self) -> dict:
        """{((name, exp), ...): Fraction} with zero exponents dropped."""
        out = {}
        for e, c in self.p.to_dict().items():
            key = tuple((self.names[i], k) for i, k in enumerate(e) if k)
            out[key] = _from_fmpq(c)
        return out

    def used_names(self) -> tuple:
        used = set()
        for e in self.p.monoms():
            for i, k in enumerate(e):
                if k:
                    used.add(self.names[i])
        return tuple(n for n in self.names if n in used)

    def trim(self) -> "MPoly":
        return self.lift(self.used_names())

    def total_degree(self) -> int:
        return -1 if self.p.is_zero() else int(self.p.total_degree())

    def degree_in(self, name: str) -> int:
        if name not in self.names or self.p.is_zero():
            return 0 if not self.p.is_zero() else -1
        return int(self.p.degrees()[self.names.index(name)])

    def leading_coefficient(self) -> Fraction:
        return _from_fmpq(self.p.leading_coefficient())

    def coefficient_of(self, name: str, k: int) -> "MPoly":
        """Coefficient of name^k, as a polynomial in the other variables."""
        if name not in self.names:
            return self if k == 0 else MPoly.const(0, self.names)
        i = self.names.index(name)
        d = {}
        for e, c in self.p.to_dict().items():
            if e[i] == k:
                e2 = list(e)
                e2[i] = 0
                d[tuple(e2)] = c
        return MPoly(self.names, _ctx(self.names).from_dict(d))

    # calculus and substitution -----------------------------------------
    def derive(self, name: str) -> "MPoly":
        if name not in self.names:
            return MPoly.const(0, self.names)
        return MPoly(self.names, self.p.derivative(self.names.index(name)))

    def subs(self, values: dict) -> "MPoly":
        """Substitute scalars or polynomials for variables."""
        scal = {k: v for k, v in values.items() if not isinstance(v, MPoly) and k in self.names}
        polys = {k: v for k, v in values.items() if isinstance(v, MPoly) and k in self.names}
        r = self
        if scal:
            r = MPoly(r.names, r.p.subs({k: _to_fmpq(v) for k, v in scal.items()}))
        if polys:
            ns = r.names
            for v in polys.values():
                ns = _merge_names(ns, v.names)
            gens = {n: MPoly.var(n).lift(ns) for n in r.names}
            gens.update({k: v.lift(ns) for k, v in polys.items()})
            r = MPoly(ns, r.p.compose(*[gens[n].p for n in r.names], ctx=_ctx(ns)))
        return r

    def evaluate(self, values: dict) -> Fraction:
        r = self.subs(values).trim()
        return r.constant_value()

    def rename(self, mapping: dict) -> "MPoly":
        new = tuple(mapping.get(n, n) for n in self.names)
        ns = tuple(sorted(set(new), key=var_key))
        d = {}
        for e, c in self.p.to_dict().items():
            e2 = [0] * len(ns)
            for i, k in enumerate(e):
                e2[ns.index(new[i])] += k
            e2 = tuple(e2)
            d[e2] = d.get(e2, 0) + c
        return MPoly(ns, _ctx(ns).from_dict(d))

    # text ---------------------------------------------------------------
    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"MPoly({render_poly(self)!r})"


def _deglex_key(names, e):
    return (sum(e), tuple(e))


def render_poly(f: MPoly) -> str:
    """Canonical text: terms in decreasing graded-lex order, ``*`` and ``^``."""
    if f.p.is_zero():
        return "0"
    items = sorted(f.terms().items(), key=lambda it: _deglex_key(f.names, it[0]), reverse=True)
    out = []
    for e, c in items:
        mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(f.names, e) if k)
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        out.append((sign, body))
    s = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        s += f" {sign} {body}"
    return s


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def parse_poly(text: str) -> MPoly:
    """Parse sums of products of numbers, variables and integer powers.

    Parentheses are accepted, so the output of :func:`render_ratfunc` for a
    polynomial numerator also parses.
    """
    toks = []
    for num, name, other in _TOKEN.findall(text):
        if num:
            toks.append(("num", Fraction(num)))
        elif name:
            toks.append(("var", name))
        elif other.strip():
            toks.append(("op", other))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = peek()
        pos += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term() * sign
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while True:
            if peek() == ("op", "*"):
                take()
                acc = acc * power()
            elif peek() == ("op", "/"):
                take()
                d = power()
                if not d.is_constant():
                    raise ParseError("division by a non-constant inside a polynomial")
                acc = acc / d.constant_value()
            else:
                return acc

    def power():
        b = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num" or val.denominator != 1:
                raise ParseError("exponent must be a nonnegative integer")
            b = b ** int(val)
        return b

    def atom():
        kind, val = take()
        if kind == "num":
            return MPoly.const(val)
        if kind == "var":
            return MPoly.var(val)
        if (kind, val) == ("op", "("):
            e = expr()
            if take() != ("op", ")"):
                raise ParseError("unbalanced parenthesis")
            return e
        if (kind, val) == ("op", "-"):
            return -atom()
        raise ParseError(f"unexpected token {val!r} in {text!r}")

    if not toks:
        raise ParseError("empty polynomial")
    r = expr()
    if pos != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    return r.trim()


class RatFunc:
    """Reduced quotient num/den with den monic under the graded-lex order."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1, _reduced=False):
        num = MPoly.coerce(num)
        den = MPoly.coerce(den, num.names)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    @staticmethod
    def coerce(x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        return RatFunc(x, 1)

    def __add__(self, other):
        o = RatFunc.coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-RatFunc.coerce(other))

    def __rsub__(self, other):
        return RatFunc.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num * other, self.den) if other else RatFunc(0)
        o = RatFunc.coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RatFunc.coerce(other)
        if o.num.is_zero():
            raise DivisionByZero("division by zero")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, k: int):
        if k >= 0:
            return RatFunc(self.num ** k, self.den ** k, _reduced=True)
        return RatFunc(1) / (self ** (-k))

    def __eq__(self, other):
        if isinstance(other, (RatFunc, MPoly, int, Fraction)):
            o = RatFunc.coerce(other)
            return self.num * o.den == o.num * self.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def as_poly(self) -> MPoly:
        if not self.den.is_constant():
            raise ArithmeticError(f"not a polynomial: {self}")
        return self.num / self.den.constant_value()

    def subs(self, values: dict) -> "RatFunc":
        return RatFunc(self.num.subs(values), self.den.subs(values))

    def __str__(self):
        return render_ratfunc(self)

    def __repr__(self):
        return f"RatFunc({render_ratfunc(self)!r})"


def _reduce(num: MPoly, den: MPoly):
    if num.is_zero():
        return MPoly.const(0), MPoly.const(1)
    g = num.gcd(den)
    if not g.is_constant():
        num = num.exact_div(g)
        den = den.exact_div(g)
    lc = den.leading_coefficient()
    if lc != 1:
        num = num / lc
        den = den / lc
    return num, den


def ratfunc_normalize(num, den) -> RatFunc:
    return RatFunc(num, den)


def render_ratfunc(f: RatFunc) -> str:
    if f.den == 1:
        return render_poly(f.num)
    return f"({render_poly(f.num)})/({render_poly(f.den)})"


def parse_ratfunc(text: str) -> RatFunc:
    text = text.strip()
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
    if m and _balanced(m.group(1)) and _balanced(m.group(2)):
        return RatFunc(parse_poly(m.group(1)), parse_poly(m.group(2)))
    return RatFunc(parse_poly(text))


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def mpoly_op(a: MPoly, b: MPoly, kind: str) -> MPoly:
    if kind == "add":
        return a + b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown kind {kind!r}")


def mpoly_derive(a: MPoly, var: str) -> MPoly:
    return a.derive(var)


def coeff_to_str(c) -> str:
    if isinstance(c, RatFunc):
        return render_ratfunc(c)
    if isinstance(c, MPoly):
        return render_poly(c)
    return str(Fraction(c))


def is_zero(c) -> bool:
    if isinstance(c, (MPoly, RatFunc)):
        return c.is_zero()
    return c == 0
