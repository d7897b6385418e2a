"""Dyck paths inside the staircase, vertical-strip LLT polynomials, Tamari order.

A Dyck path of size n is a partition gamma contained in the staircase
delta = (n-1, ..., 1, 0), stored padded with zeros to length n.  Row i
(counted from 1 at the bottom) has area a_i = delta_i - gamma_i.

The skew shape (gamma + 1^n)/gamma has exactly one cell per row, at column
gamma_i.  Two consecutive cells are stacked (and must strictly increase
upward) when gamma_i = gamma_{i+1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .macdonald import QT, qt_poly
from .partitions import contained, partition_list
from .rings import MPoly
from .symfunc import SymFunc, _add_into


class OutOfRange(ValueError):
    pass


class NegativeExponent(ArithmeticError):
    pass


class NotComparable(ValueError):
    pass


def staircase(n: int) -> tuple:
    return tuple(range(n - 1, -1, -1))


@dataclass(frozen=True)
class DyckPath:
    gamma: tuple

    def __post_init__(self):
        g = tuple(int(v) for v in self.gamma)
        n = len(g)
        if any(g[i] < g[i + 1] for i in range(n - 1)):
            raise ValueError(f"{g} is not weakly decreasing")
        if any(v < 0 or v > n - 1 - i for i, v in enumerate(g)):
            raise ValueError(f"{g} is not inside the staircase of size {n}")
        object.__setattr__(self, "gamma", g)

    @property
    def n(self) -> int:
        return len(self.gamma)

    def row_areas(self) -> tuple:
        n = self.n
        return tuple(n - 1 - i - v for i, v in enumerate(self.gamma))

    def to_json(self) -> list:
        return list(self.gamma)

    @staticmethod
    def from_json(v) -> "DyckPath":
        return DyckPath(tuple(v))

    def word(self) -> str:
        """Dyck word, 'S' for an up step and 'E' for a down step."""
        g = self.gamma + (0,)
        n = self.n
        out = []
        for i in range(n - 1, -1, -1):
            out.append("E" * (g[i] - g[i + 1]))
            out.append("S")
        out.append("E" * (n - g[0]) if n else "")
        return "".join(out)

    @staticmethod
    def from_word(w: str) -> "DyckPath":
        n = w.count("S")
        # invert word(): the i-th 'S' from the left belongs to row n - i
        g = [0] * n
        closes = 0
        row = n - 1
        for ch in w:
            if ch == "E":
                closes += 1
            else:
                g[row] = closes
                row -= 1
        return DyckPath(tuple(g))

    def __str__(self):
        return "".join(str(v) for v in self.gamma) if all(v < 10 for v in self.gamma) else str(list(self.gamma))


def area(g) -> int:
    g = g if isinstance(g, DyckPath) else DyckPath(tuple(g))
    return sum(g.row_areas())


@lru_cache(maxsize=None)
def _dyck_gammas(n: int) -> tuple:
    out = []

    def rec(i, cap, acc):
        if i == n:
            out.append(tuple(acc))
            return
        for v in range(min(cap, n - 1 - i), -1, -1):
            rec(i + 1, v, acc + [v])

    rec(0, n - 1, [])
    return tuple(out)


def dyck_paths(n: int) -> list:
    if n < 1:
        raise ValueError("n >= 1 required")
    return [DyckPath(g) for g in _dyck_gammas(n)]


def big_gamma(n: int, a: int) -> DyckPath:
    """The staircase minus a ones placed just before the last entry."""
    if not 0 <= a <= n - 1:
        raise OutOfRange(f"a={a} outside 0..{n - 1}")
    d = list(staircase(n))
    for i in range(n - 1 - a, n - 1):
        d[i] -= 1
    return DyckPath(tuple(d))


# LLT -------------------------------------------------------------------------------------

def dinv(g: DyckPath, tau) -> int:
    a = g.row_areas()
    total = 0
    for r, s_ in combinations(range(g.n), 2):
        if a[s_] == a[r] and tau[r] < tau[s_]:
            total += 1
        elif a[s_] == a[r] + 1 and tau[s_] < tau[r]:
            total += 1
    return total


def _fillings(g: DyckPath, content: tuple):
    """Column-strict fillings of the strip with the given content."""
    n = g.n
    counts = list(content)
    cur = [0] * n
    gm = g.gamma

    def rec(i):
        if i == n:
            yield tuple(cur)
            return
        stacked = i > 0 and gm[i] == gm[i - 1]
        for v in range(len(counts)):
            if counts[v] and (not stacked or v + 1 > cur[i - 1]):
                counts[v] -= 1
                cur[i] = v + 1
                yield from rec(i + 1)
                counts[v] += 1

    yield from rec(0)


@lru_cache(maxsize=None)
def _llt_cached(gamma: tuple, var: str) -> SymFunc:
    g = DyckPath(gamma)
    n = g.n
    mon = {}
    for nu in partition_list(n):
        d = {}
        for tau in _fillings(g, nu):
            k = dinv(g, tau)
            d[k] = d.get(k, 0) + 1
        if d:
            mon[nu] = MPoly.from_terms({(k,): c for k, c in d.items()}, (var,))
    return SymFunc("m", mon).to("s")


def llt(g, var: str = "q") -> SymFunc:
    """Vertical-strip LLT polynomial of the path, weighted by var^dinv."""
    g = g if isinstance(g, DyckPath) else DyckPath(tuple(g))
    return _llt_cached(g.gamma, var)


def _lift_qt(f: SymFunc) -> SymFunc:
    return f.map_coeffs(lambda c: MPoly.coerce(c, QT).lift(QT))


def shuffle_rhs(n: int, a: int) -> SymFunc:
    """sum over gamma inside Gamma_a of t^(area(gamma) - a) LLT_gamma(q)."""
    top = big_gamma(n, a)
    out = {}
    for g in dyck_paths(n):
        if not contained(tuple(v for v in g.gamma if v), tuple(v for v in top.gamma if v)):
            continue
        e = area(g) - a
        if e < 0:
            raise NegativeExponent(f"area({g}) - {a} = {e}")
        w = qt_poly({(0, e): 1})
        for la, c in _lift_qt(llt(g, "q")).coeffs.items():
            _add_into(out, la, c * w)
    return SymFunc("s", out)


# Tamari ----------------------------------------------------------------------------------

def _primitive_prefix(w: str, start: int) -> int:
    """End index (exclusive) of the primitive Dyck factor starting at start, or -1."""
    h = 0
    for i in range(start, len(w)):
        h += 1 if w[i] == "S" else -1
        if h < 0:
            return -1
        if h == 0:
            return i + 1
    return -1


def _covers_word(w: str) -> list:
    out = []
    for i, ch in enumerate(w):
        if ch == "E" and i + 1 < len(w) and w[i + 1] == "S":
            j = _primitive_prefix(w, i + 1)
            if j > 0:
                out.append(w[:i] + w[i + 1:j] + "E" + w[j:])
    return out


@dataclass
class TamariRelation:
    n: int
    elements: list
    covers: dict  # gamma -> list of gammas covering it

    def up(self, g) -> list:
        return self.covers[tuple(g)]

    def leq(self, a, b) -> bool:
        return tuple(b) in _above(self, tuple(a))


def _above(rel: TamariRelation, a: tuple) -> set:
    seen = {a}
    stack = [a]
    while stack:
        x = stack.pop()
        for y in rel.covers[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


@lru_cache(maxsize=None)
def tamari(n: int) -> TamariRelation:
    els = [g.gamma for g in dyck_paths(n)]
    covers = {}
    for g in els:
        w = DyckPath(g).word()
        covers[g] = [DyckPath.from_word(v).gamma for v in _covers_word(w)]
    return TamariRelation(n, els, covers)


def chain_d(alpha, beta) -> int:
    """Length of the longest strict chain from alpha up to beta."""
    a = tuple(alpha.gamma if isinstance(alpha, DyckPath) else alpha)
    b = tuple(beta.gamma if isinstance(beta, DyckPath) else beta)
    if len(a) != len(b):
        raise NotComparable("paths of different sizes")
    return _longest(len(a), a, b)


@lru_cache(maxsize=None)
def _longest(n, a, b) -> int:
    if a == b:
        return 0
    rel = tamari(n)
    best = -1
    for c in rel.covers[a]:
        if b in _above(rel, c):
            best = max(best, 1 + _longest(n, c, b))
    if best < 0:
        raise NotComparable(f"{a} is not below {b} in the Tamari order")
    return best


def trivariate_rhs(n: int, a: int) -> SymFunc:
    """sum over Gamma_a <= alpha <= beta of q^d(alpha, beta) LLT_beta(t)."""
    if a not in (0, 1, n - 1) or not 0 <= a <= n - 1:
        raise OutOfRange(f"a={a} not in {{0, 1, n-1}}")
    rel = tamari(n)
    base = big_gamma(n, a).gamma
    ups = _above(rel, base)
    out = {}
    for al in sorted(ups):
        for be in sorted(_above(rel, al)):
            w = qt_poly({(chain_d(al, be), 0): 1})
            for la, c in _lift_qt(llt(be, "t")).coeffs.items():
                _add_into(out, la, c * w)
    return SymFunc("s", out)
