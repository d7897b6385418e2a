"""Partitions, hooks, diagrams and semistandard tableaux (French convention).

Rows of a diagram are indexed from the bottom: the cell (k, l) sits in
column k and row l, and a partition mu has mu[l] cells in row l.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator


class SizeMismatch(ValueError):
    pass


class BadHook(ValueError):
    pass


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts if p != 0)
        if any(p < 0 for p in parts) or any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def n(self) -> int:
        return sum(self)

    def conjugate(self) -> "Partition":
        return Partition(conjugate(self))

    def __repr__(self):
        return f"Partition({list(self)})"


def partitions_of(n: int, max_part: int | None = None, max_len: int | None = None) -> list:
    """All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..."""
    if max_part is None:
        max_part = n
    return [Partition(p) for p in _parts(n, max_part, max_len)]


def _parts(n, max_part, max_len):
    if n == 0:
        yield ()
        return
    if max_len == 0:
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in _parts(n - first, first, None if max_len is None else max_len - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_cached(n: int) -> tuple:
    return tuple(tuple(p) for p in _parts(n, n, None))


def partition_list(n: int) -> tuple:
    """Cached tuple of plain-tuple partitions of n (reverse-lex)."""
    return _partitions_cached(n)


def conjugate(la) -> tuple:
    if not la:
        return ()
    return tuple(sum(1 for p in la if p > j) for j in range(la[0]))


def size(la) -> int:
    return sum(la)


def dominance_leq(la, mu) -> bool:
    if sum(la) != sum(mu):
        raise SizeMismatch(f"|{la}| != |{mu}|")
    a = b = 0
    for i in range(max(len(la), len(mu))):
        a += la[i] if i < len(la) else 0
        b += mu[i] if i < len(mu) else 0
        if a > b:
            return False
    return True


def n_stat(mu) -> int:
    """n(mu) = sum_i (i-1) mu_i."""
    return sum(i * p for i, p in enumerate(mu))


def multiplicities(mu) -> dict:
    m = {}
    for p in mu:
        m[p] = m.get(p, 0) + 1
    return m


def centralizer_size(mu) -> int:
    z = 1
    for i, m in multiplicities(mu).items():
        z *= i ** m * factorial(m)
    return z


def class_size(mu) -> int:
    return factorial(sum(mu)) // centralizer_size(mu)


def cells(mu) -> list:
    """Cells (k, l) of the Ferrers diagram, row l from the bottom."""
    return [(k, l) for l, p in enumerate(mu) for k in range(p)]


def arm(mu, cell) -> int:
    k, l = cell
    return mu[l] - k - 1


def leg(mu, cell) -> int:
    k, l = cell
    return conjugate(mu)[k] - l - 1


def cycle_permutation(mu) -> tuple:
    """A permutation of {0..n-1} (as an image tuple) with cycle type mu."""
    perm = []
    start = 0
    for p in mu:
        perm.extend(start + (j + 1) % p for j in range(p))
        start += p
    return tuple(perm)


def cycle_type(perm) -> tuple:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            c = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                c += 1
            out.append(c)
    return tuple(sorted(out, reverse=True))


# hooks --------------------------------------------------------------------

@dataclass(frozen=True)
class Hook:
    """The hook (a|b) = (a+1, 1^b) in Frobenius notation."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise BadHook(f"invalid hook ({self.a}|{self.b})")

    @property
    def n(self) -> int:
        return self.a + self.b + 1

    def as_partition(self) -> Partition:
        return Partition((self.a + 1,) + (1,) * self.b)

    def iota(self) -> int:
        return self.a

    def shift(self) -> "Hook | None":
        """(a|b) -> (a+1|b-1); None stands for the zero module (n|-1)."""
        if self.b == 0:
            return None
        return Hook(self.a + 1, self.b - 1)

    @staticmethod
    def from_partition(la) -> "Hook":
        la = tuple(la)
        if not la or any(p != 1 for p in la[1:]):
            raise BadHook(f"{la} is not a hook")
        return Hook(la[0] - 1, len(la) - 1)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b}

    @staticmethod
    def from_json(d: dict) -> "Hook":
        return Hook(int(d["a"]), int(d["b"]))

    def __str__(self):
        return f"({self.a}|{self.b})"


def hooks_of(n: int) -> list:
    """Hooks of size n from (n-1|0) down to (0|n-1)."""
    return [Hook(a, n - 1 - a) for a in range(n - 1, -1, -1)]


def is_hook(la) -> bool:
    return bool(la) and all(p == 1 for p in la[1:])


def iota(rho) -> int:
    return sum(p - i for i, p in enumerate(rho, start=1) if p > i)


# diagrams -----------------------------------------------------------------

class Diagram(frozenset):
    """A finite set of cells (k, l) in N x N."""

    def __new__(cls, cells_: Iterable = ()):
        cs = [tuple(int(v) for v in c) for c in cells_]
        if any(len(c) != 2 or c[0] < 0 or c[1] < 0 for c in cs):
            raise ValueError("cells must be pairs of nonnegative integers")
        if len(set(cs)) != len(cs):
            raise ValueError("repeated cell")
        return super().__new__(cls, cs)

    @staticmethod
    def ferrers(mu) -> "Diagram":
        return Diagram(cells(mu))

    @staticmethod
    def hook_det_diagram(a: int, b: int) -> "Diagram":
        """d(a,b) = {(i,0): 0 <= i <= a+b, i != a} + {(0,1)}."""
        return Diagram([(i, 0) for i in range(a + b + 1) if i != a] + [(0, 1)])

    def ordered(self) -> list:
        """Cells in sign-fixing order: higher rows first, then left to right."""
        return sorted(self, key=lambda c: (-c[1], c[0]))

    def is_ferrers(self) -> bool:
        return all((k - 1, l) in self or k == 0 for k, l in self) and all(
            (k, l - 1) in self or l == 0 for k, l in self)

    def to_partition(self) -> Partition:
        if not self.is_ferrers():
            raise ValueError("not a Ferrers diagram")
        rows = {}
        for k, l in self:
            rows[l] = rows.get(l, 0) + 1
        return Partition([rows[l] for l in sorted(rows)])


# tableaux -----------------------------------------------------------------

@dataclass(frozen=True)
class SkewTableau:
    outer: tuple
    inner: tuple
    entries: tuple  # ((cell, value), ...) in reading order bottom row first

    def as_dict(self) -> dict:
        return dict(self.entries)

    def content(self) -> dict:
        m = {}
        for _, v in self.entries:
            m[v] = m.get(v, 0) + 1
        return m


def skew_cells(outer, inner=()) -> list:
    inner = tuple(inner) + (0,) * (len(outer) - len(inner))
    return [(k, l) for l in range(len(outer)) for k in range(inner[l], outer[l])]


def ssyt_enumerate(outer, inner=(), max_entry: int = 1) -> list:
    """Semistandard fillings of outer/inner with entries 1..max_entry.

    Rows weakly increase to the right, columns strictly increase upward.
    ``outer`` and ``inner`` are row-length vectors indexed from the bottom;
    the skew shape need not come from partitions, but inner[l] <= outer[l].
    """
    inner = tuple(inner) + (0,) * (len(outer) - len(inner))
    if any(i > o for i, o in zip(inner, outer)):
        raise ValueError("inner shape not contained in outer shape")
    cs = skew_cells(outer, inner)
    cellset = set(cs)
    out = []
    vals: dict = {}

    def rec(idx):
        if idx == len(cs):
            out.append(SkewTableau(tuple(outer), inner, tuple((c, vals[c]) for c in cs)))
            return
        k, l = cs[idx]
        lo = 1
        if (k - 1, l) in cellset:
            lo = max(lo, vals[(k - 1, l)])
        if (k, l - 1) in cellset:
            lo = max(lo, vals[(k, l - 1)] + 1)
        for v in range(lo, max_entry + 1):
            vals[(k, l)] = v
            rec(idx + 1)
        vals.pop((k, l), None)

    rec(0)
    return out


@lru_cache(maxsize=None)
def _kostka(la: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not la else 0
    m = mu[-1]
    rest = mu[:-1]
    total = 0
    # remove a horizontal strip of size m from la
    for nu in _horizontal_strips_removed(la, m):
        total += _kostka(nu, rest)
    return total


def _horizontal_strips_removed(la: tuple, m: int) -> Iterator[tuple]:
    """Partitions nu with la/nu a horizontal strip of size m."""
    L = len(la)

    def rec(i, left, acc):
        if i == L:
            if left == 0:
                yield tuple(p for p in acc if p)
            return
        lo = la[i + 1] if i + 1 < L else 0
        for nu_i in range(la[i], lo - 1, -1):
            r = la[i] - nu_i
            if r > left:
                break
            yield from rec(i + 1, left - r, acc + [nu_i])

    yield from rec(0, m, [])


def kostka(la, mu) -> int:
    """Number of SSYT of shape la and content mu (mu may be a composition)."""
    if sum(la) != sum(mu):
        raise SizeMismatch(f"|{la}| != |{mu}|")
    return _kostka(tuple(la), tuple(p for p in mu if p))


def horizontal_strips_added(la, m: int) -> Iterator[tuple]:
    """Partitions nu containing la with nu/la a horizontal strip of size m."""
    la = tuple(la)
    L = len(la)

    def rec(i, left, acc):
        if i == L:
            if left > la[L - 1]:
                return
            if left > 0:
                acc = acc + [left]
            yield tuple(acc)
            return
        hi = la[i - 1] if i > 0 else la[0] + left
        for add in range(min(left, hi - la[i]) + 1):
            yield from rec(i + 1, left - add, acc + [la[i] + add])

    if L == 0:
        yield (m,) if m else ()
        return
    yield from rec(0, m, [])


def vertical_strips_added(la, m: int) -> Iterator[tuple]:
    for nu in horizontal_strips_added(conjugate(la), m):
        yield conjugate(nu)


def vertical_strips_removed(la, m: int) -> Iterator[tuple]:
    for nu in _horizontal_strips_removed(conjugate(tuple(la)), m):
        yield conjugate(nu)


def contained(la, mu) -> bool:
    return len(la) <= len(mu) and all(a <= b for a, b in zip(la, mu))


def partition_to_json(la) -> list:
    return [int(p) for p in la]


def partition_from_json(v) -> Partition:
    return Partition(v)
