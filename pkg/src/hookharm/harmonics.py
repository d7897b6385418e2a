"""Exact linear algebra for theta-augmented diagonal harmonic modules.

Elements are sparse vectors: a dict from a packed monomial key to an int
coefficient.  A key stores the theta index in its low 4 bits (0 when the
element carries no theta, i+1 for theta_i) followed by one 4-bit exponent
field per variable x_{r,i} of the variable matrix (row r, column i).

Bases of multihomogeneous slices are kept in fully reduced echelon form with
primitive integer rows: every row is pivoted on its largest key, the pivot
coefficient is positive and no other row has a nonzero entry at a pivot.
Coordinates of a vector in the span are then read off at pivot positions,
which makes character traces cheap.
"""
from __future__ import annotations

import itertools
import math
import random
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from . import cache
from .partitions import (Diagram, Hook, SizeMismatch, centralizer_size, conjugate, cycle_permutation,
                         partition_list)
from .rings import MPoly
from .symfunc import SymFunc, TensorSF, _add_into, character, glk_schur_expand

EB = 4  # bits per exponent field
EMASK = (1 << EB) - 1
ROW_NAMES = "xyzuvw"


class BadRow(ValueError):
    pass


class NotSnStable(ArithmeticError):
    pass


class NegativeMultiplicity(ArithmeticError):
    pass


class ContextMismatch(ValueError):
    pass


@dataclass(frozen=True)
class VarMatrix:
    """k rows of n variables; row 0 is the distinguished alphabet x."""

    k: int
    n: int

    def __post_init__(self):
        if self.k < 1 or self.n < 1:
            raise ValueError("VarMatrix needs k >= 1 and n >= 1")
        if self.k * self.n * EB > 4096:
            raise ValueError("variable matrix too large for the packed key format")

    def shift(self, r: int, i: int) -> int:
        return EB * (1 + r * self.n + i)

    def name(self, r: int, i: int) -> str:
        row = ROW_NAMES[r] if r < len(ROW_NAMES) else f"x{r}_"
        return f"{row}{i + 1}"

    def names(self) -> tuple:
        return tuple(self.name(r, i) for r in range(self.k) for i in range(self.n))

    def check_row(self, r: int):
        if not 0 <= r < self.k:
            raise BadRow(f"row {r} outside 0..{self.k - 1}")

    def unpack(self, key: int):
        th = key & EMASK
        ex = [[(key >> self.shift(r, i)) & EMASK for i in range(self.n)] for r in range(self.k)]
        return th, ex

    def pack(self, th: int, ex) -> int:
        key = th
        for r in range(self.k):
            for i in range(self.n):
                e = ex[r][i]
                if e > EMASK:
                    raise OverflowError("exponent exceeds the packed field width")
                key |= e << self.shift(r, i)
        return key

    def multidegree(self, key: int) -> tuple:
        _, ex = self.unpack(key)
        return tuple(sum(row) for row in ex)


# sparse vector helpers ---------------------------------------------------------------------

def _combine(a: dict, ca: int, b: dict, cb: int) -> dict:
    """ca*a - cb*b."""
    out = {k: ca * v for k, v in a.items()} if ca != 1 else dict(a)
    for k, v in b.items():
        w = out.get(k, 0) - cb * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def _primitive(v: dict) -> dict:
    if not v:
        return v
    g = 0
    for c in v.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    p = max(v)
    if v[p] < 0:
        g = -g
    if g == 1:
        return v
    return {k: c // g for k, c in v.items()}


def vec_add(a: dict, b: dict, c=1) -> dict:
    out = dict(a)
    for k, v in b.items():
        w = out.get(k, 0) + c * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def derive_vec(v: dict, vm: VarMatrix, r: int, i: int, times: int = 1) -> dict:
    sh = vm.shift(r, i)
    out = {}
    for key, c in v.items():
        e = (key >> sh) & EMASK
        if e >= times:
            f = 1
            for j in range(times):
                f *= e - j
            nk = key - (times << sh)
            out[nk] = out.get(nk, 0) + c * f
    return {k: c for k, c in out.items() if c}


def polarize_vec(v: dict, vm: VarMatrix, u: int, w: int, r: int) -> dict:
    """sum_i w_i d^r/du_i^r."""
    out = {}
    for i in range(vm.n):
        su = vm.shift(u, i)
        sw = vm.shift(w, i)
        for key, c in v.items():
            e = (key >> su) & EMASK
            if e >= r:
                if (key >> sw) & EMASK == EMASK:
                    raise OverflowError("exponent exceeds the packed field width")
                f = 1
                for j in range(r):
                    f *= e - j
                nk = key - (r << su) + (1 << sw)
                out[nk] = out.get(nk, 0) + c * f
    return {k: c for k, c in out.items() if c}


_perm_memo: dict = {}
_perm_lock = threading.Lock()


def _key_image(vm: VarMatrix, perm: tuple):
    memo = _perm_memo.get((vm, perm))
    if memo is None:
        with _perm_lock:
            memo = _perm_memo.setdefault((vm, perm), {})
    return memo


def permute_vec(v: dict, vm: VarMatrix, perm) -> dict:
    """x_{r,i} -> x_{r,perm[i]} and theta_i -> theta_{perm[i]}."""
    perm = tuple(perm)
    memo = _key_image(vm, perm)
    out = {}
    n = vm.n
    for key, c in v.items():
        nk = memo.get(key)
        if nk is None:
            th, ex = vm.unpack(key)
            nth = perm[th - 1] + 1 if th else 0
            nex = [[0] * n for _ in range(vm.k)]
            for r in range(vm.k):
                for i in range(n):
                    nex[r][perm[i]] = ex[r][i]
            nk = vm.pack(nth, nex)
            memo[key] = nk
        out[nk] = out.get(nk, 0) + c
    return {k: c for k, c in out.items() if c}


# ThetaPoly ----------------------------------------------------------------------------------

@dataclass
class ThetaPoly:
    """sum_i theta_i * comps[i]; the packed vector is the canonical store."""

    vm: VarMatrix
    vec: dict

    @staticmethod
    def from_comps(vm: VarMatrix, comps: dict) -> "ThetaPoly":
        names = vm.names()
        vec = {}
        for i, poly in comps.items():
            poly = poly.lift(tuple(sorted(set(names) | set(poly.names), key=_vkey)))
            for e, c in MPoly.from_terms(poly.terms(), poly.names).terms().items():
                ex = [[0] * vm.n for _ in range(vm.k)]
                for nm, k in zip(poly.names, e):
                    if k:
                        if nm not in names:
                            raise ValueError(f"variable {nm} is not in the variable matrix")
                        j = names.index(nm)
                        ex[j // vm.n][j % vm.n] = k
                if c.denominator != 1:
                    raise ValueError("ThetaPoly coefficients must be integers")
                vec[vm.pack(i + 1, ex)] = int(c)
        return ThetaPoly(vm, vec)

    def to_comps(self) -> dict:
        names = self.vm.names()
        buckets = {}
        for key, c in self.vec.items():
            th, ex = self.vm.unpack(key)
            flat = tuple(e for row in ex for e in row)
            buckets.setdefault(th - 1, {})[flat] = c
        return {i: MPoly.from_terms(d, names) for i, d in sorted(buckets.items())}

    def theta_linear(self) -> bool:
        return all(key & EMASK for key in self.vec)

    def is_zero(self) -> bool:
        return not self.vec

    def derive(self, r: int, i: int) -> "ThetaPoly":
        self.vm.check_row(r)
        return ThetaPoly(self.vm, derive_vec(self.vec, self.vm, r, i))

    def permute(self, perm) -> "ThetaPoly":
        return ThetaPoly(self.vm, permute_vec(self.vec, self.vm, perm))

    def __eq__(self, other):
        return isinstance(other, ThetaPoly) and self.vm == other.vm and self.vec == other.vec

    def __add__(self, other):
        return ThetaPoly(self.vm, vec_add(self.vec, other.vec))

    def __sub__(self, other):
        return ThetaPoly(self.vm, vec_add(self.vec, other.vec, -1))

    def scale(self, c: int) -> "ThetaPoly":
        return ThetaPoly(self.vm, {k: c * v for k, v in self.vec.items()} if c else {})

    def __str__(self):
        parts = []
        for i, p in self.to_comps().items():
            parts.append(f"theta{i + 1}*({p})" if i >= 0 else str(p))
        return " + ".join(parts) if parts else "0"


def _vkey(name):
    from .rings import var_key
    return var_key(name)


def polarize(f: ThetaPoly, u: int, v: int, r: int = 1) -> ThetaPoly:
    vm = f.vm
    vm.check_row(u)
    vm.check_row(v)
    if u == v:
        raise BadRow("polarization needs two distinct rows")
    if r < 1:
        raise ValueError("polarization order r >= 1")
    return ThetaPoly(vm, polarize_vec(f.vec, vm, u, v, r))


# determinants -------------------------------------------------------------------------------

def _perm_sign(p) -> int:
    s = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            s = -s
    return s


def _det_vec(n: int, column_entry) -> dict:
    """Leibniz expansion; column_entry(col, i) -> (theta, exponents list per row)."""
    out = {}
    for perm in itertools.permutations(range(n)):
        # entry in row perm[c] of column c
        sgn = _perm_sign(perm)
        key_parts = [column_entry(c, perm[c]) for c in range(n)]
        out_key = 0
        for kk in key_parts:
            out_key += kk
        out[out_key] = out.get(out_key, 0) + sgn
    return {k: c for k, c in out.items() if c}


def hook_det(n: int, a: int, b: int, vm: VarMatrix | None = None) -> ThetaPoly:
    """det[theta_i, 1, x_i, ..., x_i^{n-1}] with the x^a column removed."""
    if a < 0 or b < 0 or a + b + 1 != n:
        from .partitions import BadHook
        raise BadHook(f"({a}|{b}) is not a hook of size {n}")
    vm = vm or VarMatrix(1, n)
    if vm.n != n:
        raise ContextMismatch("variable matrix has the wrong number of columns")
    powers = [j for j in range(n) if j != a]

    def entry(c, i):
        if c == 0:
            return i + 1
        return powers[c - 1] << vm.shift(0, i)

    return ThetaPoly(vm, _det_vec(n, entry))


def diagram_det(d, n: int | None = None, vm: VarMatrix | None = None) -> dict:
    """det(x_i^k y_i^l) over cells (k, l), higher rows first then k increasing.

    Returned as a packed vector on a two-row matrix (x, y), theta slot empty.
    """
    d = Diagram(d)
    n = len(d) if n is None else n
    if len(d) != n:
        raise SizeMismatch(f"diagram has {len(d)} cells, expected {n}")
    vm = vm or VarMatrix(2, n)
    cols = d.ordered()

    def entry(c, i):
        k, l = cols[c]
        return (k << vm.shift(0, i)) + (l << vm.shift(1, i))

    return _det_vec(n, entry)


def diagram_det_poly(d, n: int | None = None) -> MPoly:
    d = Diagram(d)
    n = len(d) if n is None else n
    vm = VarMatrix(2, n)
    v = diagram_det(d, n, vm)
    return vec_to_mpoly(v, vm)


def vec_to_mpoly(v: dict, vm: VarMatrix) -> MPoly:
    names = vm.names()
    d = {}
    for key, c in v.items():
        _, ex = vm.unpack(key)
        d[tuple(e for row in ex for e in row)] = c
    return MPoly.from_terms(d, names)


# echelon slices -----------------------------------------------------------------------------

class Slice:
    """Fully reduced echelon basis of a subspace of one multidegree."""

    __slots__ = ("rows", "where")

    def __init__(self):
        self.rows: list = []
        self.where: dict = {}  # pivot key -> row index

    def __len__(self):
        return len(self.rows)

    def pivots(self) -> list:
        return [max(r) for r in self.rows]

    def reduce(self, v: dict) -> dict:
        hits = [p for p in v if p in self.where]
        if not hits:
            return v
        for p in hits:
            c = v.get(p)
            if not c:
                continue
            row = self.rows[self.where[p]]
            rp = row[p]
            g = math.gcd(rp, c)
            v = _combine(v, rp // g, row, c // g)
        return _primitive(v)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def insert(self, v: dict) -> dict | None:
        """Add v to the span; returns the new primitive row or None if dependent."""
        v = self.reduce(v)
        if not v:
            return None
        v = _primitive(v)
        p = max(v)
        vp = v[p]
        for j, row in enumerate(self.rows):
            c = row.get(p)
            if c:
                g = math.gcd(vp, c)
                self.rows[j] = _primitive(_combine(row, vp // g, v, c // g))
        self.where[p] = len(self.rows)
        self.rows.append(v)
        return v

    def coords(self, v: dict) -> dict:
        """Coordinates of v (assumed in the span) with respect to the rows."""
        out = {}
        for p, j in self.where.items():
            c = v.get(p)
            if c:
                out[j] = Fraction(c, self.rows[j][p])
        return out

    def copy(self) -> "Slice":
        s = Slice()
        s.rows = [dict(r) for r in self.rows]
        s.where = dict(self.where)
        return s


@dataclass
class GradedBasis:
    vm: VarMatrix
    slices: dict = field(default_factory=dict)  # multidegree -> Slice
    label: str = ""

    def dims(self) -> dict:
        return {d: len(s) for d, s in sorted(self.slices.items()) if len(s)}

    def dim(self) -> int:
        return sum(len(s) for s in self.slices.values())

    def slice(self, d) -> Slice:
        return self.slices.setdefault(tuple(d), Slice())

    def insert(self, v: dict, d=None):
        if not v:
            return None
        d = tuple(d) if d is not None else self.vm.multidegree(next(iter(v)))
        return self.slice(d).insert(v)

    def vectors(self):
        for d, s in sorted(self.slices.items()):
            for r in s.rows:
                yield d, r

    def contains(self, v: dict) -> bool:
        if not v:
            return True
        d = self.vm.multidegree(next(iter(v)))
        s = self.slices.get(d)
        return s is not None and s.contains(v)

    def theta_linear(self) -> bool:
        return all(key & EMASK for _, r in self.vectors() for key in r)

    def to_json(self) -> dict:
        return {
            "k": self.vm.k, "n": self.vm.n, "label": self.label,
            "slices": [{"deg": list(d), "rows": [sorted([k, c] for k, c in r.items())
                                                 for r in s.rows]}
                       for d, s in sorted(self.slices.items()) if len(s)],
        }

    @staticmethod
    def from_json(obj) -> "GradedBasis":
        gb = GradedBasis(VarMatrix(obj["k"], obj["n"]), label=obj.get("label", ""))
        for sl in obj["slices"]:
            s = gb.slice(sl["deg"])
            for row in sl["rows"]:
                v = {int(k): int(c) for k, c in row}
                s.where[max(v)] = len(s.rows)
                s.rows.append(v)
        return gb


# closure ----------------------------------------------------------------------------------

@dataclass(frozen=True)
class Ops:
    """Operator set for closure: derivative rows and polarization orders."""

    deriv_rows: tuple = (0,)
    max_r: int = 0  # 0 disables polarization

    def key(self) -> list:
        return [list(self.deriv_rows), self.max_r]


def _apply_ops(v: dict, d: tuple, vm: VarMatrix, ops: Ops):
    for r in ops.deriv_rows:
        if d[r] == 0:
            continue
        for i in range(vm.n):
            w = derive_vec(v, vm, r, i)
            if w:
                nd = list(d)
                nd[r] -= 1
                yield w, tuple(nd)
    if ops.max_r:
        for u in range(vm.k):
            for s in range(1, min(ops.max_r, d[u]) + 1):
                for t in range(vm.k):
                    if t == u:
                        continue
                    w = polarize_vec(v, vm, u, t, s)
                    if w:
                        nd = list(d)
                        nd[u] -= s
                        nd[t] += 1
                        yield w, tuple(nd)


def closure(gens, vm: VarMatrix, ops: Ops, gb: GradedBasis | None = None) -> GradedBasis:
    """Smallest graded subspace containing gens and stable under ops."""
    gb = gb or GradedBasis(vm)
    queue = []
    for g in gens:
        v = g.vec if isinstance(g, ThetaPoly) else g
        if not v:
            continue
        d = vm.multidegree(next(iter(v)))
        row = gb.insert(v, d)
        if row is not None:
            queue.append((d, row))
    # process larger total degree first so the frontier shrinks monotonically
    while queue:
        queue.sort(key=lambda x: sum(x[0]))
        d, v = queue.pop()
        for w, nd in _apply_ops(v, d, vm, ops):
            row = gb.insert(w, nd)
            if row is not None:
                queue.append((nd, row))
    return gb


def is_closed(gb: GradedBasis, ops: Ops) -> bool:
    for d, v in list(gb.vectors()):
        for w, nd in _apply_ops(v, d, gb.vm, ops):
            s = gb.slices.get(nd)
            if s is None or not s.contains(w):
                return False
    return True


# the S_n side -------------------------------------------------------------------------------

def class_reps(n: int) -> list:
    return [(mu, cycle_permutation(mu)) for mu in partition_list(n)]


def slice_character(s: Slice, vm: VarMatrix, check: bool = True) -> dict:
    out = {}
    for mu, perm in class_reps(vm.n):
        tr = Fraction(0)
        for j, row in enumerate(s.rows):
            w = permute_vec(row, vm, perm)
            if check and not s.contains(w):
                raise NotSnStable(f"slice is not stable under a permutation of type {mu}")
            p = max(row)
            c = w.get(p)
            if c:
                tr += Fraction(c, row[p])
        if tr.denominator != 1:
            raise NotSnStable("non-integral trace")
        out[mu] = int(tr)
    return out


def basis_character(vectors: list, vm: VarMatrix) -> dict:
    """Character of the span of arbitrary (independent) vectors, via tracked elimination."""
    N = len(vectors)
    # echelonize with a transform so coordinates in the given basis are recoverable
    rows = []
    trans = []
    where = {}
    for idx, v in enumerate(vectors):
        v = {k: Fraction(c) for k, c in v.items()}
        t = {idx: Fraction(1)}
        for p, j in list(where.items()):
            c = v.get(p)
            if c:
                f = c / rows[j][p]
                v = {k: x for k, x in vec_add(v, rows[j], -f).items() if x}
                t = {k: x for k, x in vec_add(t, trans[j], -f).items() if x}
        if not v:
            raise ValueError("vectors are not independent")
        p = max(v)
        for j in range(len(rows)):
            c = rows[j].get(p)
            if c:
                f = c / v[p]
                rows[j] = {k: x for k, x in vec_add(rows[j], v, -f).items() if x}
                trans[j] = {k: x for k, x in vec_add(trans[j], t, -f).items() if x}
        where[p] = len(rows)
        rows.append(v)
        trans.append(t)
    out = {}
    for mu, perm in class_reps(vm.n):
        tr = Fraction(0)
        for l, b in enumerate(vectors):
            w = permute_vec(b, vm, perm)
            # coordinate of w along vectors[l]
            for p, j in where.items():
                c = w.get(p)
                if c:
                    tr += c / rows[j][p] * trans[j].get(l, 0)
        out[mu] = int(tr) if tr.denominator == 1 else tr
    return out


def isotypic_multiplicities(chi: dict, n: int) -> dict:
    out = {}
    for la in partition_list(n):
        m = Fraction(0)
        for mu, v in chi.items():
            m += Fraction(v * character(la, mu), centralizer_size(mu))
        if m.denominator != 1:
            raise NotSnStable("non-integral isotypic multiplicity")
        if m:
            out[la] = int(m)
    return out


def _assemble(per_la_hilbert: dict, k: int) -> TensorSF:
    """{la: {multidegree: dim}} -> sum c s_rho(q) (x) s_la(z)."""
    names = tuple(f"q{i + 1}" for i in range(k))
    out = {}
    for la, hil in per_la_hilbert.items():
        if not hil:
            continue
        exp = {tuple(d): c for d, c in hil.items() if c}
        for rho, c in glk_schur_expand(exp, names).items():
            _add_into(out, (rho, la), c)
    return TensorSF(out)


def frobenius(gb: GradedBasis, n: int | None = None, check: bool = True) -> TensorSF:
    """Graded Frobenius characteristic by character traces on every slice."""
    n = gb.vm.n if n is None else n
    if n != gb.vm.n:
        raise ContextMismatch("n does not match the variable matrix")
    per = {}
    for d, s in gb.slices.items():
        if not len(s):
            continue
        for la, m in isotypic_multiplicities(slice_character(s, gb.vm, check), n).items():
            per.setdefault(la, {})[d] = m
    return _assemble(per, gb.vm.k)


# Young symmetrizers -----------------------------------------------------------------------

@lru_cache(maxsize=None)
def _young_groups(la: tuple):
    """Row and column groups (as image tuples) of the row-reading tableau of shape la."""
    n = sum(la)
    rows = []
    start = 0
    for p in la:
        rows.append(list(range(start, start + p)))
        start += p
    cols = [[rows[r][c] for r in range(len(la)) if c < la[r]] for c in range(la[0])] if la else []

    def group(blocks):
        out = []
        for combo in itertools.product(*[list(itertools.permutations(b)) for b in blocks]):
            img = list(range(n))
            sgn = 1
            for b, pb in zip(blocks, combo):
                for x, y in zip(b, pb):
                    img[x] = y
                sgn *= _perm_sign([b.index(y) for y in pb])
            out.append((tuple(img), sgn))
        return out

    return group(rows), group(cols)


def young_symmetrize(v: dict, vm: VarMatrix, la: tuple) -> dict:
    R, C = _young_groups(tuple(la))
    acc = {}
    for perm, _ in R:
        acc = vec_add(acc, permute_vec(v, vm, perm))
    out = {}
    for perm, sgn in C:
        out = vec_add(out, permute_vec(acc, vm, perm), sgn)
    return out


def project_isotypic(gb: GradedBasis, la: tuple) -> GradedBasis:
    """e_T applied to every slice: slice dimensions become multiplicities of S^la."""
    out = GradedBasis(gb.vm, label=f"{gb.label}|e_{la}")
    for d, v in gb.vectors():
        w = young_symmetrize(v, gb.vm, la)
        if w:
            out.insert(w, d)
    return out


def frobenius_fast(gb: GradedBasis) -> TensorSF:
    """Frobenius characteristic via Young symmetrizer ranks (no traces)."""
    per = {}
    for la in partition_list(gb.vm.n):
        p = project_isotypic(gb, la)
        per[la] = {d: m for d, m in p.dims().items()}
    return _assemble(per, gb.vm.k)


# modules M_(a|b) ----------------------------------------------------------------------------

def _gb_encode(gb):
    return gb.to_json()


@lru_cache(maxsize=64)
def x_closure(n: int, a: int, b: int, k: int = 1) -> GradedBasis:
    """Closure of D_(a|b) under the x-derivatives, embedded in k rows."""
    vm = VarMatrix(k, n)
    D = hook_det(n, a, b, vm)
    return closure([D], vm, Ops((0,), 0), GradedBasis(vm, label=f"dx({a}|{b})"))


def module_M(n: int, a: int, b: int, k: int, max_r: int | None = None,
             route: str = "fast") -> GradedBasis:
    """M^<k>_(a|b): closure of D_(a|b) under derivatives and polarizations.

    route="fast" closes under x-derivatives first and then under polarizations
    (derivatives in other rows are then redundant); route="generic" applies
    every operator until the fixed point.
    """
    Hook(a, b)
    if a + b + 1 != n:
        raise ValueError("a + b + 1 must equal n")
    max_r = n - 1 if max_r is None else max_r
    vm = VarMatrix(k, n)
    if route == "generic":
        D = hook_det(n, a, b, vm)
        return closure([D], vm, Ops(tuple(range(k)), max_r if k > 1 else 0),
                       GradedBasis(vm, label=f"M({a}|{b})"))

    def compute():
        base = x_closure(n, a, b, k)
        if k == 1:
            return base
        gens = [v for _, v in base.vectors()]
        return closure(gens, vm, Ops((), max_r), GradedBasis(vm, label=f"M({a}|{b})"))

    return cache.cached("module", {"n": n, "a": a, "b": b, "k": k, "r": max_r}, compute,
                        _gb_encode, GradedBasis.from_json)


def _isotypic_module(n: int, a: int, b: int, k: int, la: tuple, max_r: int) -> GradedBasis:
    """e_T M^<k>_(a|b), built as the polarization closure of e_T applied to the x-closure."""
    vm = VarMatrix(k, n)
    base = x_closure(n, a, b, k)
    gens = []
    for d, v in base.vectors():
        w = young_symmetrize(v, vm, la)
        if w:
            gens.append(w)
    ops = Ops((), max_r if k > 1 else 0)
    return closure(gens, vm, ops, GradedBasis(vm, label=f"e_{la}M({a}|{b})"))


def module_hilbert_by_isotypic(n: int, a: int, b: int, k: int, max_r: int | None = None) -> dict:
    """{la: {multidegree: multiplicity of S^la}} for M^<k>_(a|b)."""
    max_r = n - 1 if max_r is None else max_r

    def compute():
        out = {}
        for la in partition_list(n):
            gb = _isotypic_module(n, a, b, k, la, max_r)
            out[la] = gb.dims()
        return out

    def enc(d):
        return [{"la": list(la), "dims": [[list(deg), m] for deg, m in sorted(h.items())]}
                for la, h in sorted(d.items())]

    def dec(obj):
        return {tuple(e["la"]): {tuple(deg): m for deg, m in e["dims"]} for e in obj}

    return cache.cached("isotypic_hilbert", {"n": n, "a": a, "b": b, "k": k, "r": max_r},
                        compute, enc, dec)


def module_frobenius(n: int, a: int, b: int, k: int, max_r: int | None = None) -> TensorSF:
    if b < 0:
        return TensorSF()
    return _assemble(module_hilbert_by_isotypic(n, a, b, k, max_r), k)


def s_rho(n: int, a: int, b: int, k: int, max_r: int | None = None) -> TensorSF:
    """Frobenius of M_(a|b) minus that of M_(a+1|b-1) (zero when b = 0)."""
    top = module_frobenius(n, a, b, k, max_r)
    sub = module_frobenius(n, a + 1, b - 1, k, max_r) if b > 0 else TensorSF()
    r = top - sub
    neg = r.negative_entries()
    if neg:
        raise NegativeMultiplicity(f"S_({a}|{b}) has negative multiplicities {neg}")
    return r


def polarization_order_diagnostic(n: int, a: int, b: int, k: int) -> dict:
    """Compare first-order-only polarization closure with the full one."""
    full = module_hilbert_by_isotypic(n, a, b, k)
    first = module_hilbert_by_isotypic(n, a, b, k, max_r=1)
    return {"n": n, "a": a, "b": b, "k": k, "higher_orders_enlarge": full != first}


# Garsia-Haiman modules ----------------------------------------------------------------------

def gh_module(d, n: int | None = None) -> GradedBasis:
    d = Diagram(d)
    n = len(d) if n is None else n
    vm = VarMatrix(2, n)
    D = diagram_det(d, n, vm)

    def compute():
        return closure([D], vm, Ops((0, 1), 0), GradedBasis(vm, label="GH"))

    key = {"cells": sorted([list(c) for c in d])}
    return cache.cached("gh_module", key, compute, _gb_encode, GradedBasis.from_json)


def _per_la(gb: GradedBasis, use_traces: bool) -> dict:
    per = {}
    if use_traces:
        for d, s in gb.slices.items():
            if len(s):
                for la, m in isotypic_multiplicities(slice_character(s, gb.vm), gb.vm.n).items():
                    per.setdefault(la, {})[d] = m
    else:
        for la in partition_list(gb.vm.n):
            per[la] = project_isotypic(gb, la).dims()
    return per


def garsia_haiman(d, use_traces: bool = False) -> SymFunc:
    """Bigraded Frobenius characteristic of the derivative closure of D_d(x, y)."""
    gb = gh_module(d)
    out = {}
    from .macdonald import QT
    for la, hil in _per_la(gb, use_traces).items():
        if hil:
            out[la] = MPoly.from_terms(dict(hil), QT)
    return SymFunc("s", out)


def intersect(A: GradedBasis, B: GradedBasis) -> GradedBasis:
    """Slice-wise intersection of spans (Zassenhaus)."""
    if A.vm != B.vm:
        raise ContextMismatch("bases live in different variable matrices")
    out = GradedBasis(A.vm, label=f"{A.label}&{B.label}")
    for d in sorted(set(A.slices) & set(B.slices)):
        sa, sb = A.slices[d], B.slices[d]
        if not len(sa) or not len(sb):
            continue
        tag = 1 << (max(max(max(r) for r in sa.rows), max(max(r) for r in sb.rows)).bit_length() + 1)
        z = Slice()
        for r in sa.rows:
            v = {k + tag: c for k, c in r.items()}
            v.update(r)
            z.insert(v)
        for r in sb.rows:
            z.insert({k + tag: c for k, c in r.items()})
        s = out.slice(d)
        for r in z.rows:
            if max(r) < tag:
                s.insert(r)
    return out


def science_fiction_modules(n: int):
    """(I_n, G_(n-1,1)): I_n is the intersection of the Ferrers-diagram modules
    of the hooks (n-2|1) = (n-1,1) and (n-1|0) = (n)."""
    G1 = gh_module(Diagram.ferrers((n - 1, 1)))
    G0 = gh_module(Diagram.ferrers((n,)))
    return intersect(G1, G0), G1


def _sym_of(gb: GradedBasis) -> SymFunc:
    from .macdonald import QT
    out = {}
    for la in partition_list(gb.vm.n):
        hil = project_isotypic(gb, la).dims()
        if hil:
            out[la] = MPoly.from_terms(dict(hil), QT)
    return SymFunc("s", out)


def intersection_perp(n: int) -> GradedBasis:
    """{f(dx) D_(n-1,1) : f in I_n}."""
    I, G1 = science_fiction_modules(n)
    vm = G1.vm
    D = diagram_det(Diagram.ferrers((n - 1, 1)), n, vm)
    out = GradedBasis(vm, label="I_perp")
    for _, v in I.vectors():
        w = _apply_diff_op(v, D, vm)
        if w:
            out.insert(w)
    return out


def intersection_perp_frobenius(n: int) -> SymFunc:
    return _sym_of(intersection_perp(n))


def intersection_frobenius(n: int) -> SymFunc:
    I, _ = science_fiction_modules(n)
    return _sym_of(I)


def _apply_diff_op(phi: dict, target: dict, vm: VarMatrix) -> dict:
    """phi(d/dx) applied to target; phi carries no theta (slot 0)."""
    out = {}
    for pk, pc in phi.items():
        v = target
        _, ex = vm.unpack(pk)
        for r in range(vm.k):
            for i in range(vm.n):
                if ex[r][i]:
                    v = derive_vec(v, vm, r, i, ex[r][i])
                    if not v:
                        break
            if not v:
                break
        out = vec_add(out, v, pc)
    return out


def basis_lemma_check(n: int, a: int) -> dict:
    """phi(dx) D_(a|b) for phi in a basis of I_n: independent modulo M_(a+1|b-1).

    The intersection I_n has no y-dependence (its Frobenius has t-degree 0),
    so each basis element is a polynomial in x and acts as a differential
    operator on the one-row module.
    """
    b = n - a - 1
    if a < 1 or b < 0:
        raise ValueError("needs 1 <= a <= n-1")
    I, _ = science_fiction_modules(n)
    vm2 = I.vm
    vm1 = VarMatrix(1, n)
    D = hook_det(n, a, b, vm1).vec
    phis = []
    for d, v in I.vectors():
        if d[1] != 0:
            return {"ok": False, "reason": "intersection has y-dependence"}
        conv = {}
        for key, c in v.items():
            _, ex = vm2.unpack(key)
            conv[vm1.pack(0, [ex[0]])] = c
        phis.append(conv)
    images = [_apply_diff_op(p, D, vm1) for p in phis]
    sub = module_M(n, a + 1, b - 1, 1) if b > 0 else GradedBasis(vm1)
    work = GradedBasis(vm1)
    for _, v in sub.vectors():
        work.insert(v)
    base = work.dim()
    independent = 0
    for w in images:
        if w and work.insert(w) is not None:
            independent += 1
    top = module_M(n, a, b, 1)
    inside = all(top.contains(w) for w in images)
    return {"n": n, "a": a, "size": len(phis), "independent": independent,
            "dim_quotient": top.dim() - base, "inside": inside,
            "ok": inside and independent == len(phis) == top.dim() - base}


def random_basis_change(s: Slice, rng: random.Random) -> list:
    """A random invertible recombination of the slice rows."""
    N = len(s.rows)
    while True:
        M = [[rng.randint(-3, 3) for _ in range(N)] for _ in range(N)]
        if _int_det(M) != 0:
            break
    out = []
    for i in range(N):
        v = {}
        for j in range(N):
            if M[i][j]:
                v = vec_add(v, s.rows[j], M[i][j])
        out.append(v)
    return out


def _int_det(M) -> int:
    from fractions import Fraction as F
    A = [[F(x) for x in r] for r in M]
    n = len(A)
    det = F(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            for j in range(c, n):
                A[r][j] -= f * A[c][j]
    return int(det)


def frobenius_in_basis(gb: GradedBasis, rng: random.Random) -> TensorSF:
    """Frobenius computed from a randomly re-chosen basis of each slice."""
    per = {}
    for d, s in gb.slices.items():
        if not len(s):
            continue
        chi = basis_character(random_basis_change(s, rng), gb.vm)
        for la, m in isotypic_multiplicities(chi, gb.vm.n).items():
            per.setdefault(la, {})[d] = m
    return _assemble(per, gb.vm.k)
