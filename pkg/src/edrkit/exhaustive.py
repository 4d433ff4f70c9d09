"""Brute-force checkers for finite rings and finite quotients.

Everything here enumerates: comaximality means some explicit combination hits
1, a unit means some explicit product hits 1, and each negative verdict comes
with a concrete witness that re-checks independently.  The checkers operate on
small "structures" -- a ring or quotient with indexed elements -- so the same
search code serves Z/n, GF(p)[x]/(f), products and trivial extensions.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import gcd
from typing import Any, Iterable

from .rings import (
    ModularRing,
    Ring,
    RingElement,
    UnsupportedOperationError,
    _padd,
    _pdivmod,
    _pegcd,
    _pmul,
    _pneg,
    _ptrim,
)

# quotients above this size are rejected rather than ground exhaustively
MAX_QUOTIENT_SIZE = 10_000
# dense-table structures above this size are rejected
MAX_TABLE_SIZE = 4096


class TooLargeError(UnsupportedOperationError):
    """The exhaustive search space exceeds the supported desk scale."""


class ModStructure:
    """Z/m with arithmetic on plain ints (m >= 1; m == 1 is the zero ring)."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("modulus must be >= 1")
        if m > MAX_QUOTIENT_SIZE:
            raise TooLargeError(f"quotient of size {m} exceeds {MAX_QUOTIENT_SIZE}")
        self.m = m
        self.size = m
        self.zero = 0
        self.one = 1 % m

    def elements(self) -> Iterable[int]:
        return range(self.m)

    def add(self, x, y):
        return (x + y) % self.m

    def neg(self, x):
        return (-x) % self.m

    def mul(self, x, y):
        return (x * y) % self.m

    def is_unit(self, x):
        return gcd(x, self.m) == 1

    def comaximal(self, x, y):
        return gcd(gcd(x, y), self.m) == 1

    def quotient(self, c):
        g = gcd(c, self.m)
        return ModStructure(g if g else self.m)


class PolyModStructure:
    """GF(p)[x]/(f) for nonzero f, elements as coefficient tuples."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        if not modulus:
            raise ValueError("modulus polynomial must be nonzero")
        self.p = p
        self.f = modulus
        deg = len(modulus) - 1
        self.size = p ** deg
        if self.size > MAX_QUOTIENT_SIZE:
            raise TooLargeError(f"quotient of size {self.size} exceeds {MAX_QUOTIENT_SIZE}")
        self.zero = ()
        self.one = (1,) if deg >= 1 else ()

    def elements(self):
        deg = len(self.f) - 1
        for t in itertools.product(range(self.p), repeat=deg):
            yield _ptrim(list(t))

    def _red(self, v):
        return _pdivmod(v, self.f, self.p)[1] if v else ()

    def add(self, x, y):
        return self._red(_padd(x, y, self.p))

    def neg(self, x):
        return self._red(_pneg(x, self.p))

    def mul(self, x, y):
        return self._red(_pmul(x, y, self.p))

    def is_unit(self, x):
        g, _, _ = _pegcd(x, self.f, self.p)
        return len(g) == 1

    def comaximal(self, x, y):
        g, _, _ = _pegcd(x, y, self.p)
        h, _, _ = _pegcd(g, self.f, self.p)
        return len(h) == 1


class TableStructure:
    """Dense-table structure for an arbitrary finite ring or quotient."""

    def __init__(self, elements, add, mul, neg, zero, one, describe):
        self._elements = list(elements)
        self.size = len(self._elements)
        if self.size > MAX_TABLE_SIZE:
            raise TooLargeError(f"finite structure of size {self.size} exceeds {MAX_TABLE_SIZE}")
        self.index = {v: i for i, v in enumerate(self._elements)}
        n = self.size
        els = self._elements
        self.add_t = [[self.index[add(els[i], els[j])] for j in range(n)] for i in range(n)]
        self.mul_t = [[self.index[mul(els[i], els[j])] for j in range(n)] for i in range(n)]
        self.neg_t = [self.index[neg(els[i])] for i in range(n)]
        self.zero = self.index[zero]
        self.one = self.index[one]
        self._describe = describe
        one_i = self.one
        self.units = frozenset(
            i for i in range(n) if any(self.mul_t[i][j] == one_i for j in range(n)))
        self._ideals: dict[int, frozenset[int]] = {}
        self._one_minus_ideals: dict[int, frozenset[int]] = {}

    @classmethod
    def for_ring(cls, ring: Ring) -> "TableStructure":
        return cls(ring.elements(), ring.add, ring.mul, ring.neg, ring.zero, ring.one,
                   lambda v: RingElement(ring, v))

    def elements(self):
        return range(self.size)

    def describe(self, i: int):
        return self._describe(self._elements[i])

    def add(self, x, y):
        return self.add_t[x][y]

    def neg(self, x):
        return self.neg_t[x]

    def mul(self, x, y):
        return self.mul_t[x][y]

    def is_unit(self, x):
        return x in self.units

    def ideal(self, x) -> frozenset[int]:
        cached = self._ideals.get(x)
        if cached is None:
            row = self.mul_t[x]
            cached = frozenset(row)
            self._ideals[x] = cached
        return cached

    def comaximal(self, x, y):
        # 1 in xR + yR  <=>  xR meets { 1 - q : q in yR }
        om = self._one_minus_ideals.get(y)
        if om is None:
            om = frozenset(self.add_t[self.one][self.neg_t[q]] for q in self.ideal(y))
            self._one_minus_ideals[y] = om
        return not self.ideal(x).isdisjoint(om)

    def quotient(self, c) -> "QuotientTable":
        return QuotientTable(self, c)


class QuotientTable:
    """Quotient of a TableStructure by the principal ideal of one element."""

    def __init__(self, parent: TableStructure, c):
        ideal = parent.ideal(c)
        rep_of = {}
        reps = []
        for x in range(parent.size):
            if x in rep_of:
                continue
            coset = sorted(parent.add(x, i) for i in ideal)
            r = coset[0]
            reps.append(r)
            for member in coset:
                rep_of[member] = r
        reps = sorted(set(reps))
        idx = {r: i for i, r in enumerate(reps)}
        n = len(reps)
        self.size = n
        self.add_t = [[idx[rep_of[parent.add(reps[i], reps[j])]] for j in range(n)]
                      for i in range(n)]
        self.mul_t = [[idx[rep_of[parent.mul(reps[i], reps[j])]] for j in range(n)]
                      for i in range(n)]
        self.neg_t = [idx[rep_of[parent.neg(reps[i])]] for i in range(n)]
        self.zero = idx[rep_of[parent.zero]]
        self.one = idx[rep_of[parent.one]]
        self._parent = parent
        self._reps = reps
        one_i = self.one
        self.units = frozenset(
            i for i in range(n) if any(self.mul_t[i][j] == one_i for j in range(n)))
        self._ideals: dict[int, frozenset[int]] = {}
        self._one_minus_ideals: dict[int, frozenset[int]] = {}

    def elements(self):
        return range(self.size)

    def describe(self, i: int):
        return self._parent.describe(self._reps[i])

    add = TableStructure.add
    neg = TableStructure.neg
    mul = TableStructure.mul
    is_unit = TableStructure.is_unit
    ideal = TableStructure.ideal
    comaximal = TableStructure.comaximal

    def quotient(self, c):
        raise UnsupportedOperationError("nested quotients are not needed here")


def _comaximal_pairs(s) -> Iterable[tuple[Any, Any]]:
    for u in s.elements():
        for v in s.elements():
            if s.comaximal(u, v):
                yield (u, v)


def stable_range_1(s) -> tuple[bool, tuple | None]:
    """Exhaustive stable range 1: every comaximal (u, v) has u + v*t a unit."""
    for u, v in _comaximal_pairs(s):
        if not any(s.is_unit(s.add(u, s.mul(v, t))) for t in s.elements()):
            return False, (u, v)
    return True, None


@lru_cache(maxsize=None)
def int_quotient_stable_range_1(m: int) -> bool:
    """Stable range 1 of Z/m by direct search (cached; m <= MAX_QUOTIENT_SIZE)."""
    if m > MAX_QUOTIENT_SIZE:
        raise TooLargeError(f"quotient of size {m} exceeds {MAX_QUOTIENT_SIZE}")
    unit = [gcd(i, m) == 1 for i in range(m)] if m > 1 else [True]
    if m == 1:
        return True
    for u in range(m):
        for v in range(m):
            if gcd(gcd(u, v), m) != 1:
                continue
            acc = u
            for _ in range(m):
                if unit[acc]:
                    break
                acc = (acc + v) % m
            else:
                return False
    return True


def is_clean(s) -> tuple[bool, tuple | None]:
    """Every element is idempotent + unit; witness is a non-clean element."""
    idem = [e for e in s.elements() if s.mul(e, e) == e]
    for a in s.elements():
        if not any(s.is_unit(s.add(a, s.neg(e))) for e in idem):
            return False, (a,)
    return True, None


def locally_stable(s) -> tuple[bool, tuple | None]:
    """Every comaximal (a, b) has some a + b*y with stable-range-1 quotient."""
    stable_memo: dict[Any, bool] = {}

    def stable(w) -> bool:
        hit = stable_memo.get(w)
        if hit is None:
            hit = stable_range_1(s.quotient(w))[0]
            stable_memo[w] = hit
        return hit

    for a, b in _comaximal_pairs(s):
        if not any(stable(s.add(a, s.mul(b, y))) for y in s.elements()):
            return False, (a, b)
    return True, None


def neat_range_1(s) -> tuple[bool, tuple | None]:
    """Every comaximal (a, b) has some a + b*y with clean quotient."""
    clean_memo: dict[Any, bool] = {}

    def clean(w) -> bool:
        hit = clean_memo.get(w)
        if hit is None:
            hit = is_clean(s.quotient(w))[0]
            clean_memo[w] = hit
        return hit

    for a, b in _comaximal_pairs(s):
        if not any(clean(s.add(a, s.mul(b, y))) for y in s.elements()):
            return False, (a, b)
    return True, None


def _divisors(s, x) -> list:
    return [d for d in s.elements() if any(s.mul(d, k) == x for k in s.elements())]


def element_is_adequate(s, c) -> bool:
    """Adequate element test, straight from the definition, by enumeration."""
    pairs = [(r, t) for r in s.elements() for t in s.elements() if s.mul(r, t) == c]
    for a in s.elements():
        ok = False
        for r, t in pairs:
            if not s.comaximal(r, a):
                continue
            if all(s.is_unit(sp) or not s.comaximal(sp, c) for sp in _divisors(s, t)):
                ok = True
                break
        if not ok:
            return False
    return True


def all_nonzero_adequate(s) -> tuple[bool, tuple | None]:
    for c in s.elements():
        if c == s.zero:
            continue
        if not element_is_adequate(s, c):
            return False, (c,)
    return True, None


class ModStructureView(ModStructure):
    """ModStructure that can describe its elements as RingElements."""

    def __init__(self, ring: ModularRing):
        super().__init__(ring.n)
        self._ring = ring

    def describe(self, i: int) -> RingElement:
        return RingElement(self._ring, i)


def structure_for(ring: Ring):
    """Pick the cheapest exhaustive structure for a finite ring."""
    if isinstance(ring, ModularRing):
        return ModStructureView(ring)
    return TableStructure.for_ring(ring)
