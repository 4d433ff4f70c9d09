"""Exact arithmetic over a small family of commutative rings.

Every ring here is commutative with identity and is *effective*: equality,
arithmetic, unit testing and (where the ring supports it) Bezout certificates
are all computed exactly, with no floating point anywhere.

Shipped ring kinds and their raw value representations:

* ``IntegerRing`` -- arbitrary-precision ``int``.
* ``ModularRing(n)`` -- residues as ``int`` in ``[0, n)``, ``n >= 2``.
* ``GFPolynomialRing(p)`` -- univariate polynomials over the prime field
  ``GF(p)``, stored as coefficient tuples low-to-high with no trailing
  zeros; the zero polynomial is the empty tuple.
* ``ProductRing(factors)`` -- tuples of component values, componentwise ops.
* ``TrivialExtensionRing(base, module)`` -- pairs ``(a, e)`` with the
  square-zero multiplication ``(a, e)(b, f) = (ab, af + be)``; the module is
  either the base ring itself (``"self"``) or the rationals over an integer
  base (``"rationals"``, elements ``Fraction``).
* ``TruncatedSeriesRing(order)`` -- elements ``a0 + a1*x + ... + ak*x^k``
  with integer constant term and rational higher coefficients, truncated at
  exponent ``order`` (an honest quotient, so the ring axioms hold exactly).

A :class:`BezoutCertificate` for a pair ``(a, b)`` witnesses the principal
ideal ``aR + bR = dR`` with the identities

    a*x + b*y = d,    a = d*a0,    b = d*b0,    a0*x + b0*y = 1.

The last ("refined") identity makes the 2x2 completion ``[[x, -b0], [y, a0]]``
unimodular with determinant exactly 1, which is what column reduction needs.
It is waived only for the degenerate pair ``(0, 0)``.

All values are immutable and all operations are pure functions, so everything
is safe to share across workers.
"""

from __future__ import annotations

import itertools
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Any, Iterator


class RingError(ValueError):
    """Base class for all exact-arithmetic errors."""


class RingMismatchError(RingError):
    """Two elements with different ring descriptors were combined."""


class NotAUnitError(RingError):
    pass


class NonDivisibleError(RingError):
    pass


class NotAssociatesError(RingError):
    pass


class InfiniteRingError(RingError):
    """An exhaustive operation was requested on an infinite ring."""


class UnsupportedOperationError(RingError):
    """The ring kind does not support the requested operation."""


class PreconditionError(RingError):
    """A documented algorithm precondition was violated by the inputs."""


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    """Classic extended Euclid: returns (g, x, y) with a*x + b*y = g >= 0."""
    quots = []
    while a != 0:
        quots.append(b // a)
        a, b = b % a, a
    g = abs(b)
    x, y = 0, (0 if b == 0 else (1 if b > 0 else -1))
    for q in reversed(quots):
        x, y = y - q * x, x
    return g, x, y


def _rational_gcd(e: Fraction, f: Fraction) -> Fraction:
    """Generator of the Z-module Z*e + Z*f inside Q (nonnegative)."""
    if e == 0 and f == 0:
        return Fraction(0)
    num = gcd(e.numerator * f.denominator, f.numerator * e.denominator)
    return Fraction(num, e.denominator * f.denominator)


# ---------------------------------------------------------------------------
# polynomial helpers over GF(p), coefficients low-to-high, no trailing zeros


def _ptrim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _padd(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return _ptrim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p
                   for i in range(n)])


def _pneg(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    return tuple((-c) % p for c in a)


def _pmul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pdivmod(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], -1, p)
    while len(r) >= len(b):
        if r[-1] == 0:
            r.pop()
            continue
        k = len(r) - len(b)
        coef = (r[-1] * inv_lead) % p
        q[k] = coef
        for i, bi in enumerate(b):
            r[k + i] = (r[k + i] - coef * bi) % p
        while r and r[-1] == 0:
            r.pop()
    return _ptrim(q), _ptrim(r)


def _pmonic(a: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a:
        return ()
    inv = pow(a[-1], -1, p)
    return tuple((c * inv) % p for c in a)


def _pegcd(a: tuple[int, ...], b: tuple[int, ...], p: int):
    """Extended gcd over GF(p)[x]: (g, x, y) with a*x + b*y = g, g monic or 0."""
    r0, r1 = a, b
    x0, x1 = (1,), ()
    y0, y1 = (), (1,)
    while r1:
        q, r = _pdivmod(r0, r1, p)
        r0, r1 = r1, r
        x0, x1 = x1, _padd(x0, _pneg(_pmul(q, x1, p), p), p)
        y0, y1 = y1, _padd(y0, _pneg(_pmul(q, y1, p), p), p)
    if r0:
        inv = pow(r0[-1], -1, p)
        scale = (inv % p,)
        return _pmonic(r0, p), _pmul(x0, scale, p), _pmul(y0, scale, p)
    return (), x0, y0


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------


class Ring(ABC):
    """A ring descriptor together with exact operations on raw values.

    Instances are immutable; equality is structural, so two separately
    constructed descriptors of the same ring compare (and hash) equal.
    Raw values are plain hashable Python data; :class:`RingElement` wraps a
    ring and a raw value for the public API.
    """

    kind: str = ""

    # -- identity ----------------------------------------------------------

    def _key(self) -> tuple:
        return (self.kind,)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Ring) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"<ring {self.expression()}>"

    @abstractmethod
    def expression(self) -> str:
        """Descriptor expression in the CLI grammar."""

    # -- capabilities --------------------------------------------------------

    @property
    def finite(self) -> bool:
        return False

    @property
    def bezout_total(self) -> bool:
        return True

    def cardinality(self) -> int:
        raise InfiniteRingError(f"{self.expression()} is not a finite ring")

    def elements(self) -> Iterator[Any]:
        raise InfiniteRingError(f"{self.expression()} is not enumerable")

    # -- raw arithmetic ------------------------------------------------------

    @abstractmethod
    def normalize(self, value: Any) -> Any:
        """Validate and normalize a raw payload; raises RingError if malformed."""

    @property
    @abstractmethod
    def zero(self) -> Any: ...

    @property
    @abstractmethod
    def one(self) -> Any: ...

    @abstractmethod
    def add(self, x: Any, y: Any) -> Any: ...

    @abstractmethod
    def neg(self, x: Any) -> Any: ...

    @abstractmethod
    def mul(self, x: Any, y: Any) -> Any: ...

    def sub(self, x: Any, y: Any) -> Any:
        return self.add(x, self.neg(y))

    @abstractmethod
    def is_unit(self, x: Any) -> bool: ...

    @abstractmethod
    def inverse(self, x: Any) -> Any: ...

    # -- divisibility and certificates ---------------------------------------

    @abstractmethod
    def divides(self, d: Any, a: Any) -> bool:
        """True iff a is in dR."""

    @abstractmethod
    def divide_exact(self, a: Any, d: Any) -> Any:
        """A deterministic q with a = d*q; raises NonDivisibleError otherwise."""

    def associate_unit(self, a: Any, d: Any) -> Any:
        """A unit u with a = d*u; raises NotAssociatesError if aR != dR."""
        if a == d:
            return self.one
        if not (self.divides(d, a) and self.divides(a, d)):
            raise NotAssociatesError(f"{a!r} and {d!r} are not associates in {self.expression()}")
        u = self.divide_exact(a, d)
        if not self.is_unit(u):
            raise NotAssociatesError(f"{a!r} and {d!r} are not associates in {self.expression()}")
        return u

    @abstractmethod
    def bezout_raw(self, a: Any, b: Any) -> tuple[Any, Any, Any, Any, Any]:
        """(d, x, y, a0, b0) for a nonzero pair; the (0, 0) pair never reaches here."""

    def canonical_associate(self, a: Any) -> Any:
        """The canonical generator of aR (nonnegative / monic / divisor of n)."""
        if a == self.zero:
            return self.zero
        return self.bezout_raw(a, self.zero)[0]

    # -- search orders -------------------------------------------------------

    def search_order(self) -> Iterator[Any]:
        """Deterministic small-first stream of elements for bounded searches."""
        if self.finite:
            return iter(list(self.elements()))
        raise UnsupportedOperationError(f"no search order for {self.expression()}")

    def residues_mod(self, c: Any) -> Iterator[Any]:
        """Canonical residues of R modulo cR (finite whenever R/cR is finite)."""
        if self.finite:
            return iter(list(self.elements()))
        raise UnsupportedOperationError(
            f"no residue enumeration modulo {c!r} in {self.expression()}")

    # -- text / JSON encodings ------------------------------------------------

    @abstractmethod
    def value_to_json(self, v: Any) -> Any: ...

    @abstractmethod
    def value_from_json(self, obj: Any) -> Any: ...


def _int_from_json(obj: Any, what: str) -> int:
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise RingError(f"expected an integer for {what}, got {obj!r}")
    try:
        return int(obj)
    except ValueError as exc:
        raise RingError(f"bad integer text {obj!r} for {what}") from exc


def _fraction_from_json(obj: Any, what: str) -> Fraction:
    if isinstance(obj, bool):
        raise RingError(f"expected a rational for {what}, got {obj!r}")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise RingError(f"bad rational text {obj!r} for {what}") from exc
    raise RingError(f"expected a rational for {what}, got {obj!r}")


def _fraction_to_json(q: Fraction) -> Any:
    if q.denominator == 1:
        return int(q)
    return f"{q.numerator}/{q.denominator}"


class IntegerRing(Ring):
    """The rational integers Z."""

    kind = "integers"

    def expression(self) -> str:
        return "z"

    def normalize(self, value: Any) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise RingError(f"integer payload expected, got {value!r}")
        return value

    zero = 0
    one = 1

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def is_unit(self, x):
        return x in (1, -1)

    def inverse(self, x):
        if not self.is_unit(x):
            raise NotAUnitError(f"{x} is not a unit of z")
        return x

    def divides(self, d, a):
        if d == 0:
            return a == 0
        return a % d == 0

    def divide_exact(self, a, d):
        if d == 0:
            if a != 0:
                raise NonDivisibleError(f"{d} does not divide {a} in z")
            return 0
        q, r = divmod(a, d)
        if r != 0:
            raise NonDivisibleError(f"{d} does not divide {a} in z")
        return q

    def bezout_raw(self, a, b):
        g, x, y = _egcd(a, b)
        return g, x, y, (a // g), (b // g)

    def search_order(self):
        yield 0
        k = 1
        while True:
            yield k
            yield -k
            k += 1

    def residues_mod(self, c):
        if c == 0:
            raise UnsupportedOperationError("no finite residue system modulo 0 in z")
        return iter(range(abs(c)))

    def value_to_json(self, v):
        return v

    def value_from_json(self, obj):
        return _int_from_json(obj, "z element")


class ModularRing(Ring):
    """The residue ring Z/nZ with n >= 2."""

    kind = "modular"

    def __init__(self, n: int):
        if not isinstance(n, int) or n < 2:
            raise RingError(f"modulus must be an integer >= 2, got {n!r}")
        self.n = n
        self._bezout_cache: dict[tuple[int, int], tuple] = {}

    def _key(self):
        return (self.kind, self.n)

    def expression(self) -> str:
        return f"zmod:{self.n}"

    @property
    def finite(self) -> bool:
        return True

    def cardinality(self) -> int:
        return self.n

    def elements(self):
        return iter(range(self.n))

    def normalize(self, value):
        if isinstance(value, bool) or not isinstance(value, int):
            raise RingError(f"residue payload expected, got {value!r}")
        return value % self.n

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1 % self.n

    def add(self, x, y):
        return (x + y) % self.n

    def neg(self, x):
        return (-x) % self.n

    def mul(self, x, y):
        return (x * y) % self.n

    def is_unit(self, x):
        return gcd(x, self.n) == 1

    def inverse(self, x):
        if not self.is_unit(x):
            raise NotAUnitError(f"{x} is not a unit of {self.expression()}")
        return pow(x, -1, self.n)

    def divides(self, d, a):
        return a % gcd(d, self.n) == 0

    def divide_exact(self, a, d):
        g = gcd(d, self.n)
        if a % g != 0:
            raise NonDivisibleError(f"{d} does not divide {a} in {self.expression()}")
        if d == 0:
            return 0
        m = self.n // g
        # smallest nonnegative solution of d*q = a (mod n)
        return (a // g) * pow((d // g) % m, -1, m) % m if m > 1 else 0

    def associate_unit(self, a, d):
        if gcd(a, self.n) != gcd(d, self.n):
            raise NotAssociatesError(f"{a} and {d} are not associates in {self.expression()}")
        for u in range(1, self.n):
            if gcd(u, self.n) == 1 and (d * u) % self.n == a:
                return u
        if a == d == 0:
            return self.one
        raise NotAssociatesError(f"{a} and {d} are not associates in {self.expression()}")

    def bezout_raw(self, a, b):
        key = (a, b)
        hit = self._bezout_cache.get(key)
        if hit is not None:
            return hit
        n = self.n
        d = gcd(a, b, n)
        # stable-range style: some y makes gcd(a + b*y, n) exactly d
        w = y0 = None
        for y0 in range(n):
            w = (a + b * y0) % n
            if gcd(w, n) == d:
                break
        # a unit u with d*u = w (mod n); w//d is coprime to n//d and the
        # remaining prime defect sits in d, repaired by stepping in n//d.
        big_n = n // d
        u = None
        for t in range(d):
            cand = (w // d + t * big_n) % n
            if cand and gcd(cand, n) == 1:
                u = cand
                break
        if u is None:  # pragma: no cover - a unit lift always exists in Z/n
            raise RingError("internal: unit lift failed in modular bezout")
        ui = pow(u, -1, n)
        x = ui
        y = (y0 * ui) % n
        a0_base, b0 = (a // d) % n, (b // d) % n
        # repair the refined identity a0*x + b0*y = 1 from mod n//d to mod n
        v = (a0_base * x + b0 * y) % n
        k = ((v - 1) // big_n) % d
        alpha = (-k) * pow(x % d, -1, d) % d if d > 1 else 0
        a0 = (a0_base + big_n * alpha) % n
        cert = (d % n, x, y, a0, b0)
        self._bezout_cache[key] = cert
        return cert

    def value_to_json(self, v):
        return v

    def value_from_json(self, obj):
        return _int_from_json(obj, f"{self.expression()} element") % self.n


class GFPolynomialRing(Ring):
    """Univariate polynomials over the prime field GF(p)."""

    kind = "prime-field-poly"

    def __init__(self, p: int):
        if not isinstance(p, int) or not _is_prime(p):
            raise RingError(f"gfpoly characteristic must be prime, got {p!r}")
        self.p = p

    def _key(self):
        return (self.kind, self.p)

    def expression(self) -> str:
        return f"gfpoly:{self.p}"

    def normalize(self, value):
        if isinstance(value, list):
            value = tuple(value)
        if not isinstance(value, tuple) or not all(
                isinstance(c, int) and not isinstance(c, bool) for c in value):
            raise RingError(f"coefficient tuple expected, got {value!r}")
        return _ptrim([c % self.p for c in value])

    zero = ()
    one = (1,)

    def add(self, x, y):
        return _padd(x, y, self.p)

    def neg(self, x):
        return _pneg(x, self.p)

    def mul(self, x, y):
        return _pmul(x, y, self.p)

    def is_unit(self, x):
        return len(x) == 1

    def inverse(self, x):
        if not self.is_unit(x):
            raise NotAUnitError(f"{x!r} is not a unit of {self.expression()}")
        return (pow(x[0], -1, self.p),)

    def divides(self, d, a):
        if not d:
            return not a
        return not _pdivmod(a, d, self.p)[1]

    def divide_exact(self, a, d):
        if not d:
            if a:
                raise NonDivisibleError(f"{d!r} does not divide {a!r} in {self.expression()}")
            return ()
        q, r = _pdivmod(a, d, self.p)
        if r:
            raise NonDivisibleError(f"{d!r} does not divide {a!r} in {self.expression()}")
        return q

    def bezout_raw(self, a, b):
        g, x, y = _pegcd(a, b, self.p)
        return g, x, y, self.divide_exact(a, g), self.divide_exact(b, g)

    def search_order(self):
        # graded: by degree, then coefficients low-to-high
        yield ()
        for deg in itertools.count(0):
            for lead in range(1, self.p):
                for rest in itertools.product(range(self.p), repeat=deg):
                    yield rest + (lead,)

    def residues_mod(self, c):
        if not c:
            raise UnsupportedOperationError(
                f"no finite residue system modulo 0 in {self.expression()}")
        deg = len(c) - 1
        return (_ptrim(list(t)) for t in itertools.product(range(self.p), repeat=deg))

    def value_to_json(self, v):
        return list(v)

    def value_from_json(self, obj):
        if not isinstance(obj, list):
            raise RingError(f"coefficient array expected, got {obj!r}")
        return self.normalize(tuple(_int_from_json(c, "coefficient") for c in obj))


class ProductRing(Ring):
    """A finite direct product of rings; all operations are componentwise."""

    kind = "product"

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise RingError("product needs at least one factor")
        if not all(isinstance(f, Ring) for f in factors):
            raise RingError("product factors must be rings")
        self.factors = factors

    def _key(self):
        return (self.kind, tuple(f._key() for f in self.factors))

    def expression(self) -> str:
        return "product:" + ",".join(f.expression() for f in self.factors)

    @property
    def finite(self) -> bool:
        return all(f.finite for f in self.factors)

    @property
    def bezout_total(self) -> bool:
        return all(f.bezout_total for f in self.factors)

    def cardinality(self):
        total = 1
        for f in self.factors:
            total *= f.cardinality()
        return total

    def elements(self):
        return itertools.product(*(f.elements() for f in self.factors))

    def normalize(self, value):
        if isinstance(value, list):
            value = tuple(value)
        if not isinstance(value, tuple) or len(value) != len(self.factors):
            raise RingError(f"tuple of {len(self.factors)} components expected, got {value!r}")
        return tuple(f.normalize(v) for f, v in zip(self.factors, value))

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def add(self, x, y):
        return tuple(f.add(a, b) for f, a, b in zip(self.factors, x, y))

    def neg(self, x):
        return tuple(f.neg(a) for f, a in zip(self.factors, x))

    def mul(self, x, y):
        return tuple(f.mul(a, b) for f, a, b in zip(self.factors, x, y))

    def is_unit(self, x):
        return all(f.is_unit(a) for f, a in zip(self.factors, x))

    def inverse(self, x):
        if not self.is_unit(x):
            raise NotAUnitError(f"{x!r} is not a unit of {self.expression()}")
        return tuple(f.inverse(a) for f, a in zip(self.factors, x))

    def divides(self, d, a):
        return all(f.divides(di, ai) for f, di, ai in zip(self.factors, d, a))

    def divide_exact(self, a, d):
        return tuple(f.divide_exact(ai, di) for f, ai, di in zip(self.factors, a, d))

    def associate_unit(self, a, d):
        return tuple(f.associate_unit(ai, di) for f, ai, di in zip(self.factors, a, d))

    def bezout_raw(self, a, b):
        ds, xs, ys, a0s, b0s = [], [], [], [], []
        for f, ai, bi in zip(self.factors, a, b):
            if ai == f.zero and bi == f.zero:
                # zero-pair component: d=0 still admits a refined certificate
                di, xi, yi, a0i, b0i = f.zero, f.one, f.zero, f.one, f.zero
            else:
                di, xi, yi, a0i, b0i = f.bezout_raw(ai, bi)
            ds.append(di)
            xs.append(xi)
            ys.append(yi)
            a0s.append(a0i)
            b0s.append(b0i)
        return tuple(ds), tuple(xs), tuple(ys), tuple(a0s), tuple(b0s)

    def value_to_json(self, v):
        return [f.value_to_json(c) for f, c in zip(self.factors, v)]

    def value_from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != len(self.factors):
            raise RingError(f"array of {len(self.factors)} components expected, got {obj!r}")
        return tuple(f.value_from_json(c) for f, c in zip(self.factors, obj))


class TrivialExtensionRing(Ring):
    """Trivial extension of a base ring by a module of square-zero elements.

    Values are pairs ``(a, e)`` multiplying as ``(a, e)(b, f) = (ab, af + be)``,
    so the pairs ``(0, e)`` form an ideal that squares to zero.  The module is
    either the base ring acting on itself (``module="self"``) or the rationals
    over the integer base (``module="rationals"``); the latter is the one
    instance with total Bezout certificates.
    """

    kind = "trivial-extension"

    MODULE_SELF = "self"
    MODULE_RATIONALS = "rationals"

    def __init__(self, base: Ring, module: str):
        if module not in (self.MODULE_SELF, self.MODULE_RATIONALS):
            raise RingError(f"unknown module kind {module!r}")
        if module == self.MODULE_RATIONALS and not isinstance(base, IntegerRing):
            raise RingError("module-kind rationals requires the integer base ring")
        self.base = base
        self.module = module

    def _key(self):
        return (self.kind, self.base._key(), self.module)

    def expression(self) -> str:
        tag = "q" if self.module == self.MODULE_RATIONALS else "self"
        return f"text:{self.base.expression()},{tag}"

    @property
    def finite(self) -> bool:
        return self.module == self.MODULE_SELF and self.base.finite

    @property
    def bezout_total(self) -> bool:
        # With module "self" two-generated ideals need not be principal
        # (e.g. the pair ((2,0),(0,1)) over a Z/4 base), so only the
        # rational-module instance carries total certificates.
        return self.module == self.MODULE_RATIONALS

    def cardinality(self):
        if not self.finite:
            raise InfiniteRingError(f"{self.expression()} is not a finite ring")
        return self.base.cardinality() ** 2

    def elements(self):
        if not self.finite:
            raise InfiniteRingError(f"{self.expression()} is not enumerable")
        return itertools.product(self.base.elements(), repeat=2)

    # module scalar helpers -------------------------------------------------

    def _madd(self, e, f):
        if self.module == self.MODULE_RATIONALS:
            return e + f
        return self.base.add(e, f)

    def _mscale(self, a, e):
        if self.module == self.MODULE_RATIONALS:
            return Fraction(a) * e
        return self.base.mul(a, e)

    def _mzero(self):
        return Fraction(0) if self.module == self.MODULE_RATIONALS else self.base.zero

    def normalize(self, value):
        if isinstance(value, list):
            value = tuple(value)
        if not isinstance(value, tuple) or len(value) != 2:
            raise RingError(f"pair (a, e) expected, got {value!r}")
        a, e = value
        a = self.base.normalize(a)
        if self.module == self.MODULE_RATIONALS:
            if isinstance(e, int) and not isinstance(e, bool):
                e = Fraction(e)
            if not isinstance(e, Fraction):
                raise RingError(f"rational module component expected, got {e!r}")
        else:
            e = self.base.normalize(e)
        return (a, e)

    @property
    def zero(self):
        return (self.base.zero, self._mzero())

    @property
    def one(self):
        return (self.base.one, self._mzero())

    def add(self, x, y):
        return (self.base.add(x[0], y[0]), self._madd(x[1], y[1]))

    def neg(self, x):
        if self.module == self.MODULE_RATIONALS:
            return (self.base.neg(x[0]), -x[1])
        return (self.base.neg(x[0]), self.base.neg(x[1]))

    def mul(self, x, y):
        (a, e), (b, f) = x, y
        return (self.base.mul(a, b), self._madd(self._mscale(a, f), self._mscale(b, e)))

    def is_unit(self, x):
        return self.base.is_unit(x[0])

    def inverse(self, x):
        if not self.is_unit(x):
            raise NotAUnitError(f"{x!r} is not a unit of {self.expression()}")
        v = self.base.inverse(x[0])
        vv = self.base.mul(v, v)
        if self.module == self.MODULE_RATIONALS:
            return (v, -Fraction(vv) * x[1])
        return (v, self.base.neg(self.base.mul(vv, x[1])))

    # divisibility (rational module over Z) ---------------------------------

    def _require_rationals(self, op: str):
        if self.module != self.MODULE_RATIONALS:
            raise UnsupportedOperationError(
                f"{op} is not supported in {self.expression()}")

    def divides(self, d, a):
        if self.module == self.MODULE_SELF:
            if self.finite:
                return any(self.mul(d, q) == a for q in self.elements())
            try:
                self.divide_exact(a, d)
                return True
            except NonDivisibleError:
                return False
        (md, qd), (ma, qa) = d, a
        if md != 0:
            return ma % md == 0
        if ma != 0:
            return False
        if qd == 0:
            return qa == 0
        return (qa / qd).denominator == 1

    def divide_exact(self, a, d):
        if self.module == self.MODULE_SELF:
            if self.finite:
                for q in self.elements():  # enumeration order = deterministic choice
                    if self.mul(d, q) == a:
                        return q
                raise NonDivisibleError(
                    f"{d!r} does not divide {a!r} in {self.expression()}")
            # infinite base: the base quotient determines the pair
            base = self.base
            (ma, ea), (md, ed) = a, d
            if md != base.zero:
                k = base.divide_exact(ma, md)
                r = base.divide_exact(base.sub(ea, base.mul(ed, k)), md)
                return (k, r)
            if ma != base.zero or (ed == base.zero and ea != base.zero):
                raise NonDivisibleError(
                    f"{d!r} does not divide {a!r} in {self.expression()}")
            if ed == base.zero:
                return self.zero
            return (base.divide_exact(ea, ed), base.zero)
        self._require_rationals("exact division")
        (ma, qa), (md, qd) = a, d
        if md != 0:
            if ma % md != 0:
                raise NonDivisibleError(f"{d!r} does not divide {a!r} in {self.expression()}")
            k = ma // md
            return (k, (qa - qd * k) / md)
        if ma != 0 or (qd == 0 and qa != 0):
            raise NonDivisibleError(f"{d!r} does not divide {a!r} in {self.expression()}")
        if qd == 0:
            return self.zero
        k = qa / qd
        if k.denominator != 1:
            raise NonDivisibleError(f"{d!r} does not divide {a!r} in {self.expression()}")
        return (int(k), Fraction(0))

    def bezout_raw(self, a, b):
        self._require_rationals("bezout certificates")
        (ma, qa), (mb, qb) = a, b
        g, alpha, beta = _egcd(ma, mb)
        if g != 0:
            d = (g, Fraction(0))
            # the divisible module absorbs the stray second coordinate
            h = qa * alpha + qb * beta
            if ma != 0:
                x = (alpha, -h / ma)
                y = (beta, Fraction(0))
            else:
                x = (alpha, Fraction(0))
                y = (beta, -h / mb)
            a0 = self.divide_exact(a, d)
            b0 = self.divide_exact(b, d)
            return d, x, y, a0, b0
        # both base components vanish: the pair lives in the square-zero ideal
        c = _rational_gcd(qa, qb)
        d = (0, c)
        ea = qa / c
        eb = qb / c
        _, m1, m2 = _egcd(int(ea), int(eb))
        x = (m1, Fraction(0))
        y = (m2, Fraction(0))
        a0 = (int(ea), Fraction(0))
        b0 = (int(eb), Fraction(0))
        return d, x, y, a0, b0

    def associate_unit(self, a, d):
        if self.module == self.MODULE_SELF and self.finite:
            if a == d:
                return self.one
            for u in self.elements():
                if self.is_unit(u) and self.mul(d, u) == a:
                    return u
            raise NotAssociatesError(
                f"{a!r} and {d!r} are not associates in {self.expression()}")
        return super().associate_unit(a, d)

    def canonical_associate(self, a):
        if self.module == self.MODULE_RATIONALS:
            m, q = a
            if m != 0:
                return (abs(m), Fraction(0))
            return (0, abs(q))
        if a == self.zero:
            return self.zero
        if self.finite:
            for b in self.elements():
                if any(self.is_unit(u) and self.mul(a, u) == b for u in self.elements()):
                    return b
            raise RingError("internal: element has no associates")  # pragma: no cover
        if isinstance(self.base, IntegerRing):
            m, e = a
            if m != 0:
                am = abs(m)
                return (am, e % am if m > 0 else (-e) % am)
            return (0, abs(e))
        raise UnsupportedOperationError(
            f"no canonical associates in {self.expression()}")

    def search_order(self):
        if self.finite:
            yield from self.elements()
            return
        for k in self.base.search_order():
            yield (k, self._mzero())

    def residues_mod(self, c):
        self._require_rationals("residue enumeration")
        m = c[0]
        if m == 0:
            raise UnsupportedOperationError(
                f"no finite residue system modulo {c!r} in {self.expression()}")
        return iter([(k, Fraction(0)) for k in range(abs(m))])

    def value_to_json(self, v):
        if self.module == self.MODULE_RATIONALS:
            return [v[0], _fraction_to_json(v[1])]
        return [self.base.value_to_json(v[0]), self.base.value_to_json(v[1])]

    def value_from_json(self, obj):
        if not isinstance(obj, list) or len(obj) != 2:
            raise RingError(f"two-element array expected, got {obj!r}")
        if self.module == self.MODULE_RATIONALS:
            return (_int_from_json(obj[0], "base component"),
                    _fraction_from_json(obj[1], "module component"))
        return (self.base.value_from_json(obj[0]), self.base.value_from_json(obj[1]))


class TruncatedSeriesRing(Ring):
    """Series with integer constant term and rational tail, truncated at x^order.

    This is the quotient of {a0 + a1 x + ... : a0 integer, ai rational} by the
    ideal of terms beyond x^order, so all ring axioms hold exactly.  Values are
    pairs ``(constant, coeffs)`` where ``coeffs[i]`` is the coefficient of
    ``x^(i+1)``, trailing zeros stripped.  Bezout certificates exist here only
    when at least one operand has a nonzero constant term (that operand is then
    a unit multiple of its constant); other pairs are rejected.
    """

    kind = "truncated-series"

    def __init__(self, order: int = 8):
        if not isinstance(order, int) or order < 1:
            raise RingError(f"truncation order must be >= 1, got {order!r}")
        self.order = order

    def _key(self):
        return (self.kind, self.order)

    def expression(self) -> str:
        return f"series:{self.order}"

    @property
    def bezout_total(self) -> bool:
        return False

    def normalize(self, value):
        if isinstance(value, list):
            value = tuple(value)
        if not isinstance(value, tuple) or len(value) != 2:
            raise RingError(f"(constant, coeffs) pair expected, got {value!r}")
        c, coeffs = value
        if isinstance(c, bool) or not isinstance(c, int):
            raise RingError(f"integer constant term expected, got {c!r}")
        coeffs = list(coeffs)[: self.order]
        out = []
        for q in coeffs:
            if isinstance(q, int) and not isinstance(q, bool):
                q = Fraction(q)
            if not isinstance(q, Fraction):
                raise RingError(f"rational coefficient expected, got {q!r}")
            out.append(q)
        while out and out[-1] == 0:
            out.pop()
        return (c, tuple(out))

    @property
    def zero(self):
        return (0, ())

    @property
    def one(self):
        return (1, ())

    def _coeff(self, v, k: int) -> Fraction:
        if k == 0:
            return Fraction(v[0])
        return v[1][k - 1] if k - 1 < len(v[1]) else Fraction(0)

    def add(self, x, y):
        n = max(len(x[1]), len(y[1]))
        coeffs = tuple(self._coeff(x, k) + self._coeff(y, k) for k in range(1, n + 1))
        return self.normalize((x[0] + y[0], coeffs))

    def neg(self, x):
        return (-x[0], tuple(-q for q in x[1]))

    def mul(self, x, y):
        const = x[0] * y[0]
        coeffs = []
        for k in range(1, self.order + 1):
            coeffs.append(sum((self._coeff(x, i) * self._coeff(y, k - i)
                               for i in range(k + 1)), Fraction(0)))
        return self.normalize((const, tuple(coeffs)))

    def is_unit(self, x):
        return x[0] in (1, -1)

    def inverse(self, x):
        if not self.is_unit(x):
            raise NotAUnitError(f"{x!r} is not a unit of {self.expression()}")
        b = [Fraction(x[0])]  # constant +-1 is its own inverse
        for k in range(1, self.order + 1):
            b.append(-b[0] * sum((self._coeff(x, i) * b[k - i] for i in range(1, k + 1)),
                                 Fraction(0)))
        return self.normalize((int(b[0]), tuple(b[1:])))

    def _lowest(self, x) -> int | None:
        if x[0] != 0:
            return 0
        for i, q in enumerate(x[1]):
            if q != 0:
                return i + 1
        return None

    def divides(self, d, a):
        try:
            self.divide_exact(a, d)
            return True
        except NonDivisibleError:
            return False

    def divide_exact(self, a, d):
        ld = self._lowest(d)
        if ld is None:
            if self._lowest(a) is not None:
                raise NonDivisibleError(f"{d!r} does not divide {a!r} in {self.expression()}")
            return self.zero
        la = self._lowest(a)
        if la is None:
            return self.zero
        if la < ld:
            raise NonDivisibleError(f"{d!r} does not divide {a!r} in {self.expression()}")
        # long division of the shifted series; the quotient's constant term
        # must land back in Z for the division to be exact in this ring
        da = [self._coeff(a, k) for k in range(la, self.order + 1)]
        dd = [self._coeff(d, k) for k in range(ld, self.order + 1)]
        qlen = self.order + 1 - la
        q = []
        rem = list(da)
        for i in range(qlen):
            qi = rem[i] / dd[0]
            q.append(qi)
            for j in range(len(dd)):
                if i + j < len(rem):
                    rem[i + j] -= qi * dd[j]
        shift = la - ld
        full = [Fraction(0)] * shift + q
        full = full[: self.order + 1]
        if full[0].denominator != 1:
            raise NonDivisibleError(f"{d!r} does not divide {a!r} in {self.expression()}")
        value = self.normalize((int(full[0]), tuple(full[1:])))
        if self.mul(d, value) != self.normalize(a):
            raise NonDivisibleError(f"{d!r} does not divide {a!r} in {self.expression()}")
        return value

    def bezout_raw(self, a, b):
        if a[0] == 0 and b[0] == 0:
            raise UnsupportedOperationError(
                "bezout certificates in a truncated-series ring need an operand "
                "with nonzero constant term")
        if a[0] == 0:
            d, y, x, b0, a0 = self.bezout_raw(b, a)
            return d, x, y, a0, b0
        g, alpha, beta = _egcd(a[0], b[0])
        d = (g, ())
        u = self.divide_exact(a, (a[0], ()))  # unit cofactor 1 + x*(...)
        t = self.sub(d, self.mul(b, (beta, ())))
        x = self.mul(self.inverse(u), self.divide_exact(t, (a[0], ())))
        y = (beta, ())
        a0 = self.divide_exact(a, d)
        b0 = self.divide_exact(b, d)
        return d, x, y, a0, b0

    def canonical_associate(self, a):
        low = self._lowest(a)
        if low is None:
            return self.zero
        if low == 0:
            return (abs(a[0]), ())
        coeffs = [Fraction(0)] * (low - 1) + [abs(self._coeff(a, low))]
        return self.normalize((0, tuple(coeffs)))

    def search_order(self):
        for k in IntegerRing().search_order():
            yield (k, ())

    def residues_mod(self, c):
        if c[0] == 0:
            raise UnsupportedOperationError(
                f"no finite residue system modulo {c!r} in {self.expression()}")
        return iter([(k, ()) for k in range(abs(c[0]))])

    def value_to_json(self, v):
        return {"constant": v[0], "coeffs": [_fraction_to_json(q) for q in v[1]]}

    def value_from_json(self, obj):
        if not isinstance(obj, dict) or set(obj) - {"constant", "coeffs"}:
            raise RingError(f"series object {{constant, coeffs}} expected, got {obj!r}")
        const = _int_from_json(obj.get("constant", 0), "series constant")
        coeffs = obj.get("coeffs", [])
        if not isinstance(coeffs, list):
            raise RingError(f"series coeffs array expected, got {coeffs!r}")
        return self.normalize(
            (const, tuple(_fraction_from_json(q, "series coefficient") for q in coeffs)))


# ---------------------------------------------------------------------------
# elements and certificates


class RingElement:
    """An exact value tagged with its ring; arithmetic requires equal rings."""

    __slots__ = ("ring", "value")

    def __init__(self, ring: Ring, value: Any):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "value", ring.normalize(value))

    def __setattr__(self, *_):
        raise AttributeError("RingElement is immutable")

    def _coerce(self, other: "RingElement") -> "RingElement":
        if not isinstance(other, RingElement):
            raise RingMismatchError(f"cannot combine {self!r} with {other!r}")
        if other.ring != self.ring:
            raise RingMismatchError(
                f"descriptor mismatch: {self.ring.expression()} vs {other.ring.expression()}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return _raw(self.ring, self.ring.add(self.value, other.value))

    def __sub__(self, other):
        other = self._coerce(other)
        return _raw(self.ring, self.ring.sub(self.value, other.value))

    def __mul__(self, other):
        other = self._coerce(other)
        return _raw(self.ring, self.ring.mul(self.value, other.value))

    def __neg__(self):
        return _raw(self.ring, self.ring.neg(self.value))

    def __eq__(self, other):
        return (isinstance(other, RingElement) and self.ring == other.ring
                and self.value == other.value)

    def __hash__(self):
        return hash((self.ring, self.value))

    def is_zero(self) -> bool:
        return self.value == self.ring.zero

    def is_one(self) -> bool:
        return self.value == self.ring.one

    def __repr__(self):
        return f"RingElement({self.ring.expression()}, {self.value!r})"


def _raw(ring: Ring, value: Any) -> RingElement:
    # internal constructor for values already in normal form
    el = object.__new__(RingElement)
    object.__setattr__(el, "ring", ring)
    object.__setattr__(el, "value", value)
    return el


def element(ring: Ring, value: Any) -> RingElement:
    return RingElement(ring, value)


def zero(ring: Ring) -> RingElement:
    return _raw(ring, ring.zero)


def one(ring: Ring) -> RingElement:
    return _raw(ring, ring.one)


@dataclass(frozen=True)
class BezoutCertificate:
    """Witness for aR + bR = dR, refined so that a0*x + b0*y = 1.

    ``degenerate`` marks the zero-ideal pair (0, 0), where the refined
    identity is waived and callers are expected to branch explicitly.
    """

    a: RingElement
    b: RingElement
    d: RingElement
    x: RingElement
    y: RingElement
    a0: RingElement
    b0: RingElement
    degenerate: bool = False

    @property
    def ring(self) -> Ring:
        return self.d.ring

    def verify(self) -> bool:
        a, b, d, x, y, a0, b0 = self.a, self.b, self.d, self.x, self.y, self.a0, self.b0
        if a * x + b * y != d:
            return False
        if d * a0 != a or d * b0 != b:
            return False
        if self.degenerate:
            return a.is_zero() and b.is_zero() and d.is_zero()
        return (a0 * x + b0 * y).is_one()


def _same_ring(*els: RingElement) -> Ring:
    ring = els[0].ring
    for e in els[1:]:
        if e.ring != ring:
            raise RingMismatchError(
                f"descriptor mismatch: {ring.expression()} vs {e.ring.expression()}")
    return ring


def arithmetic(a: RingElement, b: RingElement, op: str) -> RingElement:
    """Dispatch add/sub/mul by name on two elements of one ring."""
    _same_ring(a, b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise RingError(f"unknown arithmetic op {op!r}")


def is_unit(a: RingElement) -> bool:
    return a.ring.is_unit(a.value)


def inverse(a: RingElement) -> RingElement:
    return _raw(a.ring, a.ring.inverse(a.value))


def bezout(a: RingElement, b: RingElement) -> BezoutCertificate:
    """Bezout certificate for the ideal aR + bR; see BezoutCertificate."""
    ring = _same_ring(a, b)
    if a.is_zero() and b.is_zero():
        return BezoutCertificate(a, b, zero(ring), one(ring), zero(ring),
                                 zero(ring), zero(ring), degenerate=True)
    d, x, y, a0, b0 = ring.bezout_raw(a.value, b.value)
    return BezoutCertificate(a, b, _raw(ring, d), _raw(ring, x), _raw(ring, y),
                             _raw(ring, a0), _raw(ring, b0))


def divides(d: RingElement, a: RingElement) -> bool:
    _same_ring(d, a)
    return d.ring.divides(d.value, a.value)


def divide_exact(a: RingElement, d: RingElement) -> RingElement:
    _same_ring(a, d)
    return _raw(a.ring, a.ring.divide_exact(a.value, d.value))


def associate_unit(a: RingElement, d: RingElement) -> RingElement:
    _same_ring(a, d)
    return _raw(a.ring, a.ring.associate_unit(a.value, d.value))


def canonical_associate(a: RingElement) -> RingElement:
    return _raw(a.ring, a.ring.canonical_associate(a.value))


def enumerate_elements(ring: Ring) -> Iterator[RingElement]:
    """All elements of a finite ring, each exactly once, deterministic order."""
    for v in ring.elements():
        yield _raw(ring, v)


def cardinality(ring: Ring) -> int:
    return ring.cardinality()
