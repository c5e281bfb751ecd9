"""Exact arithmetic in the real field Q(sqrt2, sqrt3, sqrt5).

Every value -cos(pi/m) with m in {2, 3, 4, 5, 6} lives here, so this is
enough for the geometric representation of any Coxeter graph whose labels
are drawn from {2, ..., 6, inf}.

Internally an element is ``(c_0 + c_1 r_1 + ... + c_7 r_7) / d`` with
integer ``c_k``, a positive integer ``d`` and ``gcd(c_0, ..., c_7, d) = 1``.
Slot ``k`` is a bitmask over the primes (2, 3, 5); ``r_k`` is the square
root of the product of the primes in the mask.  The bitmask layout makes
multiplication a XOR: ``r_i * r_j = RADICAND[i & j] * r_{i ^ j}``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from math import gcd, isqrt
from numbers import Rational
from typing import Iterable

from .errors import UnsupportedLabel

# bitmask slot -> radicand
RADICAND = (1, 2, 3, 6, 5, 10, 15, 30)
# public coordinate order {1, r2, r3, r5, r6, r10, r15, r30} -> bitmask slot
_PUBLIC_TO_SLOT = (0, 1, 2, 4, 3, 5, 6, 7)
_SLOT_OF_RADICAND = {r: k for k, r in enumerate(RADICAND)}
_SQRT_FLOAT = tuple(math.sqrt(r) for r in RADICAND)
_NAMES = ("1", "r2", "r3", "r6", "r5", "r10", "r15", "r30")

NEGATIVE, ZERO, POSITIVE = -1, 0, 1


class FieldElem:
    __slots__ = ("_c", "_d", "_nz", "_hash", "_sign")

    def __init__(self, value: int | Rational | FieldElem = 0) -> None:
        if isinstance(value, FieldElem):
            self._c, self._d, self._nz = value._c, value._d, value._nz
        else:
            q = Fraction(value)
            c = (q.numerator, 0, 0, 0, 0, 0, 0, 0)
            self._c, self._d = c, q.denominator
            self._nz = (0,) if q.numerator else ()
        self._hash = None
        self._sign = None

    @classmethod
    def _raw(cls, c: tuple[int, ...], d: int, nz: tuple[int, ...]) -> FieldElem:
        obj = object.__new__(cls)
        obj._c, obj._d, obj._nz = c, d, nz
        obj._hash = None
        obj._sign = None
        return obj

    @classmethod
    def _make(cls, c: list[int], d: int) -> FieldElem:
        nz = tuple(k for k in range(8) if c[k])
        if not nz:
            return ZERO_ELEM
        if d < 0:
            c = [-x for x in c]
            d = -d
        g = d
        for k in nz:
            g = gcd(g, c[k])
            if g == 1:
                break
        if g != 1:
            c = [x // g for x in c]
            d //= g
        return cls._raw(tuple(c), d, nz)

    @classmethod
    def from_coords(cls, coords: Iterable[int | Rational]) -> FieldElem:
        """Build from 8 rationals over the basis {1, r2, r3, r5, r6, r10, r15, r30}."""
        qs = [Fraction(x) for x in coords]
        if len(qs) != 8:
            raise ValueError("expected 8 coordinates")
        d = math.lcm(*(q.denominator for q in qs))
        c = [0] * 8
        for pub, q in enumerate(qs):
            c[_PUBLIC_TO_SLOT[pub]] = q.numerator * (d // q.denominator)
        return cls._make(c, d)

    @classmethod
    def sqrt(cls, n: int) -> FieldElem:
        """Square root of a squarefree n dividing 30."""
        try:
            slot = _SLOT_OF_RADICAND[n]
        except KeyError:
            raise ValueError(f"sqrt({n}) is not a basis element") from None
        c = [0] * 8
        c[slot] = 1
        return cls._make(c, 1)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(self._c[_PUBLIC_TO_SLOT[p]], self._d) for p in range(8))

    def is_zero(self) -> bool:
        return not self._nz

    def is_rational(self) -> bool:
        return self._nz in ((), (0,))

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self._c[0], self._d)

    # arithmetic ------------------------------------------------------------

    def __add__(self, other: object) -> FieldElem:
        if not isinstance(other, FieldElem):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            other = FieldElem(other)
        if not other._nz:
            return self
        if not self._nz:
            return other
        a, b = self._c, other._c
        if self._d == other._d:
            return FieldElem._make([a[k] + b[k] for k in range(8)], self._d)
        da, db = self._d, other._d
        return FieldElem._make([a[k] * db + b[k] * da for k in range(8)], da * db)

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        if not self._nz:
            return self
        return FieldElem._raw(tuple(-x for x in self._c), self._d, self._nz)

    def __sub__(self, other: object) -> FieldElem:
        if not isinstance(other, FieldElem):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            other = FieldElem(other)
        if not other._nz:
            return self
        if not self._nz:
            return -other
        a, b = self._c, other._c
        if self._d == other._d:
            return FieldElem._make([a[k] - b[k] for k in range(8)], self._d)
        da, db = self._d, other._d
        return FieldElem._make([a[k] * db - b[k] * da for k in range(8)], da * db)

    def __rsub__(self, other: object) -> FieldElem:
        return (-self) + other

    def __mul__(self, other: object) -> FieldElem:
        if not isinstance(other, FieldElem):
            if isinstance(other, int):
                if other == 1:
                    return self
                return FieldElem._make([x * other for x in self._c], self._d)
            if not isinstance(other, Rational):
                return NotImplemented
            other = FieldElem(other)
        anz, bnz = self._nz, other._nz
        if not anz or not bnz:
            return ZERO_ELEM
        a, b = self._c, other._c
        if bnz == (0,):
            s = b[0]
            return FieldElem._make([x * s for x in a], self._d * other._d)
        if anz == (0,):
            s = a[0]
            return FieldElem._make([x * s for x in b], self._d * other._d)
        out = [0] * 8
        for i in anz:
            ai = a[i]
            for j in bnz:
                out[i ^ j] += ai * b[j] * RADICAND[i & j]
        return FieldElem._make(out, self._d * other._d)

    __rmul__ = __mul__

    def _conjugate(self, prime_bit: int) -> FieldElem:
        """Galois conjugate flipping the sign of sqrt(p) for the prime with this bit."""
        c = tuple(-x if k & prime_bit else x for k, x in enumerate(self._c))
        return FieldElem._raw(c, self._d, self._nz)

    def inverse(self) -> FieldElem:
        if not self._nz:
            raise ZeroDivisionError("inverse of zero in Q(sqrt2, sqrt3, sqrt5)")
        # multiply by conjugates one prime at a time until the value is rational
        num = FieldElem(1)
        x = self
        for bit in (1, 2, 4):
            conj = x._conjugate(bit)
            num = num * conj
            x = x * conj
        q = x.to_fraction()
        return num * (1 / q)

    def __truediv__(self, other: object) -> FieldElem:
        if not isinstance(other, FieldElem):
            if not isinstance(other, (int, Rational)):
                return NotImplemented
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __rtruediv__(self, other: object) -> FieldElem:
        return FieldElem(other) * self.inverse()  # type: ignore[arg-type]

    # comparison -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElem):
            return self._c == other._c and self._d == other._d
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self._c[0], self._d) == other
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            if self.is_rational():
                h = hash(Fraction(self._c[0], self._d))
            else:
                h = hash((self._c, self._d))
            self._hash = h
        return h

    def sign(self) -> int:
        """Exact sign: -1, 0 or 1."""
        s = self._sign
        if s is None:
            s = self._sign = _sign_of_numerator(self._c, self._nz)
        return s

    def compare(self, other: object) -> int:
        """Sign of ``self - other``."""
        if isinstance(other, FieldElem) and self._nz in ((), (0,)) and other._nz in ((), (0,)):
            a, b = self._c[0] * other._d, other._c[0] * self._d
            return (a > b) - (a < b)
        return (self - other).sign()  # type: ignore[operator]

    def approx(self) -> tuple[float, float]:
        """A float value and a bound on its absolute error."""
        val = mag = 0.0
        try:
            for k in self._nz:
                t = self._c[k] * _SQRT_FLOAT[k]
                val += t
                mag += abs(t)
            return val / self._d, mag / self._d * 1e-12
        except OverflowError:
            return 0.0, math.inf

    def __lt__(self, other: object) -> bool:
        return self.compare(other) < 0

    def __le__(self, other: object) -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: object) -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: object) -> bool:
        return self.compare(other) >= 0

    def __bool__(self) -> bool:
        return bool(self._nz)

    # rendering ----------------------------------------------------------------

    def __str__(self) -> str:
        return render(self)

    def __repr__(self) -> str:
        return f"FieldElem({render(self)!r})"


ZERO_ELEM = FieldElem._raw((0,) * 8, 1, ())
ONE = FieldElem(1)


def _sign_of_numerator(c: tuple[int, ...], nz: tuple[int, ...]) -> int:
    if not nz:
        return ZERO
    signs = {1 if c[k] > 0 else -1 for k in nz}
    if len(signs) == 1:
        return signs.pop()
    # The basis square roots are linearly independent over Q, so a nonzero
    # numerator is a nonzero real number and refinement terminates.
    bits = 32
    while True:
        scale = 1 << bits
        lo = hi = c[0] * scale
        for k in nz:
            if k == 0:
                continue
            r = isqrt(RADICAND[k] << (2 * bits))  # floor(sqrt(n) * 2^bits)
            ck = c[k]
            if ck > 0:
                lo += ck * r
                hi += ck * (r + 1)
            else:
                lo += ck * (r + 1)
                hi += ck * r
        if lo > 0:
            return POSITIVE
        if hi < 0:
            return NEGATIVE
        bits *= 2


def linear_combination(pairs: Iterable[tuple[FieldElem, FieldElem]]) -> FieldElem:
    """Sum of products ``a * b``, normalized once at the end."""
    num = [0] * 8
    den = 1
    for a, b in pairs:
        anz, bnz = a._nz, b._nz
        if not anz or not bnz:
            continue
        d = a._d * b._d
        if d != den:
            l = den * d // gcd(den, d)
            if l != den:
                f = l // den
                num = [x * f for x in num]
                den = l
            f = l // d
        else:
            f = 1
        ac, bc = a._c, b._c
        for i in anz:
            ai = ac[i] * f
            for j in bnz:
                num[i ^ j] += ai * bc[j] * RADICAND[i & j]
    return FieldElem._make(num, den)


def sign(x: FieldElem) -> int:
    return x.sign()


def cos_pi_over(m: int) -> FieldElem:
    """cos(pi/m) for m in {2, 3, 4, 5, 6}."""
    if m == 2:
        return ZERO_ELEM
    if m == 3:
        return FieldElem(Fraction(1, 2))
    if m == 4:
        return FieldElem.sqrt(2) / 2
    if m == 5:
        return (1 + FieldElem.sqrt(5)) / 4
    if m == 6:
        return FieldElem.sqrt(3) / 2
    raise UnsupportedLabel(m)


def render(x: FieldElem) -> str:
    """Text form ``a + b*r2 + c*r3 + d*r5 + e*r6 + f*r10 + g*r15 + h*r30``."""
    if x.is_zero():
        return "0"
    parts: list[str] = []
    for pub in range(8):
        slot = _PUBLIC_TO_SLOT[pub]
        q = Fraction(x._c[slot], x._d)
        if not q:
            continue
        neg = q < 0
        q = abs(q)
        if slot == 0:
            body = str(q)
        elif q == 1:
            body = _NAMES[slot]
        else:
            body = f"{q}*{_NAMES[slot]}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


_TERM = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)(?:\s*\*\s*(?=r))?)?(r\d+)?\s*")


def parse_field(text: str) -> FieldElem:
    """Inverse of :func:`render`; also accepts ``2*r5``, ``-r3``, ``3/4``."""
    s = text.strip()
    if not s:
        raise ValueError("empty field element")
    total = ZERO_ELEM
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or not (m.group(2) or m.group(3)) or (pos and not m.group(1)):
            raise ValueError(f"cannot parse field element {text!r}")
        coef = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(1) == "-":
            coef = -coef
        if m.group(3):
            term = FieldElem.sqrt(int(m.group(3)[1:])) * coef
        else:
            term = FieldElem(coef)
        total = total + term
        pos = m.end()
    return total
