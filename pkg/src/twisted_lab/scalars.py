"""Exact arithmetic in cyclotomic fields Q(zeta_m).

A :class:`CycScalar` is stored as integer numerators over one common
positive denominator, coefficients of 1, zeta, ..., zeta^(phi(m)-1).
Since Phi_m is monic with integer coefficients, reduction never introduces
new denominators, which keeps products cheap.  The ``coeffs`` view exposes
the same value as a vector of :class:`fractions.Fraction`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

from .errors import ConductorMismatch, DivisionByZero

Rational = Fraction
ScalarLike = Union["CycScalar", int, Fraction]


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


def _exact_div_monic(num: list[int], den: Sequence[int]) -> list[int]:
    # long division by a monic integer polynomial, low-first coefficients
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for i, di in enumerate(den):
                num[k - dn + i] -= c * di
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Phi_m as low-first integer coefficients, via x^m - 1 = prod_{d | m} Phi_d."""
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in _divisors(m):
        if d < m:
            poly = _exact_div_monic(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


class _Field:
    """Precomputed reduction data for one conductor."""

    def __init__(self, m: int):
        self.m = m
        self.poly = cyclotomic_polynomial(m)
        phi = self.phi = len(self.poly) - 1
        # powers[k] = x^k mod Phi_m for 0 <= k < max(m, 2*phi - 1)
        top = max(m, 2 * phi - 1)
        powers: list[tuple[int, ...]] = []
        cur = [1] + [0] * (phi - 1)
        for _ in range(top):
            powers.append(tuple(cur))
            lead = cur[-1]
            cur = [0] + cur[:-1]
            if lead:
                for i in range(phi):
                    cur[i] -= lead * self.poly[i]
        self.powers = powers
        self.reduce_rows = {k: powers[k] for k in range(phi, 2 * phi - 1)}
        # conj sends zeta^k to zeta^(m-k)
        self.conj_rows = [powers[(m - k) % m] for k in range(phi)]
        self.zero_num = (0,) * phi
        self.roots = [cmath.exp(2j * math.pi * k / m) for k in range(phi)]


@lru_cache(maxsize=None)
def _field(m: int) -> _Field:
    return _Field(m)


def _normalize(num: list[int], den: int) -> tuple[tuple[int, ...], int]:
    if den < 0:
        num = [-c for c in num]
        den = -den
    g = math.gcd(den, *num)
    if g == 0 or not any(num):
        return tuple(0 for _ in num), 1
    if g != 1:
        num = [c // g for c in num]
        den //= g
    return tuple(num), den


class CycScalar:
    """Element of Q(zeta_m); immutable and hashable."""

    __slots__ = ("conductor", "_num", "_den", "_hash")

    def __init__(self, conductor: int, coeffs: Iterable[Union[int, Fraction, str]] = ()):
        field = _field(conductor)
        fr = [Fraction(c) for c in coeffs]
        if len(fr) > field.phi:
            raise ValueError(f"expected at most {field.phi} coefficients for conductor {conductor}")
        fr += [Fraction(0)] * (field.phi - len(fr))
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        num, den = _normalize([int(c * den) for c in fr], den)
        self.conductor = conductor
        self._num = num
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, m: int, num, den: int) -> "CycScalar":
        num, den = _normalize(list(num), den)
        obj = object.__new__(cls)
        obj.conductor = m
        obj._num = num
        obj._den = den
        obj._hash = None
        return obj

    # -- construction helpers --
    @classmethod
    def from_rational(cls, m: int, value: Union[int, Fraction]) -> "CycScalar":
        value = Fraction(value)
        phi = _field(m).phi
        return cls._raw(m, (value.numerator,) + (0,) * (phi - 1), value.denominator)

    @classmethod
    def root(cls, m: int, k: int = 1) -> "CycScalar":
        field = _field(m)
        return cls._raw(m, field.powers[k % m], 1)

    # -- views --
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def sort_key(self) -> tuple:
        return (self._num, self._den)

    def height(self) -> int:
        return max(max(abs(c) for c in self._num), self._den)

    # -- arithmetic --
    def _coerce(self, other) -> "CycScalar":
        if isinstance(other, CycScalar):
            if other.conductor != self.conductor:
                raise ConductorMismatch(
                    f"conductors {self.conductor} and {other.conductor} differ",
                    left=self.conductor, right=other.conductor,
                )
            return other
        if isinstance(other, (int, Fraction)):
            return CycScalar.from_rational(self.conductor, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self._den == o._den:
            return CycScalar._raw(self.conductor, [a + b for a, b in zip(self._num, o._num)], self._den)
        return CycScalar._raw(
            self.conductor,
            [a * o._den + b * self._den for a, b in zip(self._num, o._num)],
            self._den * o._den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycScalar._raw(self.conductor, [-a for a in self._num], self._den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b = self._num, o._num
        phi = len(a)
        if phi == 1:
            return CycScalar._raw(self.conductor, (a[0] * b[0],), self._den * o._den)
        prod = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        rows = _field(self.conductor).reduce_rows
        for k in range(phi, 2 * phi - 1):
            c = prod[k]
            if c:
                for i, r in enumerate(rows[k]):
                    if r:
                        prod[i] += c * r
        return CycScalar._raw(self.conductor, prod[:phi], self._den * o._den)

    __rmul__ = __mul__

    def inv(self) -> "CycScalar":
        """Multiplicative inverse by extended Euclid against Phi_m."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return CycScalar.from_rational(self.conductor, 1 / self.coeffs[0])
        f = [Fraction(c) for c in _field(self.conductor).poly]
        s = _poly_inverse_mod(list(self.coeffs), f)
        return CycScalar(self.conductor, s)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = CycScalar.from_rational(self.conductor, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycScalar":
        rows = _field(self.conductor).conj_rows
        phi = len(self._num)
        out = [0] * phi
        for c, row in zip(self._num, rows):
            if c:
                for i, r in enumerate(row):
                    if r:
                        out[i] += c * r
        return CycScalar._raw(self.conductor, out, self._den)

    def embed(self) -> complex:
        roots = _field(self.conductor).roots
        total = sum((c * w for c, w in zip(self._num, roots) if c), 0j)
        return total / self._den

    # -- comparison / hashing --
    def __eq__(self, other) -> bool:
        if isinstance(other, CycScalar):
            return self.conductor == other.conductor and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._num[0], self._den) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._num[0], self._den))
            else:
                self._hash = hash((self.conductor, self._num, self._den))
        return self._hash

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __repr__(self) -> str:
        return f"CycScalar({self.conductor}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "z" if k == 1 else f"z^{k}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"({c})*{mono}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"

    # -- serialization --
    def to_json(self) -> dict:
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "CycScalar":
        return cls(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])


# -- polynomial helpers over Q (low-first lists of Fraction) --

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not a or len(a) < len(b):
        return [], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while a and len(a) >= len(b):
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        _trim(a)
    return q, a


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return _trim(out)


def _poly_inverse_mod(a: list, f: list) -> list:
    r0, r1 = _trim(list(f)), _trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    # r0 is a nonzero constant because f is irreducible
    c = r0[0]
    _, s = _poly_divmod([x / c for x in s0], f)
    return s


# -- functional surface --

def make_root(m: int) -> CycScalar:
    """Primitive m-th root of unity zeta_m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return CycScalar.root(m, 1)


def zero(m: int) -> CycScalar:
    return CycScalar._raw(m, _field(m).zero_num, 1)


def one(m: int) -> CycScalar:
    return CycScalar.from_rational(m, 1)


def cyc_add(a: CycScalar, b: CycScalar) -> CycScalar:
    return a + b


def cyc_mul(a: CycScalar, b: CycScalar) -> CycScalar:
    return a * b


def cyc_neg(a: CycScalar) -> CycScalar:
    return -a


def cyc_inv(a: CycScalar) -> CycScalar:
    return a.inv()


def cyc_conj(a: CycScalar) -> CycScalar:
    return a.conj()


def embed(a: CycScalar) -> complex:
    return a.embed()


def as_scalar(m: int, value: ScalarLike) -> CycScalar:
    if isinstance(value, CycScalar):
        if value.conductor != m:
            raise ConductorMismatch(f"expected conductor {m}, got {value.conductor}")
        return value
    return CycScalar.from_rational(m, value)


def format_rational(q: Fraction) -> str:
    return str(Fraction(q))
