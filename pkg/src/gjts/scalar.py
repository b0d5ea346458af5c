"""Exact arithmetic in the biquadratic field Q(sqrt2, sqrt3).

An element is stored as ``(n0 + n1*sqrt2 + n2*sqrt3 + n3*sqrt6) / den`` with
integer numerators, a positive denominator and ``gcd(n0, .., n3, den) == 1``.
That normal form is unique, so equality and hashing are structural.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Iterable, Union

__all__ = ["Scalar", "ZERO", "ONE", "SQRT2", "SQRT3", "SQRT6", "as_scalar"]

ScalarLike = Union["Scalar", int, Fraction]

_RADICALS = ("", "√2", "√3", "√6")


def _normalize(n0: int, n1: int, n2: int, n3: int, den: int) -> tuple[tuple[int, int, int, int], int]:
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        n0, n1, n2, n3, den = -n0, -n1, -n2, -n3, -den
    g = gcd(gcd(gcd(n0, n1), gcd(n2, n3)), den)
    if g > 1:
        n0, n1, n2, n3, den = n0 // g, n1 // g, n2 // g, n3 // g, den // g
    return (n0, n1, n2, n3), den


class Scalar:
    """Immutable element ``a + b√2 + c√3 + d√6`` with rational a, b, c, d."""

    __slots__ = ("_n", "_d", "_hash")

    def __init__(self, a: ScalarLike = 0, b: ScalarLike = 0, c: ScalarLike = 0, d: ScalarLike = 0) -> None:
        fa, fb, fc, fd = (Fraction(v) for v in (a, b, c, d))
        den = fa.denominator * fb.denominator * fc.denominator * fd.denominator
        nums = (
            fa.numerator * (den // fa.denominator),
            fb.numerator * (den // fb.denominator),
            fc.numerator * (den // fc.denominator),
            fd.numerator * (den // fd.denominator),
        )
        self._n, self._d = _normalize(*nums, den)
        self._hash = None

    @classmethod
    def _raw(cls, n: tuple[int, int, int, int], d: int) -> Scalar:
        obj = object.__new__(cls)
        obj._n, obj._d = _normalize(*n, d)
        obj._hash = None
        return obj

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[ScalarLike]) -> Scalar:
        coeffs = list(coeffs)
        if len(coeffs) != 4:
            raise ValueError(f"expected 4 coefficients, got {len(coeffs)}")
        return cls(*coeffs)

    # -- accessors -----------------------------------------------------------

    @property
    def a(self) -> Fraction:
        return Fraction(self._n[0], self._d)

    @property
    def b(self) -> Fraction:
        return Fraction(self._n[1], self._d)

    @property
    def c(self) -> Fraction:
        return Fraction(self._n[2], self._d)

    @property
    def d(self) -> Fraction:
        return Fraction(self._n[3], self._d)

    @property
    def coefficients(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(n, self._d) for n in self._n)

    @property
    def numerators(self) -> tuple[int, int, int, int]:
        return self._n

    @property
    def denominator(self) -> int:
        return self._d

    def is_zero(self) -> bool:
        return not any(self._n)

    def is_rational(self) -> bool:
        n = self._n
        return n[1] == 0 and n[2] == 0 and n[3] == 0

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return Fraction(self._n[0], self._d)

    def __bool__(self) -> bool:
        return any(self._n)

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: ScalarLike) -> Scalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._d, o._d
        if d1 == d2:
            a, b = self._n, o._n
            return Scalar._raw((a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]), d1)
        a, b = self._n, o._n
        return Scalar._raw(
            (a[0] * d2 + b[0] * d1, a[1] * d2 + b[1] * d1, a[2] * d2 + b[2] * d1, a[3] * d2 + b[3] * d1),
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        n = self._n
        obj = object.__new__(Scalar)
        obj._n, obj._d, obj._hash = (-n[0], -n[1], -n[2], -n[3]), self._d, None
        return obj

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other: ScalarLike) -> Scalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: ScalarLike) -> Scalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other: ScalarLike) -> Scalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a0, a1, a2, a3 = self._n
        b0, b1, b2, b3 = o._n
        if not (b1 or b2 or b3):
            n = (a0 * b0, a1 * b0, a2 * b0, a3 * b0)
        elif not (a1 or a2 or a3):
            n = (a0 * b0, a0 * b1, a0 * b2, a0 * b3)
        else:
            n = (
                a0 * b0 + 2 * a1 * b1 + 3 * a2 * b2 + 6 * a3 * b3,
                a0 * b1 + a1 * b0 + 3 * (a2 * b3 + a3 * b2),
                a0 * b2 + a2 * b0 + 2 * (a1 * b3 + a3 * b1),
                a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
            )
        return Scalar._raw(n, self._d * o._d)

    __rmul__ = __mul__

    def conjugate(self, flip_sqrt2: bool, flip_sqrt3: bool) -> Scalar:
        """Galois conjugate: sends √2 to -√2 and/or √3 to -√3."""
        n0, n1, n2, n3 = self._n
        if flip_sqrt2:
            n1, n3 = -n1, -n3
        if flip_sqrt3:
            n2, n3 = -n2, -n3
        return Scalar._raw((n0, n1, n2, n3), self._d)

    def norm(self) -> Fraction:
        """Field norm down to Q: the product of the four conjugates."""
        p = self * self.conjugate(True, False) * self.conjugate(False, True) * self.conjugate(True, True)
        return p.to_fraction()

    def inverse(self) -> Scalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        if self.is_rational():
            return Scalar._raw((self._d, 0, 0, 0), self._n[0])
        others = self.conjugate(True, False) * self.conjugate(False, True) * self.conjugate(True, True)
        nrm = (self * others).to_fraction()
        return others * Scalar(1 / nrm)

    def __truediv__(self, other: ScalarLike) -> Scalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: ScalarLike) -> Scalar:
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> Scalar:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing ------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return self._d == other._d and self._n == other._n
        if isinstance(other, (int, Rational)):
            return self.is_rational() and Fraction(self._n[0], self._d) == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._n[0], self._d))
            else:
                self._hash = hash((self._n, self._d))
        return self._hash

    # -- text forms ----------------------------------------------------------

    def to_json(self) -> list[str]:
        """Serialize as ``[c1, c√2, c√3, c√6]`` of ``"p/q"`` strings."""
        return [_frac_text(Fraction(n, self._d)) for n in self._n]

    @classmethod
    def from_json(cls, value) -> Scalar:
        if isinstance(value, (int, str)) and not isinstance(value, bool):
            return cls(Fraction(value))
        if not isinstance(value, (list, tuple)) or len(value) != 4:
            raise ValueError(f"scalar must be a 4-array of rationals, got {value!r}")
        coeffs = []
        for v in value:
            if isinstance(v, bool) or not isinstance(v, (str, int)):
                raise ValueError(f"rational must be a string 'p/q' or integer, got {v!r}")
            coeffs.append(Fraction(v))
        return cls(*coeffs)

    def __str__(self) -> str:
        terms = []
        for coeff, rad in zip(self.coefficients, _RADICALS):
            if coeff == 0:
                continue
            if rad and abs(coeff) == 1:
                mag = rad
            elif rad:
                mag = f"{_frac_text(abs(coeff))}{rad}"
            else:
                mag = _frac_text(abs(coeff))
            if not terms:
                terms.append(mag if coeff > 0 else f"-{mag}")
            else:
                terms.append(f"+ {mag}" if coeff > 0 else f"- {mag}")
        return " ".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def _frac_text(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _coerce(x) -> Scalar | None:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, bool):
        return None
    if isinstance(x, int):
        return Scalar._raw((x, 0, 0, 0), 1)
    if isinstance(x, Rational):
        return Scalar._raw((int(x.numerator), 0, 0, 0), int(x.denominator))
    return None


def as_scalar(x: ScalarLike) -> Scalar:
    s = _coerce(x)
    if s is None:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar")
    return s


ZERO = Scalar()
ONE = Scalar(1)
SQRT2 = Scalar(0, 1)
SQRT3 = Scalar(0, 0, 1)
SQRT6 = Scalar(0, 0, 0, 1)
