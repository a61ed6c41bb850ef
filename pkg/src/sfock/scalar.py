"""Exact Gaussian-rational numbers.

A :class:`Scalar` stores ``(re + im*i) / den`` with integer ``re``, ``im``
and a positive integer ``den`` kept in lowest terms.  This is noticeably
faster than a pair of :class:`fractions.Fraction` objects, which matters for
the polynomial workloads in the rest of the package.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational


class Scalar:
    __slots__ = ("_a", "_b", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar) and im == 0:
            self._a, self._b, self._d = re._a, re._b, re._d
            return
        re = _as_fraction(re)
        im = _as_fraction(im)
        d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
        a = re.numerator * (d // re.denominator)
        b = im.numerator * (d // im.denominator)
        self._a, self._b, self._d = a, b, d

    @classmethod
    def _raw(cls, a: int, b: int, d: int) -> "Scalar":
        if d != 1:
            g = gcd(gcd(a, b), d)
            if g != 1:
                a //= g
                b //= g
                d //= g
        s = object.__new__(cls)
        s._a, s._b, s._d = a, b, d
        return s

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floating-point complex values are not exact")
        if isinstance(x, int):
            return cls._raw(x, 0, 1)
        return cls(x)

    # -- accessors ---------------------------------------------------------
    @property
    def re(self) -> Fraction:
        return Fraction(self._a, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._b, self._d)

    @property
    def parts(self) -> tuple[int, int, int]:
        """Raw ``(re_numerator, im_numerator, common_denominator)``."""
        return self._a, self._b, self._d

    def is_zero(self) -> bool:
        return self._a == 0 and self._b == 0

    def is_real(self) -> bool:
        return self._b == 0

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = other if other.__class__ is Scalar else _coerce_or_none(other)
        if o is None:
            return NotImplemented
        if self._d == o._d:
            return Scalar._raw(self._a + o._a, self._b + o._b, self._d)
        return Scalar._raw(self._a * o._d + o._a * self._d,
                           self._b * o._d + o._b * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        s = object.__new__(Scalar)
        s._a, s._b, s._d = -self._a, -self._b, self._d
        return s

    def __sub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = other if other.__class__ is Scalar else _coerce_or_none(other)
        if o is None:
            return NotImplemented
        a1, b1, d1 = self._a, self._b, self._d
        a2, b2, d2 = o._a, o._b, o._d
        if b1 == 0 and b2 == 0:
            return Scalar._raw(a1 * a2, 0, d1 * d2)
        return Scalar._raw(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        n = self._a * self._a + self._b * self._b
        if n == 0:
            raise ZeroDivisionError("Scalar division by zero")
        # (a+bi)/d inverted is d(a-bi)/(a^2+b^2)
        a, b = self._d * self._a, -self._d * self._b
        if n < 0:
            a, b, n = -a, -b, -n
        return Scalar._raw(a, b, n)

    def __truediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "Scalar":
        s = object.__new__(Scalar)
        s._a, s._b, s._d = self._a, -self._b, self._d
        return s

    def abs2(self) -> "Scalar":
        """``|x|^2 = x * conj(x)`` as a real Scalar."""
        return Scalar._raw(self._a * self._a + self._b * self._b, 0, self._d * self._d)

    # -- comparison / hashing ---------------------------------------------
    def __eq__(self, other):
        o = _coerce_or_none(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._d == o._d

    def __hash__(self):
        if self._b == 0:
            return hash(Fraction(self._a, self._d))
        return hash((self._a, self._b, self._d))

    def __bool__(self):
        return not self.is_zero()

    # -- text --------------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        re, im = self.re, self.im
        if im == 0:
            return str(re)
        if re == 0:
            return _imag_str(im)
        sign = "+" if im > 0 else "-"
        return f"({re}{sign}{_imag_str(abs(im))})"

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Parse the forms produced by :meth:`__str__` (``3/2``, ``-i``, ``(1/2-3i)``)."""
        t = text.strip().replace(" ", "")
        if t.startswith("(") and t.endswith(")"):
            t = t[1:-1]
        if not t.endswith("i"):
            return cls(Fraction(t))
        # split real and imaginary parts at the last sign not in leading position
        split = max(t.rfind("+", 1), t.rfind("-", 1))
        if split > 0 and t[split - 1] not in "eE/":
            re_txt, im_txt = t[:split], t[split:]
        else:
            re_txt, im_txt = "0", t
        im_txt = im_txt[:-1]
        if im_txt in ("", "+"):
            im = Fraction(1)
        elif im_txt == "-":
            im = Fraction(-1)
        else:
            im = Fraction(im_txt)
        return cls(Fraction(re_txt), im)

    def to_json(self) -> list[str]:
        return [str(self.re), str(self.im)]

    @classmethod
    def from_json(cls, data) -> "Scalar":
        return cls(Fraction(data[0]), Fraction(data[1]))


def _imag_str(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im}i"


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("floating-point values are not exact; pass a Fraction or str")
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def _coerce_or_none(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar._raw(x, 0, 1)
    if isinstance(x, Fraction):
        return Scalar._raw(x.numerator, 0, x.denominator)
    return None


ZERO = Scalar._raw(0, 0, 1)
ONE = Scalar._raw(1, 0, 1)
I = Scalar._raw(0, 1, 1)
