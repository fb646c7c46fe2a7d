"""Exact Gaussian-rational arithmetic, plus a small float-with-tolerance type.

GaussianRational is the scalar field for everything in this package: a + bi
with a, b kept as Fractions (lowest terms, positive denominators come for
free).  ApproxComplex only exists to seed numeric searches; any value it
produces must be rationalized and re-checked exactly before use.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from fractions import Fraction


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(Fraction(x), Fraction(0))
    return None


_F0 = Fraction(0)


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction

    def __post_init__(self):
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    # -- ring structure -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        # real inputs make up the bulk of what the linear algebra touches,
        # and for them one Fraction product beats four plus two additions
        if not self.im and not other.im:
            return GaussianRational(self.re * other.re, _F0)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of 0")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = ONE
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    # -- conjugation and norms ------------------------------------------

    def conj(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    @property
    def is_real(self) -> bool:
        return self.im == 0

    # -- text ------------------------------------------------------------

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        imag = f"{self.im}i" if abs(self.im) != 1 else ("i" if self.im > 0 else "-i")
        if self.re == 0:
            return imag
        sign = "+" if self.im > 0 else "-"
        mag = abs(self.im)
        tail = "i" if mag == 1 else f"{mag}i"
        return f"{self.re}{sign}{tail}"

    __repr__ = __str__

    def __complex__(self):
        return complex(self.re, self.im)


ZERO = GaussianRational(Fraction(0), Fraction(0))
ONE = GaussianRational(Fraction(1), Fraction(0))
I = GaussianRational(Fraction(0), Fraction(1))


def gq(re, im=0) -> GaussianRational:
    """Shorthand constructor; accepts ints, Fractions or 'p/q' strings."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussianRational(Fraction(re), Fraction(im))


def conj(z: GaussianRational) -> GaussianRational:
    return z.conj()


def abs2(z: GaussianRational) -> Fraction:
    return z.abs2()


_SCALAR_RX = _re.compile(
    r"""^\s*
        (?P<re>[+-]?\d+(?:/\d+)?)?           # optional real part
        (?:(?P<sign>[+-])?(?P<im>\d+(?:/\d+)?)?i)?   # optional imaginary part
        \s*$""",
    _re.VERBOSE,
)


def parse_scalar(text: str) -> GaussianRational:
    """Parse 'p/q', 'p/q+r/si', 'i', '-i', '2-i' style literals."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar literal")
    if not s.endswith("i"):
        return GaussianRational(Fraction(s), Fraction(0))
    body = s[:-1]
    # split off the real part, if any, at the last top-level +/- that is not
    # the leading sign
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "+-/":
            re_part, im_part = body[:k], body[k:]
            break
    else:
        re_part, im_part = "", body
    if im_part in ("", "+"):
        im = Fraction(1)
    elif im_part == "-":
        im = Fraction(-1)
    else:
        im = Fraction(im_part)
    re = Fraction(re_part) if re_part else Fraction(0)
    return GaussianRational(re, im)


def format_scalar(z: GaussianRational) -> str:
    """Canonical 'p/q' / 'p/q+r/si' rendering used in JSON output."""
    return str(z)


def pythagorean_unit(p: int, q: int) -> GaussianRational:
    """(p^2 - q^2 + 2pq i) / (p^2 + q^2): a Gaussian rational of modulus one.

    Every rational point of the unit circle arises this way, which is how
    samplers meet constraints like |C| = |B - 1| exactly over Q(i).
    """
    n = p * p + q * q
    if n == 0:
        raise ValueError("(p, q) must not both vanish")
    return GaussianRational(Fraction(p * p - q * q, n), Fraction(2 * p * q, n))


@dataclass(frozen=True)
class ApproxComplex:
    re: float
    im: float
    tol: float = 1e-9

    def approx_eq(self, other: "ApproxComplex") -> bool:
        if self.tol != other.tol:
            raise ValueError("tolerance mismatch")
        return abs(self.re - other.re) < self.tol and abs(self.im - other.im) < self.tol


def approx_eq(x: ApproxComplex, y: ApproxComplex) -> bool:
    return x.approx_eq(y)


def to_approx(z: GaussianRational, tol: float = 1e-9) -> ApproxComplex:
    return ApproxComplex(float(z.re), float(z.im), tol)


def rationalize(z: ApproxComplex, max_den: int = 64) -> GaussianRational:
    """Nearest Gaussian rational with small denominators; exactness not implied."""
    return GaussianRational(
        Fraction(z.re).limit_denominator(max_den),
        Fraction(z.im).limit_denominator(max_den),
    )
