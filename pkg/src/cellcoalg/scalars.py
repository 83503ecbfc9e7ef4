"""Exact coefficient rings and Bernoulli numbers.

Three rings are supported: the integers, the rationals and prime fields.
Raw values are plain Python objects (``int`` or ``fractions.Fraction``);
a :class:`RingTag` knows how to normalize and combine them.  :class:`Scalar`
pairs a value with its ring for callers who want operator overloading.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import factorial


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class RingTag:
    """One of ``Z``, ``Q`` or ``F_p``.

    Use the module constants :data:`ZZ`, :data:`QQ` or :func:`prime_field`.
    """

    kind: str
    p: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "Q", "F"):
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind == "F" and not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.kind != "F" and self.p != 0:
            raise ValueError("characteristic only applies to prime fields")

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def __str__(self):
        return {"Z": "Z", "Q": "Q"}.get(self.kind) or f"F{self.p}"

    def flag(self) -> str:
        """The command-line spelling: ``z``, ``q`` or ``f<p>``."""
        return {"Z": "z", "Q": "q"}.get(self.kind) or f"f{self.p}"

    # raw-value arithmetic -------------------------------------------------

    def coerce(self, x):
        """Normalize a Python number (or rational string) into this ring."""
        if isinstance(x, Scalar):
            if x.ring != self:
                raise ValueError(f"ring mismatch: {x.ring} vs {self}")
            return x.value
        if isinstance(x, str):
            return self.parse(x)
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"{x} is not an integer")
                return x.numerator
            if not isinstance(x, int):
                raise TypeError(f"cannot coerce {type(x).__name__} to Z")
            return int(x)
        if self.kind == "Q":
            if not isinstance(x, (int, Fraction)):
                raise TypeError(f"cannot coerce {type(x).__name__} to Q")
            return Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        if not isinstance(x, int):
            raise TypeError(f"cannot coerce {type(x).__name__} to F{self.p}")
        return x % self.p

    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def add(self, a, b):
        s = a + b
        return s % self.p if self.kind == "F" else s

    def neg(self, a):
        return (-a) % self.p if self.kind == "F" else -a

    def mul(self, a, b):
        s = a * b
        return s % self.p if self.kind == "F" else s

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"cannot invert 0 in {self}")
        if self.kind == "Z":
            if a not in (1, -1):
                raise ValueError(f"{a} is not a unit in the integers")
            return a
        if self.kind == "Q":
            return 1 / Fraction(a)
        return pow(a, -1, self.p)

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.coerce(Fraction(int(num), int(den)))
        return self.coerce(int(text))

    def format(self, a) -> str:
        """Serialize: ``"num/den"`` for rationals (den omitted when 1)."""
        if isinstance(a, Fraction):
            if a.denominator == 1:
                return str(a.numerator)
            return f"{a.numerator}/{a.denominator}"
        return str(a)

    def to_json(self, a):
        # integer-valued rings serialize as JSON numbers
        if self.kind == "Q":
            return self.format(a)
        return int(a)


ZZ = RingTag("Z")
QQ = RingTag("Q")


def prime_field(p: int) -> RingTag:
    return RingTag("F", p)


F2 = prime_field(2)


def ring_from_flag(flag: str) -> RingTag:
    """Parse CLI ring flags ``z``, ``q``, ``f2``, ``f3``, ..."""
    flag = flag.strip().lower()
    if flag == "z":
        return ZZ
    if flag == "q":
        return QQ
    if flag.startswith("f") and flag[1:].isdigit():
        return prime_field(int(flag[1:]))
    raise ValueError(f"unknown ring flag {flag!r}")


@total_ordering
@dataclass(frozen=True)
class Scalar:
    """A ring element carrying its :class:`RingTag`."""

    ring: RingTag
    value: object

    def __post_init__(self):
        object.__setattr__(self, "value", self.ring.coerce(self.value))

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ring != self.ring:
                raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.value
        return self.ring.coerce(other)

    def __add__(self, other):
        return Scalar(self.ring, self.ring.add(self.value, self._other(other)))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, self.ring.neg(self.value))

    def __sub__(self, other):
        return self + (-Scalar(self.ring, self._other(other)))

    def __rsub__(self, other):
        return Scalar(self.ring, self._other(other)) - self

    def __mul__(self, other):
        return Scalar(self.ring, self.ring.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        return Scalar(self.ring, self.ring.inv(self.value))

    def __truediv__(self, other):
        return self * Scalar(self.ring, self._other(other)).inverse()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.ring == other.ring and self.value == other.value
        try:
            return self.value == self.ring.coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self.value < self._other(other)

    def __hash__(self):
        return hash((self.ring, self.value))

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return self.ring.format(self.value)


_bernoulli_lock = threading.Lock()
_bernoulli_series: list[Fraction] = [Fraction(1)]


def bernoulli(n: int) -> Fraction:
    """B_n from ``x / (e^x - 1) = sum B_n x^n / n!`` (so B_1 = -1/2).

    Computed by inverting ``(e^x - 1)/x = sum x^k/(k+1)!`` term by term; the
    coefficients of the inverse are memoized.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    with _bernoulli_lock:
        b = _bernoulli_series
        while len(b) <= n:
            m = len(b)
            b.append(-sum(Fraction(1, factorial(k + 1)) * b[m - k] for k in range(1, m + 1)))
        return b[n] * factorial(n)
