"""Exact fields: the rationals and prime fields GF(p).

Rational elements are plain :class:`fractions.Fraction` values. Prime-field
elements are :class:`Residue` instances. Both support the usual arithmetic
operators and mix with Python ints, so matrix code never needs to know
which field it is working over.
"""
from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Union

from .errors import InvariantError, ParseError

_ELEMENT_RE = re.compile(r"(-?\d+)(?:/(\d+))?")

PRIME_BOUND = 1 << 61


def is_prime(p: int) -> bool:
    """Deterministic primality test, exact for all p < 3.3e24."""
    if p < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Residue:
    """An element of GF(p), stored reduced into [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Residue):
            if other.p != self.p:
                raise InvariantError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.p)

    def __pos__(self):
        return self

    def inverse(self) -> "Residue":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in GF({self.p})")
        return Residue(pow(self.value, -1, self.p), self.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * Residue(o, self.p).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Residue(o, self.p) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Residue(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"Residue({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


Element = Union[Fraction, Residue]


class Field:
    """Common interface of :class:`RationalField` and :class:`PrimeField`."""

    def __call__(self, x) -> Element:
        raise NotImplementedError

    @property
    def zero(self) -> Element:
        return self(0)

    @property
    def one(self) -> Element:
        return self(1)

    def parse(self, text: str) -> Element:
        """Parse ``-?\\d+`` or ``-?\\d+/\\d+`` into a canonical element."""
        if not isinstance(text, str):
            raise ParseError(f"field element must be a string, got {text!r}")
        m = _ELEMENT_RE.fullmatch(text.strip())
        if m is None:
            raise ParseError(f"malformed field element {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) is not None else 1
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return self._from_fraction(num, den, text)

    def _from_fraction(self, num: int, den: int, text: str) -> Element:
        raise NotImplementedError

    def format(self, x: Element) -> str:
        return str(x)

    def invert(self, x: Element) -> Element:
        if not x:
            raise ZeroDivisionError("division by zero")
        return self.one / x

    def sample(self, rng: random.Random, nonzero: bool = False) -> Element:
        while True:
            x = self._draw(rng)
            if x or not nonzero:
                return x

    def _draw(self, rng: random.Random) -> Element:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError


class RationalField(Field):
    kind = "rational"

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Residue):
            raise InvariantError("cannot coerce a prime-field residue to a rational")
        return Fraction(x)

    def _from_fraction(self, num, den, text):
        return Fraction(num, den)

    def _draw(self, rng):
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    def contains(self, x):
        return isinstance(x, Fraction)

    def to_json(self):
        return "rational"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    kind = "prime"

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise InvariantError(f"prime modulus must be an integer, got {p!r}")
        if p >= PRIME_BOUND:
            raise InvariantError(f"prime modulus {p} must be below 2**61")
        if not is_prime(p):
            raise InvariantError(f"{p} is not prime")
        self.p = p

    def __call__(self, x) -> Residue:
        if isinstance(x, str):
            return self.parse(x)
        if isinstance(x, Residue):
            if x.p != self.p:
                raise InvariantError(f"residue mod {x.p} is not in GF({self.p})")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return Residue(x.numerator, self.p) / x.denominator
        return Residue(int(x), self.p)

    def _from_fraction(self, num, den, text):
        if den % self.p == 0:
            raise ParseError(f"denominator of {text!r} is not invertible mod {self.p}")
        return Residue(num, self.p) / den

    def _draw(self, rng):
        return Residue(rng.randrange(self.p), self.p)

    def contains(self, x):
        return isinstance(x, Residue) and x.p == self.p

    def to_json(self):
        return {"prime": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(obj) -> Field:
    """Decode ``"rational"`` or ``{"prime": p}``."""
    if obj == "rational":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"prime"}:
        return PrimeField(obj["prime"])
    raise ParseError(f"unknown field spec {obj!r}")


def field_from_string(text: str) -> Field:
    """CLI shorthand: ``rational``, ``QQ``, ``prime:7`` or ``GF7``."""
    t = text.strip()
    if t.lower() in ("rational", "qq", "q"):
        return QQ
    m = re.fullmatch(r"(?:prime:|GF|gf|F)(\d+)", t)
    if m:
        return PrimeField(int(m.group(1)))
    raise ParseError(f"unknown field {text!r}")


def parse_element(text: str, field: Field) -> Element:
    return field.parse(text)


def invert(x: Element) -> Element:
    if not x:
        raise ZeroDivisionError("division by zero")
    return 1 / x


def sample_element(rng: random.Random, field: Field, nonzero: bool = False) -> Element:
    return field.sample(rng, nonzero)
