"""Exact commutative coefficient rings: integers, rationals, integers mod m."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional


class NonDomainRing(ValueError):
    pass


class Ring:
    name = "ring"
    is_domain = True
    is_field = False

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def coerce(self, value):
        raise NotImplementedError

    def add(self, a, b):
        return self.coerce(a + b)

    def mul(self, a, b):
        return self.coerce(a * b)

    def neg(self, a):
        return self.coerce(-a)

    def sub(self, a, b):
        return self.coerce(a - b)

    def is_zero(self, a) -> bool:
        return a == 0

    def inverse(self, a):
        raise NonDomainRing(f"{self.name} has no division")

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            return self.coerce(Fraction(text))
        return self.coerce(int(text))

    def render(self, a) -> str:
        return str(a)

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.__dict__ == other.__dict__

    def __hash__(self) -> int:
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))

    def __repr__(self) -> str:
        return self.name


class Integers(Ring):
    name = "int"

    def coerce(self, value):
        if isinstance(value, Fraction):
            if value.denominator != 1:
                raise ValueError(f"{value} is not an integer")
            return value.numerator
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot read {value!r} as an integer")
        return value


class Rationals(Ring):
    name = "rat"
    is_field = True

    def coerce(self, value):
        if isinstance(value, bool):
            raise TypeError(f"cannot read {value!r} as a rational")
        return Fraction(value)

    def inverse(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / Fraction(a)


class IntegersMod(Ring):
    def __init__(self, modulus: int):
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        self.modulus = modulus

    @property
    def name(self) -> str:
        return f"mod:{self.modulus}"

    @property
    def is_domain(self) -> bool:
        return _is_prime(self.modulus)

    @property
    def is_field(self) -> bool:
        return self.is_domain

    def coerce(self, value):
        if isinstance(value, Fraction):
            if gcd(value.denominator, self.modulus) != 1:
                raise ValueError(f"{value} is undefined mod {self.modulus}")
            return value.numerator * pow(value.denominator, -1, self.modulus) % self.modulus
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"cannot read {value!r} mod {self.modulus}")
        return value % self.modulus

    def inverse(self, a):
        if gcd(a, self.modulus) != 1:
            raise NonDomainRing(f"{a} is not invertible mod {self.modulus}")
        return pow(a, -1, self.modulus)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


ZZ = Integers()
QQ = Rationals()


def ring_from_name(name: Optional[str]) -> Ring:
    """``int``, ``rat`` or ``mod:m``."""
    if name in (None, "int"):
        return ZZ
    if name == "rat":
        return QQ
    if name.startswith("mod:"):
        digits = name[4:]
        if not digits.isdigit():
            raise ValueError(f"bad modulus in {name!r}; use mod:m with m >= 2")
        return IntegersMod(int(digits))
    raise ValueError(f"unknown ring {name!r}; use int, rat or mod:m")
