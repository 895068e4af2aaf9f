"""Exact coefficient fields: the rationals and prime fields F_p.

Field elements are plain Python values (``Fraction`` for the rationals,
``int`` residues in [0, p) for F_p); the Field object owns the arithmetic.
This keeps coefficients lightweight and hashable while guaranteeing
exactness: there is no floating point anywhere in the package.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Union

from .errors import FieldMismatchError, ParseError

FieldValue = Union[Fraction, int]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3 * 10^24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Interface shared by RationalField and PrimeField."""

    characteristic: int

    def normalize(self, value) -> FieldValue:
        raise NotImplementedError

    def add(self, a: FieldValue, b: FieldValue) -> FieldValue:
        raise NotImplementedError

    def sub(self, a: FieldValue, b: FieldValue) -> FieldValue:
        raise NotImplementedError

    def mul(self, a: FieldValue, b: FieldValue) -> FieldValue:
        raise NotImplementedError

    def neg(self, a: FieldValue) -> FieldValue:
        raise NotImplementedError

    def inv(self, a: FieldValue) -> FieldValue:
        raise NotImplementedError

    def div(self, a: FieldValue, b: FieldValue) -> FieldValue:
        return self.mul(a, self.inv(b))

    def pow(self, a: FieldValue, e: int) -> FieldValue:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    @property
    def zero(self) -> FieldValue:
        return self.normalize(0)

    @property
    def one(self) -> FieldValue:
        return self.normalize(1)

    def is_zero(self, a: FieldValue) -> bool:
        return a == self.zero

    def random_element(self, rng: random.Random, bound: int) -> FieldValue:
        """Uniform sample from {0, ..., bound-1} embedded in the field."""
        return self.normalize(rng.randrange(bound))

    def format_value(self, a: FieldValue) -> str:
        raise NotImplementedError

    def parse_value(self, text: str) -> FieldValue:
        """Parse ``a`` or ``a/b`` with integer a, b."""
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/", 1)
                return self.normalize(Fraction(int(num), int(den)))
            return self.normalize(int(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"invalid field constant {text!r}") from exc

    def to_json(self) -> dict:
        raise NotImplementedError


class RationalField(Field):
    """The field of rational numbers; elements are reduced Fractions."""

    characteristic = 0

    def normalize(self, value) -> Fraction:
        return value if type(value) is Fraction else Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def is_zero(self, a) -> bool:
        return a == 0

    def format_value(self, a) -> str:
        a = self.normalize(a)
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"

    def to_json(self) -> dict:
        return {"type": "rational"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "QQ"


class PrimeField(Field):
    """F_p for prime p; elements are int residues in [0, p)."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p

    def normalize(self, value) -> int:
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator divisible by p={self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def format_value(self, a) -> str:
        return str(a % self.p)

    def to_json(self) -> dict:
        return {"type": "prime", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"GF({self.p})"


#: Shared default field instance.
QQ = RationalField()


def check_same_field(a: Field, b: Field) -> None:
    if a != b:
        raise FieldMismatchError(f"field mismatch: {a!r} vs {b!r}")


def field_from_spec(spec: str) -> Field:
    """Parse "rational" or "prime:<p>" (CLI --field syntax)."""
    if spec == "rational":
        return QQ
    if spec.startswith("prime:"):
        return PrimeField(int(spec.split(":", 1)[1]))
    raise ParseError(f"unknown field spec {spec!r}")


def field_from_json(obj: dict) -> Field:
    if obj.get("type") == "rational":
        return QQ
    if obj.get("type") == "prime":
        return PrimeField(int(obj["p"]))
    raise ParseError(f"unknown field JSON {obj!r}")
