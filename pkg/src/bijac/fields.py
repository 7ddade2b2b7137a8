"""Scalar backends: exact rationals and prime fields.

Elements are plain Python objects (``Fraction`` for the rationals, ``int``
residues in ``[0, p)`` for a prime field).  Every arithmetic result is passed
through :meth:`reduce` so generic code can use ordinary operators.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

DEFAULT_PRIME = 2147483647  # 2**31 - 1


class RationalField:
    """The field of rational numbers, backed by :class:`fractions.Fraction`."""

    name = "QQ"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def reduce(self, x) -> Fraction:
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into QQ")

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def to_json(self, x):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else str(x)

    def descriptor(self) -> dict:
        return {"kind": "QQ"}

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field F_p with residues stored as ints in ``[0, p)``.

    Primality of ``p`` is trusted, not checked.
    """

    characteristic: int

    def __init__(self, p: int = DEFAULT_PRIME):
        if p < 2:
            raise ValueError(f"invalid modulus {p}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    @property
    def name(self) -> str:
        return f"GF({self.p})"

    def reduce(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        if isinstance(x, Rational):
            den = x.denominator % self.p
            if den == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {self.p}")
            return x.numerator * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def inv(self, x) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def to_json(self, x):
        return int(x)

    def descriptor(self) -> dict:
        return {"kind": "GF", "p": self.p}

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def GF(p: int = DEFAULT_PRIME) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc: dict):
    if desc["kind"] == "QQ":
        return QQ
    return PrimeField(int(desc["p"]))
