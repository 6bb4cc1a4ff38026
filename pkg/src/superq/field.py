"""Exact scalar fields: the rationals and prime fields GF(p).

Rationals are carried as :class:`fractions.Fraction`, prime-field elements as
canonical residues ``0..p-1``. There is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

RATIONALS = "rationals"
PRIME = "prime"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str = RATIONALS
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == RATIONALS:
            if self.characteristic != 0:
                raise ValueError("the rational field has characteristic 0")
        elif self.kind == PRIME:
            if not _is_prime(self.characteristic):
                raise ValueError(f"characteristic {self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(RATIONALS, 0)

    @classmethod
    def prime(cls, p: int) -> FieldSpec:
        return cls(PRIME, p)

    @property
    def p(self) -> int:
        return self.characteristic

    def __str__(self):
        return "QQ" if self.kind == RATIONALS else f"GF({self.characteristic})"

    # scalar arithmetic -------------------------------------------------

    def coerce(self, value) -> Fraction | int:
        """Bring an int, Fraction or numeric string into canonical form."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.kind == RATIONALS:
            return Fraction(value)
        value = Fraction(value)
        p = self.characteristic
        if value.denominator % p == 0:
            raise ZeroDivisionError(f"{value} has no image in GF({p})")
        return value.numerator * pow(value.denominator, -1, p) % p

    def norm(self, value):
        # results of +,-,* on canonical scalars
        if self.kind == RATIONALS:
            return value
        return value % self.characteristic

    def inv(self, value):
        if not value:
            raise ZeroDivisionError("inverse of zero")
        if self.kind == RATIONALS:
            return 1 / Fraction(value)
        return pow(value, -1, self.characteristic)

    def div(self, a, b):
        return self.norm(a * self.inv(b))

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def format(self, value) -> str:
        return str(value)
