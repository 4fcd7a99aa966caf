"""Exact scalars in Q or a real quadratic field Q(sqrt(d)).

Every number in the pipeline is either a rational or ``a + b*sqrt(d)`` with
rational a, b and a fixed square-free d > 1.  All arithmetic and comparisons
are exact; in particular "is this value rational?" is decidable, which is what
makes the rotation-side constructions checkable (a scalar with a nonzero surd
part is never equal to a rational).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

from .errors import PreconditionError

RationalLike = Union[int, Fraction]


def _is_square_free(d: int) -> bool:
    if d <= 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


_SQUARE_FREE_CACHE: dict[int, bool] = {}


def _check_disc(d: int) -> None:
    ok = _SQUARE_FREE_CACHE.get(d)
    if ok is None:
        ok = _is_square_free(d)
        _SQUARE_FREE_CACHE[d] = ok
    if not ok:
        raise PreconditionError(f"discriminant {d} is not a square-free integer > 1")


@total_ordering
class ExactScalar:
    """``rat + surd*sqrt(disc)`` with exact Fraction coefficients.

    ``disc == 0`` if and only if ``surd == 0`` (the value is rational).
    Mixed arithmetic between two irrational scalars requires equal
    discriminants.
    """

    __slots__ = ("rat", "surd", "disc")

    def __init__(self, rat: RationalLike = 0, surd: RationalLike = 0, disc: int = 0):
        rat = Fraction(rat)
        surd = Fraction(surd)
        if surd == 0:
            disc = 0
        else:
            _check_disc(disc)
        self.rat = rat
        self.surd = surd
        self.disc = disc

    # construction helpers

    @classmethod
    def rational(cls, p: RationalLike, q: int = 1) -> "ExactScalar":
        return cls(Fraction(p, q) if q != 1 else Fraction(p))

    @classmethod
    def coerce(cls, x: "ExactScalar | RationalLike") -> "ExactScalar":
        if isinstance(x, ExactScalar):
            return x
        return cls(Fraction(x))

    @property
    def is_rational(self) -> bool:
        return self.surd == 0

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise PreconditionError("scalar has a nonzero surd part")
        return self.rat

    # arithmetic

    def _join_disc(self, other: "ExactScalar") -> int:
        if self.surd == 0:
            return other.disc
        if other.surd == 0:
            return self.disc
        if self.disc != other.disc:
            raise PreconditionError(
                f"mixed discriminants {self.disc} and {other.disc}"
            )
        return self.disc

    def __add__(self, other):
        other = ExactScalar.coerce(other)
        d = self._join_disc(other)
        return ExactScalar(self.rat + other.rat, self.surd + other.surd, d)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(-self.rat, -self.surd, self.disc)

    def __sub__(self, other):
        return self + (-ExactScalar.coerce(other))

    def __rsub__(self, other):
        return ExactScalar.coerce(other) + (-self)

    def __mul__(self, other):
        other = ExactScalar.coerce(other)
        d = self._join_disc(other)
        rat = self.rat * other.rat + self.surd * other.surd * d
        surd = self.rat * other.surd + self.surd * other.rat
        return ExactScalar(rat, surd, d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = ExactScalar.coerce(other)
        if other.sign() == 0:
            raise ZeroDivisionError("division by zero scalar")
        if other.surd == 0:
            return ExactScalar(self.rat / other.rat, self.surd / other.rat, self.disc)
        # rationalise by the conjugate
        norm = other.rat * other.rat - other.surd * other.surd * other.disc
        conj = ExactScalar(other.rat, -other.surd, other.disc)
        num = self * conj
        return ExactScalar(num.rat / norm, num.surd / norm, num.disc)

    def __rtruediv__(self, other):
        return ExactScalar.coerce(other) / self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # exact ordering

    def sign(self) -> int:
        a, b = self.rat, self.surd
        if b == 0:
            return -1 if a < 0 else (1 if a > 0 else 0)
        if a == 0:
            return -1 if b < 0 else 1
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        lhs = a * a
        rhs = b * b * self.disc
        if lhs == rhs:
            # would force sqrt(disc) rational; impossible for square-free disc
            raise PreconditionError("degenerate quadratic scalar")
        if a > 0:
            return 1 if lhs > rhs else -1
        return -1 if lhs > rhs else 1

    def __eq__(self, other):
        if not isinstance(other, (ExactScalar, int, Fraction)):
            return NotImplemented
        return (self - other).sign() == 0

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __hash__(self):
        if self.is_rational:
            return hash(self.rat)
        return hash((self.rat, self.surd, self.disc))

    # floor / reduction mod 1

    def __float__(self) -> float:
        v = float(self.rat)
        if self.surd != 0:
            v += float(self.surd) * math.sqrt(self.disc)
        return v

    def __floor__(self) -> int:
        if self.surd == 0:
            return math.floor(self.rat)
        k = math.floor(float(self))
        # fix up the float estimate with exact comparisons
        while self < k:
            k -= 1
        while self >= k + 1:
            k += 1
        return k

    def mod1(self) -> "ExactScalar":
        return self - math.floor(self)

    def __repr__(self) -> str:
        if self.is_rational:
            return f"ExactScalar({self.rat})"
        return f"ExactScalar({self.rat} + {self.surd}*sqrt({self.disc}))"

    def __str__(self) -> str:
        if self.is_rational:
            return str(self.rat)
        return f"{self.rat}{'+' if self.surd >= 0 else ''}{self.surd}*sqrt({self.disc})"

    # serialization ({p,q} rationals, {p,q,sp,sq,d} quadratics)

    def to_json(self) -> dict:
        out = {"p": self.rat.numerator, "q": self.rat.denominator}
        if self.surd != 0:
            out.update(
                sp=self.surd.numerator, sq=self.surd.denominator, d=self.disc
            )
        return out

    @classmethod
    def from_json(cls, obj) -> "ExactScalar":
        if isinstance(obj, int):
            return cls(obj)
        rat = Fraction(obj["p"], obj["q"])
        if "sp" in obj:
            return cls(rat, Fraction(obj["sp"], obj["sq"]), obj["d"])
        return cls(rat)


def fraction_to_json(x: Fraction) -> dict:
    return {"p": x.numerator, "q": x.denominator}


def fraction_from_json(obj) -> Fraction:
    if isinstance(obj, int):
        return Fraction(obj)
    return Fraction(obj["p"], obj["q"])


GOLDEN_ROTATION = ExactScalar(Fraction(-1, 2), Fraction(1, 2), 5)
"""(sqrt(5)-1)/2, the default irrational rotation angle."""
