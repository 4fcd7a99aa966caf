"""The two base dynamics: circle rotation by a quadratic irrational and the
odometer on an inverse limit of cyclic groups, both with exact invariant
metrics and the integer group acting by +alpha / +1.

Odometer points are stored as exact profinite rationals: a point is a
Fraction whose denominator is coprime to every scale modulus, so distances
(first differing digit) reduce to divisibility of the numerator of x - y.
Digit views to any depth are derived on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import PreconditionError
from .scalars import GOLDEN_ROTATION, ExactScalar, fraction_from_json, fraction_to_json

STRICTLY_LARGER = "strictly_larger"
EQUAL_AS_SETS = "equal_as_sets"


# circle


@dataclass(frozen=True)
class CirclePoint:
    """A point of R/Z, held as an exact scalar reduced into [0,1)."""

    pos: ExactScalar

    @staticmethod
    def make(value: ExactScalar | Fraction | int) -> "CirclePoint":
        return CirclePoint(ExactScalar.coerce(value).mod1())

    def __eq__(self, other):
        return isinstance(other, CirclePoint) and self.pos == other.pos

    def __hash__(self):
        return hash(self.pos)


def circle_dist(x: CirclePoint, y: CirclePoint) -> ExactScalar:
    d = (x.pos - y.pos).mod1()
    one_minus = ExactScalar(1) - d
    return d if d <= one_minus else one_minus


def circle_offset(x: CirclePoint, origin: CirclePoint) -> ExactScalar:
    """Signed arc position of x relative to origin, in (-1/2, 1/2]."""
    d = (x.pos - origin.pos).mod1()
    if d <= ExactScalar(Fraction(1, 2)):
        return d
    return d - 1


# odometer


class OdometerScale:
    """Scale (n_k) with n_k | n_{k+1}; given as the moduli list, extended by
    repeating the last ratio.  Ratios must be >= 2 so every level branches."""

    def __init__(self, moduli: Sequence[int]):
        moduli = list(moduli)
        if not moduli:
            raise PreconditionError("empty odometer scale")
        ratios = []
        prev = 1
        for m in moduli:
            if m % prev != 0 or m // prev < 2:
                raise PreconditionError(f"modulus {m} does not refine {prev}")
            ratios.append(m // prev)
            prev = m
        self.moduli = moduli
        self.ratios = ratios
        primes: set[int] = set()
        for r in ratios:
            k = 2
            while k * k <= r:
                if r % k == 0:
                    primes.add(k)
                    while r % k == 0:
                        r //= k
                k += 1
            if r > 1:
                primes.add(r)
        self.primes = sorted(primes)
        self._cache = [1] + list(moduli)

    def modulus(self, k: int) -> int:
        """n_k, with n_0 = 1; beyond the stored list the last ratio repeats."""
        if k < len(self._cache):
            return self._cache[k]
        last = self.ratios[-1]
        while len(self._cache) <= k:
            self._cache.append(self._cache[-1] * last)
        return self._cache[k]

    def ratio(self, k: int) -> int:
        """n_{k+1} / n_k."""
        return self.ratios[k] if k < len(self.ratios) else self.ratios[-1]

    def admits(self, value: Fraction) -> bool:
        return all(value.denominator % p != 0 for p in self.primes)

    def __eq__(self, other):
        return isinstance(other, OdometerScale) and self.moduli == other.moduli

    def to_json(self) -> list[int]:
        return list(self.moduli)


DYADIC = OdometerScale([2, 4, 8])


@dataclass(frozen=True)
class OdometerPoint:
    """A point of the odometer group, as an exact profinite rational."""

    scale: OdometerScale
    value: Fraction

    @staticmethod
    def make(scale: OdometerScale, value: Fraction | int) -> "OdometerPoint":
        value = Fraction(value)
        if not scale.admits(value):
            raise PreconditionError(
                f"denominator {value.denominator} not coprime to the scale"
            )
        return OdometerPoint(scale, value)

    @staticmethod
    def from_digits(
        scale: OdometerScale,
        digits: Sequence[int],
        tail: str | Sequence[int] = "zeros",
    ) -> "OdometerPoint":
        """Point with the given digit prefix and a canonical tail.

        ``tail`` is "zeros", "ones", or a finite word repeated forever; the
        periodic tails require the scale ratio to be eventually constant
        (true for every scale given as a finite moduli list).
        """
        t = len(digits)
        val = Fraction(0)
        for k, d in enumerate(digits):
            if not 0 <= d < scale.ratio(k):
                raise PreconditionError(f"digit {d} out of range at index {k}")
            val += d * scale.modulus(k)
        if tail == "zeros":
            word: Sequence[int] = (0,)
        elif tail == "ones":
            word = (1,)
        else:
            word = tuple(tail)
        if any(w != 0 for w in word):
            for k, w in enumerate(word):
                if not 0 <= w < scale.ratio(t + k):
                    raise PreconditionError("tail digit out of range")
            p = len(word)
            r = 1
            for k in range(p):
                r *= scale.ratio(t + k)
            head = sum(word[j] * scale.modulus(t + j) for j in range(p))
            # sum_{i>=0} head * r^i in the profinite topology = head / (1 - r)
            val += Fraction(head, 1 - r) * 1  # head is already scaled by n_t
        return OdometerPoint.make(scale, val)

    def digits(self, depth: int) -> tuple[int, ...]:
        """First ``depth`` digits, digit k in Z/(n_{k+1}/n_k)."""
        n = self.scale.modulus(depth)
        num = self.value.numerator
        den = self.value.denominator
        residue = (num * pow(den, -1, n)) % n
        out = []
        for k in range(depth):
            r = self.scale.ratio(k)
            out.append(residue % r)
            residue //= r
        return tuple(out)

    def __eq__(self, other):
        return (
            isinstance(other, OdometerPoint)
            and self.scale == other.scale
            and self.value == other.value
        )

    def __hash__(self):
        return hash(self.value)


def odometer_prefix_level(scale: OdometerScale, diff: Fraction) -> int | None:
    """Largest k with n_k dividing ``diff`` (None means diff == 0)."""
    if diff == 0:
        return None
    num = abs(diff.numerator)
    k = 0
    while num % scale.modulus(k + 1) == 0:
        k += 1
    return k


def odometer_dist(x: OdometerPoint, y: OdometerPoint) -> ExactScalar:
    if x.scale != y.scale:
        raise PreconditionError("points of different odometers")
    k = odometer_prefix_level(x.scale, x.value - y.value)
    if k is None:
        return ExactScalar(0)
    return ExactScalar(Fraction(1, 2 ** (k + 1)))


# base system


Point = CirclePoint | OdometerPoint

ROTATION = "rotation"
ODOMETER = "odometer"


class BaseSystem:
    """A minimal isometric Z-action: ``rotation(alpha)`` on the circle or the
    +1 odometer on a scale, with designated points theta (anchor orbit) and
    theta0 (the orbit evaluation happens along)."""

    def __init__(
        self,
        kind: str,
        *,
        alpha: ExactScalar | None = None,
        scale: OdometerScale | None = None,
        theta: Point | None = None,
        theta0: Point | None = None,
    ):
        self.kind = kind
        if kind == ROTATION:
            if alpha is None:
                alpha = GOLDEN_ROTATION
            if alpha.is_rational:
                raise PreconditionError("rotation angle must be irrational")
            self.alpha = alpha.mod1()
            self.scale = None
            self.theta = theta if theta is not None else CirclePoint.make(0)
            self.theta0 = (
                theta0 if theta0 is not None else CirclePoint.make(Fraction(1, 7))
            )
        elif kind == ODOMETER:
            self.scale = scale if scale is not None else DYADIC
            self.alpha = None
            self.theta = (
                theta if theta is not None else OdometerPoint.make(self.scale, 0)
            )
            self.theta0 = (
                theta0
                if theta0 is not None
                else OdometerPoint.make(self.scale, _default_theta0(self.scale))
            )
        else:
            raise PreconditionError(f"unknown system kind {kind!r}")
        if not self.distinct_orbits(self.theta, self.theta0):
            raise PreconditionError("theta and theta0 must lie on distinct orbits")

    # action and metric

    def act(self, g: int, x: Point) -> Point:
        if self.kind == ROTATION:
            assert isinstance(x, CirclePoint)
            return CirclePoint((x.pos + self.alpha * g).mod1())
        assert isinstance(x, OdometerPoint)
        return OdometerPoint(x.scale, x.value + g)

    def dist(self, x: Point, y: Point) -> ExactScalar:
        if self.kind == ROTATION:
            return circle_dist(x, y)
        return odometer_dist(x, y)

    def ball_compare(self, center: Point, r, r_small) -> str:
        """Decide whether B_r(center) minus the closure of B_r'(center) is
        nonempty (``strictly_larger``) or the two balls coincide as sets."""
        r = ExactScalar.coerce(r)
        r_small = ExactScalar.coerce(r_small)
        if not (ExactScalar(0) < r_small < r):
            raise PreconditionError("need 0 < r' < r")
        if self.kind == ROTATION:
            if r > ExactScalar(Fraction(1, 2)):
                raise PreconditionError("need r <= 1/2 on the circle")
            return STRICTLY_LARGER
        # odometer: some metric value 2^-k must fall in [r', r)
        k = _least_exponent_below(r)
        value = ExactScalar(Fraction(1, 2**k))
        return STRICTLY_LARGER if value >= r_small else EQUAL_AS_SETS

    # exact structural facts

    def distinct_orbits(self, x: Point, y: Point) -> bool:
        """Exact: no integer g with g.x == y."""
        return self.orbit_shift(x, y) is None

    def orbit_shift(self, x: Point, y: Point) -> int | None:
        """The g with g.x == y, when it exists."""
        if self.kind == ROTATION:
            diff = (y.pos - x.pos).mod1()
            # g*alpha == diff (mod 1): surd parts must match and the remainder
            # must vanish, all decidable exactly
            if self.alpha.surd == 0:
                raise PreconditionError("rational rotation")
            g = diff.surd / self.alpha.surd
            if g.denominator != 1:
                return None
            g = int(g)
            if (diff - self.alpha * g).mod1().sign() == 0:
                return g
            return None
        diff = y.value - x.value
        if diff.denominator != 1:
            return None
        return int(diff)

    def is_free(self) -> bool:
        """g.x == x forces g == 0; exact for both kinds."""
        return True  # irrational rotation and +1 odometer are both free

    # serialization

    def to_json(self) -> dict:
        if self.kind == ROTATION:
            return {"kind": ROTATION, "alpha": self.alpha.to_json(),
                    "theta": self.theta.pos.to_json(),
                    "theta0": self.theta0.pos.to_json()}
        return {"kind": ODOMETER, "scale": self.scale.to_json(),
                "theta": fraction_to_json(self.theta.value),
                "theta0": fraction_to_json(self.theta0.value)}

    @classmethod
    def from_json(cls, obj: dict) -> "BaseSystem":
        if obj["kind"] == ROTATION:
            return cls(
                ROTATION,
                alpha=ExactScalar.from_json(obj["alpha"]),
                theta=CirclePoint.make(ExactScalar.from_json(obj["theta"]))
                if "theta" in obj
                else None,
                theta0=CirclePoint.make(ExactScalar.from_json(obj["theta0"]))
                if "theta0" in obj
                else None,
            )
        scale = OdometerScale(obj["scale"])
        theta = (
            OdometerPoint.make(scale, fraction_from_json(obj["theta"]))
            if "theta" in obj
            else None
        )
        theta0 = (
            OdometerPoint.make(scale, fraction_from_json(obj["theta0"]))
            if "theta0" in obj
            else None
        )
        return cls(ODOMETER, scale=scale, theta=theta, theta0=theta0)


def _default_theta0(scale: OdometerScale) -> Fraction:
    """A point off the integer orbit: digits (0,1,0,1,...)."""
    r0 = scale.ratio(0) * scale.ratio(1)
    # value of the tail word (0,1) repeated: n_1 / (1 - n_2/n_0-ratio-product)
    return Fraction(scale.modulus(1), 1 - r0)


def _least_exponent_below(r: ExactScalar) -> int:
    """Smallest k >= 1 with 2^-k < r (r in (0, 1])."""
    k = max(1, -math.floor(math.log2(max(float(r), 1e-300))) - 1)
    while ExactScalar(Fraction(1, 2**k)) >= r:
        k += 1
    while k > 1 and ExactScalar(Fraction(1, 2 ** (k - 1))) < r:
        k -= 1
    return k
