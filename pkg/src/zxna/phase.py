"""Exact phases as rational multiples of pi.

All angles in the compiler (spider phases, gate angles, gadget phases) are
instances of :class:`Phase`, so phase arithmetic is exact and pattern
matching on angles never suffers from floating point drift.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = ["Phase", "rationalize_angle"]


class Phase:
    """An angle ``(n/d)*pi`` stored as a reduced fraction.

    The value is normalized modulo 2*pi into the half-open interval
    ``(-pi, pi]``, i.e. the internal fraction lies in ``(-1, 1]``.
    """

    __slots__ = ("_frac",)

    def __init__(self, numerator: int | Fraction = 0, denominator: int = 1):
        f = Fraction(numerator, denominator) % 2
        if f > 1:
            f -= 2
        object.__setattr__(self, "_frac", f)

    @property
    def frac(self) -> Fraction:
        """The multiple of pi, in ``(-1, 1]``."""
        return self._frac

    @property
    def numerator(self) -> int:
        return self._frac.numerator

    @property
    def denominator(self) -> int:
        return self._frac.denominator

    def __add__(self, other: "Phase") -> "Phase":
        return Phase(self._frac + other._frac)

    def __sub__(self, other: "Phase") -> "Phase":
        return Phase(self._frac - other._frac)

    def __neg__(self) -> "Phase":
        return Phase(-self._frac)

    def __mul__(self, k: int) -> "Phase":
        return Phase(self._frac * k)

    __rmul__ = __mul__

    def div_pow2(self, k: int) -> "Phase":
        """Exact division of the normalized representative by ``2**k``."""
        if k < 0:
            raise ValueError("k must be nonnegative")
        return Phase(self._frac / (1 << k))

    def is_zero(self) -> bool:
        return self._frac == 0

    def is_pauli(self) -> bool:
        """True for phases 0 and pi."""
        return self._frac.denominator == 1

    def is_clifford(self) -> bool:
        """True for multiples of pi/2."""
        return self._frac.denominator in (1, 2)

    def is_proper_clifford(self) -> bool:
        """True for exactly +pi/2 or -pi/2."""
        return self._frac.denominator == 2

    def to_float(self) -> float:
        return float(self._frac) * math.pi

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Phase):
            return self._frac == other._frac
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Phase", self._frac))

    def __repr__(self) -> str:
        return f"Phase({self._frac.numerator}, {self._frac.denominator})"

    def __str__(self) -> str:
        n, d = self._frac.numerator, self._frac.denominator
        if n == 0:
            return "0"
        num = {1: "pi", -1: "-pi"}.get(n, f"{n}*pi")
        return num if d == 1 else f"{num}/{d}"


#: Largest denominator considered when rationalizing decimal QASM angles.
MAX_DENOMINATOR = 1 << 20

#: Absolute tolerance for accepting a rationalization, in radians.
RATIONALIZE_TOL = 1e-10


def rationalize_angle(value: float, literal: str | None = None) -> Phase:
    """Convert a numeric angle in radians into an exact :class:`Phase`.

    Uses continued-fraction approximation of ``value/pi`` with a bounded
    denominator.  Raises ``ValueError`` if no fraction reproduces the value
    within tolerance, naming the offending literal.
    """
    f = Fraction(value / math.pi).limit_denominator(MAX_DENOMINATOR)
    if abs(float(f) * math.pi - value) > RATIONALIZE_TOL:
        what = literal if literal is not None else repr(value)
        raise ValueError(f"cannot express angle {what} as a rational multiple of pi")
    return Phase(f)
