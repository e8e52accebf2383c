"""Label spectrum of the N=2 minimal models in the discrete series.

A model is fixed by a level ``n >= 0`` (central charge ``3n/(n+2)``). Its
irreducible sectors are labelled by pairs ``(l, m)`` with ``0 <= l <= n``,
``m`` taken mod ``2n+4`` and ``l = m (mod 2)``, subject to the identification
``(l, m) ~ (n-l, m+n+2)``.

All numbers that feed classification decisions (weights, charges, phases) are
exact :class:`fractions.Fraction` values. Quantum dimensions are floats and are
only used for reporting; unit detection goes through :func:`is_unit`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Union

__all__ = [
    "Level",
    "RawLabel",
    "LabelOrbit",
    "LabelError",
    "UnitarityClass",
    "as_level",
    "validate_raw",
    "partner",
    "central_charge",
    "spectrum",
    "canonicalize",
    "orbit_of",
    "weight",
    "charge",
    "statistics_phase",
    "phase_pair",
    "qdim",
    "is_unit",
    "standard_form",
    "unitarity_class",
]


class LabelError(ValueError):
    """Raised for a pair (l, m) that is not a label of the given level."""


@dataclass(frozen=True, order=True)
class Level:
    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, int):
            raise TypeError(f"level must be an integer, got {self.n!r}")
        if self.n < 0:
            raise ValueError(f"level must be nonnegative, got {self.n}")

    @property
    def modulus(self) -> int:
        """Period of the charge label m."""
        return 2 * self.n + 4

    @property
    def c(self) -> Fraction:
        return Fraction(3 * self.n, self.n + 2)


LevelLike = Union[Level, int]


def as_level(level: LevelLike) -> Level:
    return level if isinstance(level, Level) else Level(level)


class RawLabel(NamedTuple):
    """A single representative (l, m); m is stored in [0, 2n+4)."""

    l: int
    m: int

    def __str__(self):
        return f"({self.l},{self.m})"


@dataclass(frozen=True, order=True)
class LabelOrbit:
    """An irreducible sector: the two raw labels identified with each other.

    ``canonical`` is the lexicographically smaller representative. Ordering and
    equality only ever look at ``canonical`` first, and ``partner`` is a
    function of it, so orbit comparison is exact.
    """

    canonical: RawLabel
    partner: RawLabel

    @property
    def l(self) -> int:
        return self.canonical.l

    @property
    def m(self) -> int:
        return self.canonical.m

    @property
    def forms(self) -> tuple[RawLabel, RawLabel]:
        return (self.canonical, self.partner)

    def __str__(self):
        return str(self.canonical)


def validate_raw(level: LevelLike, l: int, m: int) -> RawLabel:
    """Check range and parity and reduce m into [0, 2n+4).

    Negative or out-of-range m is accepted and reduced; l is not.
    """
    level = as_level(level)
    if not 0 <= l <= level.n:
        raise LabelError(f"l={l} out of range 0..{level.n} at level {level.n}")
    if (l - m) % 2:
        raise LabelError(f"parity violation: l={l} and m={m} must have equal parity")
    return RawLabel(l, m % level.modulus)


def partner(level: LevelLike, raw) -> RawLabel:
    level = as_level(level)
    l, m = raw
    return RawLabel(level.n - l, (m + level.n + 2) % level.modulus)


def canonicalize(level: LevelLike, raw) -> LabelOrbit:
    """Return the orbit containing ``raw`` (any (l, m) pair)."""
    level = as_level(level)
    raw = validate_raw(level, *raw)
    other = partner(level, raw)
    # never equal: n+2 is not 0 mod 2n+4
    return LabelOrbit(raw, other) if raw < other else LabelOrbit(other, raw)


def orbit_of(level: LevelLike, l: int, m: int) -> LabelOrbit:
    return canonicalize(level, (l, m))


def central_charge(level: LevelLike) -> Fraction:
    return as_level(level).c


def spectrum(level: LevelLike) -> list[LabelOrbit]:
    """All sectors of the level, each once, sorted by canonical label."""
    level = as_level(level)
    out = []
    for l in range(level.n + 1):
        for m in range(l % 2, level.modulus, 2):
            raw = RawLabel(l, m)
            other = partner(level, raw)
            if raw < other:
                out.append(LabelOrbit(raw, other))
    return out


def weight(level: LevelLike, raw) -> Fraction:
    """Conformal weight (l(l+2) - m^2) / (4(n+2)), m in [0, 2n+4).

    Not reduced mod 1, so it can be negative.
    """
    level = as_level(level)
    l, m = validate_raw(level, *raw)
    return Fraction(l * (l + 2) - m * m, 4 * (level.n + 2))


def charge(level: LevelLike, raw) -> Fraction:
    level = as_level(level)
    _, m = validate_raw(level, *raw)
    return Fraction(-m, level.n + 2)


def statistics_phase(level: LevelLike, raw) -> Fraction:
    """Exponent e in [0, 1) with omega = exp(2 pi i e) for this representative.

    The two representatives of an orbit give exponents differing by 1/2; use
    :func:`phase_pair` for the orbit-level view.
    """
    return weight(level, raw) % 1


def phase_pair(level: LevelLike, orbit: LabelOrbit) -> tuple[Fraction, Fraction]:
    """Exponents of (canonical, partner)."""
    return (statistics_phase(level, orbit.canonical),
            statistics_phase(level, orbit.partner))


def qdim(level: LevelLike, orbit) -> float:
    level = as_level(level)
    l = orbit.l if isinstance(orbit, LabelOrbit) else orbit[0]
    if level.n == 0:
        return 1.0
    k = level.n + 2
    return math.sin((l + 1) * math.pi / k) / math.sin(math.pi / k)


def is_unit(level: LevelLike, orbit) -> bool:
    """Exact test for quantum dimension 1."""
    level = as_level(level)
    l = orbit.l if isinstance(orbit, LabelOrbit) else orbit[0]
    return l in (0, level.n)


def standard_form(level: LevelLike, orbit: LabelOrbit) -> tuple[int, int]:
    """The representative (l, m) with signed m and |m| <= l.

    This is the form used in the unitary discrete series; every orbit has
    exactly one.
    """
    level = as_level(level)
    N = level.modulus
    for l, m in orbit.forms:
        for signed in (m, m - N):
            if abs(signed) <= l:
                return (l, signed)
    raise AssertionError(f"no |m| <= l form for {orbit} at level {level.n}")


# --- unitarity -----------------------------------------------------------


@dataclass(frozen=True)
class UnitarityClass:
    tag: str  # "NS1", "NS2", "NS3" or "NotUnitary"
    witness: Optional[tuple[int, int, int]] = None  # (n, l, m) for NS3


def _as_fraction(x, name) -> Fraction:
    if isinstance(x, complex):
        raise TypeError(f"{name} must be real, got {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError) as exc:
        raise TypeError(f"{name} must be a real rational, got {x!r}") from exc


def _rational_sqrt(x: Fraction) -> Optional[Fraction]:
    if x < 0:
        return None
    p, q = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if p * p == x.numerator and q * q == x.denominator:
        return Fraction(p, q)
    return None


def _is_half_odd(t: Fraction) -> bool:
    return (2 * t).denominator == 1 and (2 * t).numerator % 2 != 0


def _ns_form(c, h, q):
    a = c / 3 - 1

    def f(t):
        return 2 * h - 2 * t * q + a * (t * t - Fraction(1, 4))

    return a, f


def _ns1(c, h, q) -> bool:
    if c < 3:
        return False
    a, f = _ns_form(c, h, q)
    if a == 0:
        # linear in t over all half-integers: bounded below only if flat
        return q == 0 and h >= 0
    vertex = q / a
    below = Fraction(math.floor(vertex - Fraction(1, 2))) + Fraction(1, 2)
    return f(below) >= 0 and f(below + 1) >= 0


def _ns2(c, h, q) -> bool:
    if c < 3:
        return False
    a, f = _ns_form(c, h, q)
    if 2 * a * h - q * q + c / 3 < 0:
        return False
    # half-integer zeros of f
    if a == 0:
        if q == 0:
            return False  # f is constant; a zero makes f(t +- 1) = 0 too
        roots = [h / q]
    else:
        disc = _rational_sqrt(4 * q * q - 4 * a * (2 * h - a / 4))
        if disc is None:
            return False
        roots = [(2 * q - disc) / (2 * a), (2 * q + disc) / (2 * a)]
    for t in roots:
        if _is_half_odd(t):
            step = 1 if t > 0 else -1
            if f(t + step) < 0:
                return True
    return False


def _ns3(c, h, q) -> Optional[tuple[int, int, int]]:
    if c < 0 or c >= 3:
        return None
    n = 2 * c / (3 - c)
    if n.denominator != 1:
        return None
    n = n.numerator
    m = -q * (n + 2)
    if m.denominator != 1:
        return None
    m = m.numerator
    target = 4 * (n + 2) * h + m * m
    for l in range(abs(m), n + 1, 2):
        if l * (l + 2) == target:
            return (n, l, m)
    return None


def unitarity_class(c, h, q) -> UnitarityClass:
    """Decide which unitarity condition (c, h, q) satisfies.

    NS2 is evaluated with ``2h - 2tq`` in its first clause, mirroring NS1.
    """
    c, h, q = (_as_fraction(x, name) for x, name in ((c, "c"), (h, "h"), (q, "q")))
    if _ns1(c, h, q):
        return UnitarityClass("NS1")
    if _ns2(c, h, q):
        return UnitarityClass("NS2")
    witness = _ns3(c, h, q)
    if witness is not None:
        return UnitarityClass("NS3", witness)
    return UnitarityClass("NotUnitary")
