"""Fusion ring of the level-n model.

Products are computed on raw labels with

    (l1, m1)(l2, m2) = sum over |l1-l2| <= l <= min(l1+l2, 2n-l1-l2),
                       l + l1 + l2 even, of (l, m1+m2)

and then canonicalized. Elements of the ring are :class:`Sector` values,
finite formal sums of orbits with positive multiplicities.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

import numpy as np

from .labels import (
    LabelOrbit,
    LevelLike,
    RawLabel,
    as_level,
    canonicalize,
    qdim,
    spectrum,
    validate_raw,
)

__all__ = [
    "Sector",
    "vacuum",
    "fuse_raw",
    "fuse",
    "fuse_sectors",
    "power",
    "conjugate",
    "hom_dim",
    "fusion_matrix",
]


@dataclass(frozen=True)
class Sector:
    """Formal sum of orbits; ``terms`` is sorted and has no zero entries."""

    terms: tuple[tuple[LabelOrbit, int], ...] = ()

    @classmethod
    def from_counts(cls, counts: Mapping[LabelOrbit, int]) -> "Sector":
        for orb, k in counts.items():
            if k < 0:
                raise ValueError(f"negative multiplicity {k} for {orb}")
        return cls(tuple(sorted((o, k) for o, k in counts.items() if k)))

    @classmethod
    def of(cls, *orbits: LabelOrbit) -> "Sector":
        return cls.from_counts(Counter(orbits))

    def mult(self, orbit: LabelOrbit) -> int:
        return dict(self.terms).get(orbit, 0)

    def counts(self) -> dict[LabelOrbit, int]:
        return dict(self.terms)

    @property
    def orbits(self) -> list[LabelOrbit]:
        return [o for o, _ in self.terms]

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "Sector") -> "Sector":
        total = Counter(self.counts())
        total.update(other.counts())
        return Sector.from_counts(total)

    def __mul__(self, k: int) -> "Sector":
        return Sector.from_counts({o: k * c for o, c in self.terms})

    __rmul__ = __mul__

    def dimension(self, level: LevelLike) -> float:
        return sum(k * qdim(level, o) for o, k in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{k if k > 1 else ''}{o}" for o, k in self.terms)


def vacuum(level: LevelLike) -> LabelOrbit:
    return canonicalize(level, (0, 0))


def fuse_raw(level: LevelLike, a, b) -> list[RawLabel]:
    """Apply the fusion formula to two raw labels, without identification."""
    level = as_level(level)
    (l1, m1), (l2, m2) = validate_raw(level, *a), validate_raw(level, *b)
    m = (m1 + m2) % level.modulus
    top = min(l1 + l2, 2 * level.n - l1 - l2)
    return [RawLabel(l, m) for l in range(abs(l1 - l2), top + 1, 2)]


@lru_cache(maxsize=None)
def _fuse(n: int, a: RawLabel, b: RawLabel) -> Sector:
    return Sector.from_counts(Counter(canonicalize(n, x) for x in fuse_raw(n, a, b)))


def fuse(level: LevelLike, a: LabelOrbit, b: LabelOrbit) -> Sector:
    return _fuse(as_level(level).n, a.canonical, b.canonical)


def fuse_sectors(level: LevelLike, a: Sector, b: Sector) -> Sector:
    n = as_level(level).n
    total: Counter = Counter()
    for x, j in a.terms:
        for y, k in b.terms:
            for z, r in _fuse(n, x.canonical, y.canonical).terms:
                total[z] += j * k * r
    return Sector.from_counts(total)


def power(level: LevelLike, a: LabelOrbit, k: int) -> Sector:
    if k < 0:
        raise ValueError("power exponent must be nonnegative")
    result = Sector.of(vacuum(level))
    single = Sector.of(a)
    for _ in range(k):
        result = fuse_sectors(level, result, single)
    return result


def conjugate(level: LevelLike, a: LabelOrbit) -> LabelOrbit:
    return canonicalize(level, (a.l, -a.m))


def hom_dim(level: LevelLike, a: Sector, b: Sector) -> int:
    """dim Hom(a, b) for semisimple formal sums."""
    bc = b.counts()
    return sum(k * bc.get(o, 0) for o, k in a.terms)


def _as_sector(x) -> Sector:
    return x if isinstance(x, Sector) else Sector.of(x)


def fusion_matrix(level: LevelLike, a, basis: Iterable[LabelOrbit] | None = None) -> np.ndarray:
    """N_a[x, y] = <a x, y>, indexed by ``spectrum(level)`` unless ``basis`` is given.

    ``a`` may be an orbit or a :class:`Sector`; the latter gives the sum of
    the constituents' matrices.
    """
    basis = spectrum(level) if basis is None else list(basis)
    index = {o: i for i, o in enumerate(basis)}
    a = _as_sector(a)
    N = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for i, x in enumerate(basis):
        for y, k in fuse_sectors(level, a, Sector.of(x)).terms:
            N[i, index[y]] += k
    return N
