"""Candidate extensions: dual canonical endomorphisms and their invariants.

A candidate ``theta`` is a formal sum of sectors containing the vacuum once.
For a local extension the alpha-induced sectors satisfy

    <alpha_lambda, alpha_mu> = <theta lambda, mu>,

so the multiplicity matrix and its vacuum row (Z_{0, mu} = <theta, mu>) are
computable in the fusion ring alone. Nothing here decides Q-system
existence: :func:`verify_theta` only checks necessary conditions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isfinite
from typing import Optional

import numpy as np

from .currents import (
    CurrentGroup,
    local_subgroups,
    max_cyclic,
    unit_product,
)
from .fusion import Sector, conjugate, fuse_sectors, fusion_matrix, hom_dim, vacuum
from .labels import (
    LabelOrbit,
    LevelLike,
    RawLabel,
    as_level,
    canonicalize,
    spectrum,
    statistics_phase,
    validate_raw,
)

__all__ = [
    "Theta",
    "InvariantRow",
    "Check",
    "Verification",
    "ClassEntry",
    "Classification",
    "ThetaError",
    "theta_from_subgroup",
    "theta_from_forms",
    "exceptional_catalogue",
    "exceptional",
    "alpha_hom_matrix",
    "orbit_count_matrix",
    "vacuum_row",
    "verify_theta",
    "classify",
]

SIMPLE_CURRENT = "simple-current"
EXCEPTIONAL = "exceptional"
CUSTOM = "custom"


class ThetaError(ValueError):
    pass


@dataclass(frozen=True)
class Theta:
    """A candidate dual canonical endomorphism.

    ``forms`` holds one written form per constituent orbit (same order as
    ``sector.terms``): the phase-zero representative when there is one.
    """

    level: int
    sector: Sector
    forms: tuple[RawLabel, ...]
    kind: str
    tag: str
    index: float
    subgroup: Optional[CurrentGroup] = field(default=None, compare=False)

    @property
    def orbits(self) -> list[LabelOrbit]:
        return self.sector.orbits


@dataclass(frozen=True)
class InvariantRow:
    """Z_{0, mu} for every mu in the spectrum, in spectrum order."""

    entries: tuple[tuple[LabelOrbit, int], ...]

    def __getitem__(self, orbit: LabelOrbit) -> int:
        return dict(self.entries)[orbit]

    def nonzero(self) -> list[tuple[LabelOrbit, int]]:
        return [(o, k) for o, k in self.entries if k]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str = ""


@dataclass(frozen=True)
class Verification:
    checks: tuple[Check, ...]
    # the checks are necessary conditions, never sufficient ones
    scope: str = "necessary multiplicity-level conditions only"

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _zero_form(level, orbit: LabelOrbit) -> Optional[RawLabel]:
    for f in orbit.forms:
        if statistics_phase(level, f) == 0:
            return f
    return None


def _make_theta(level, counts_or_sector, kind, tag, forms=None, subgroup=None) -> Theta:
    level = as_level(level)
    sector = counts_or_sector if isinstance(counts_or_sector, Sector) else Sector.from_counts(counts_or_sector)
    if forms is None:
        forms = tuple(_zero_form(level, o) or o.canonical for o in sector.orbits)
    return Theta(
        level=level.n,
        sector=sector,
        forms=tuple(forms),
        kind=kind,
        tag=tag,
        index=sector.dimension(level),
        subgroup=subgroup,
    )


def _subgroup_tag(H: CurrentGroup) -> str:
    gens = ",".join(str(g) for g in H.generators) or "(0,0)"
    return f"{H.structure_name()} <{gens}>"


def theta_from_subgroup(level: LevelLike, H: CurrentGroup) -> Theta:
    """theta = sum of the orbits of H, each once."""
    level = as_level(level)
    forms = sorted(H.forms)
    closed = all(unit_product(level, a, b) in H.forms for a in forms for b in forms)
    if not closed or (0, 0) not in H.forms:
        raise ThetaError(f"{H.structure_name()} is not closed under fusion")
    bad = [f for f in forms if statistics_phase(level, f) != 0]
    if bad:
        raise ThetaError("phase-obstructed currents: " + ", ".join(map(str, bad)))
    orbits = [canonicalize(level, f) for f in forms]
    if len(set(orbits)) != len(orbits):
        raise ThetaError("subgroup contains the identification current (n, n+2)")
    by_orbit = dict(zip(orbits, forms))
    sector = Sector.of(*orbits)
    return _make_theta(level, sector, SIMPLE_CURRENT, _subgroup_tag(H),
                       forms=[by_orbit[o] for o in sector.orbits], subgroup=H)


def theta_from_forms(level: LevelLike, forms, kind=CUSTOM, tag="custom") -> Theta:
    """Build a candidate from written forms without validating it."""
    level = as_level(level)
    raws = [validate_raw(level, *f) for f in forms]
    orbits = [canonicalize(level, f) for f in raws]
    sector = Sector.of(*orbits)
    chosen = {}
    for o, f in zip(orbits, raws):
        chosen.setdefault(o, f)
    return _make_theta(level, sector, kind, tag, forms=[chosen[o] for o in sector.orbits])


_EXCEPTIONAL = {
    "a": (10, [(0, 0), (6, 0)], "E6; conformal embedding SU(2)_10 in SO(5)_1"),
    "b": (10, [(0, 0), (0, 12)], "E6; conformal embedding U(1)_12 in U(1)_3"),
    "c": (10, [(0, 0), (6, 0), (0, 12), (6, 12)], "E6; composite of (a) and (b)"),
    "d": (28, [(0, 0), (10, 0), (18, 0), (28, 0)], "E8; conformal embedding SU(2)_28 in (G_2)_1"),
}

EMBEDDING_NOTE = "embedding origin not verifiable from fusion data"


def exceptional(ident: str) -> Theta:
    try:
        n, forms, note = _EXCEPTIONAL[ident]
    except KeyError:
        raise ThetaError(f"unknown exceptional id {ident!r}; expected one of a, b, c, d") from None
    return theta_from_forms(n, forms, kind=EXCEPTIONAL, tag=ident)


def exceptional_catalogue() -> list[Theta]:
    return [exceptional(k) for k in sorted(_EXCEPTIONAL)]


def exceptional_note(ident: str) -> str:
    return _EXCEPTIONAL[ident][2]


def alpha_hom_matrix(level: LevelLike, theta: Theta) -> np.ndarray:
    """M[lambda, mu] = <theta lambda, mu> over ``spectrum(level)``."""
    return fusion_matrix(level, theta.sector)


def orbit_count_matrix(level: LevelLike, H: CurrentGroup) -> np.ndarray:
    """M[lambda, mu] = #{sigma in H : sigma lambda = mu} by direct group action."""
    level = as_level(level)
    basis = spectrum(level)
    index = {o: i for i, o in enumerate(basis)}
    M = np.zeros((len(basis), len(basis)), dtype=np.int64)
    for i, lam in enumerate(basis):
        for s in H.forms:
            M[i, index[canonicalize(level, unit_product(level, s, lam.canonical))]] += 1
    return M


def vacuum_row(level: LevelLike, theta: Theta) -> InvariantRow:
    counts = theta.sector.counts()
    return InvariantRow(tuple((o, counts.get(o, 0)) for o in spectrum(level)))


def verify_theta(level: LevelLike, theta: Theta) -> Verification:
    level = as_level(level)
    checks = []
    sec = theta.sector

    if theta.level != level.n:
        checks.append(Check("level", False, f"theta is for level {theta.level}"))
        return Verification(tuple(checks))

    vac = sec.mult(vacuum(level))
    checks.append(Check("vacuum_multiplicity", vac == 1, f"<theta, id> = {vac}"))

    obstructed = [o for o in sec.orbits if _zero_form(level, o) is None]
    checks.append(Check(
        "phase_zero_forms", not obstructed,
        "obstructed: " + ", ".join(
            f"{o} (phases {statistics_phase(level, o.canonical)}, {statistics_phase(level, o.partner)})"
            for o in obstructed) if obstructed else "all constituents have an integer-weight form",
    ))

    asym = [o for o, k in sec if sec.mult(conjugate(level, o)) != k]
    checks.append(Check("self_conjugate", not asym,
                        "unpaired: " + ", ".join(map(str, asym)) if asym else ""))

    tt_t = hom_dim(level, fuse_sectors(level, sec, sec), sec)
    t_t = hom_dim(level, sec, sec)
    checks.append(Check("multiplication_room", tt_t >= t_t,
                        f"<theta theta, theta> = {tt_t}, <theta, theta> = {t_t}"))

    checks.append(Check("finite_index", isfinite(theta.index) and theta.index > 0,
                        f"index = {theta.index:.12g}"))

    if theta.kind == SIMPLE_CURRENT and theta.subgroup is not None:
        A = alpha_hom_matrix(level, theta)
        B = orbit_count_matrix(level, theta.subgroup)
        diff = int(np.abs(A - B).sum())
        rows = set(A.sum(axis=1).tolist())
        ok = diff == 0 and rows == {theta.subgroup.order}
        checks.append(Check("orbit_count_oracle", ok,
                            f"entrywise difference {diff}, row sums {sorted(rows)}"))
    return Verification(tuple(checks))


@dataclass(frozen=True)
class ClassEntry:
    name: str
    theta: Theta
    row: InvariantRow
    verification: Verification
    notes: tuple[str, ...] = ()


@dataclass(frozen=True)
class Classification:
    level: int
    max_cyclic: CurrentGroup
    entries: tuple[ClassEntry, ...]

    @property
    def passed(self) -> bool:
        return all(e.verification.passed for e in self.entries)


def classify(level: LevelLike) -> Classification:
    """Every local simple-current extension, plus the exceptional ones at n = 10, 28."""
    level = as_level(level)
    if level.n < 1:
        raise ValueError("classification needs n >= 1")
    top = max_cyclic(level)
    entries = []
    for H in local_subgroups(level):
        th = theta_from_subgroup(level, H)
        notes = () if H.forms <= top.forms else ("not contained in the maximal cyclic group",)
        entries.append(ClassEntry(th.tag, th, vacuum_row(level, th), verify_theta(level, th), notes))
    for th in exceptional_catalogue():
        if th.level == level.n:
            notes = (exceptional_note(th.tag), EMBEDDING_NOTE)
            entries.append(ClassEntry(th.tag, th, vacuum_row(level, th), verify_theta(level, th), notes))
    return Classification(level.n, top, tuple(entries))
