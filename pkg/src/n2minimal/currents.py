"""Simple currents: the dimension-one sectors and their local subgroups.

The group structure only appears at the level of written forms. The raw
labels with ``l in {0, n}`` form a group of order ``2(n+2)`` under the fusion
formula; the identification ``(l, m) ~ (n-l, m+n+2)`` is the quotient by the
order-two element ``(n, n+2)``, which has statistics phase -1. So a subgroup
with trivial phases never contains it and maps isomorphically onto its
image in the ``n+2`` unit orbits.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Optional

from .fusion import fuse_raw
from .labels import (
    LabelError,
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
    "UnitElement",
    "CurrentGroup",
    "unit_element",
    "unit_forms",
    "unit_product",
    "unit_power",
    "closure",
    "element_order",
    "order_profile",
    "cyclic_product_profile",
    "structure_of",
    "units",
    "unit_group_structure",
    "max_cyclic",
    "half_label_exponent",
    "local_subgroups",
    "orbit_local_subgroups",
    "monodromy_exponent",
    "find_subgroup",
]


@dataclass(frozen=True, order=True)
class UnitElement:
    orbit: LabelOrbit
    written_form: RawLabel
    phase: Fraction

    @property
    def other_form(self) -> RawLabel:
        a, b = self.orbit.forms
        return b if self.written_form == a else a

    def __str__(self):
        return str(self.written_form)


@dataclass(frozen=True)
class CurrentGroup:
    """A group of written-form units closed under fusion.

    ``structure`` lists cyclic factor orders, e.g. ``(6,)`` for Z_6 or
    ``(4, 2)`` for Z_4 x Z_2; ``()`` is the trivial group.
    """

    level: int
    elements: tuple[UnitElement, ...]
    structure: tuple[int, ...]
    generators: tuple[RawLabel, ...]
    details: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def forms(self) -> frozenset[RawLabel]:
        return frozenset(e.written_form for e in self.elements)

    @property
    def orbits(self) -> list[LabelOrbit]:
        return sorted({e.orbit for e in self.elements})

    def is_local(self) -> bool:
        return all(e.phase == 0 for e in self.elements)

    def structure_name(self) -> str:
        if not self.structure:
            return "trivial"
        return " x ".join(f"Z_{k}" for k in self.structure)


def _check_n(level):
    level = as_level(level)
    if level.n < 1:
        raise ValueError("simple-current analysis needs n >= 1")
    return level


def unit_element(level: LevelLike, raw) -> UnitElement:
    level = as_level(level)
    raw = validate_raw(level, *raw)
    if raw.l not in (0, level.n):
        raise LabelError(f"{raw} is not a simple current at level {level.n} (need l in {{0, {level.n}}})")
    return UnitElement(canonicalize(level, raw), raw, statistics_phase(level, raw))


def unit_forms(level: LevelLike) -> list[RawLabel]:
    """All 2(n+2) written forms with l in {0, n}."""
    level = _check_n(level)
    out = [RawLabel(0, m) for m in range(0, level.modulus, 2)]
    out += [RawLabel(level.n, m) for m in range(level.n % 2, level.modulus, 2)]
    return sorted(out)


def unit_product(level: LevelLike, a, b) -> RawLabel:
    (c,) = fuse_raw(level, a, b)
    return c


def unit_power(level: LevelLike, a, k: int) -> RawLabel:
    result = RawLabel(0, 0)
    for _ in range(k):
        result = unit_product(level, result, a)
    return result


def closure(level: LevelLike, gens: Iterable) -> list[RawLabel]:
    """Subgroup of written forms generated by ``gens``, sorted."""
    level = as_level(level)
    gens = [validate_raw(level, *g) for g in gens]
    found = {RawLabel(0, 0)}
    frontier = list(found)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = unit_product(level, x, g)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return sorted(found)


def element_order(level: LevelLike, a) -> int:
    k, x = 1, validate_raw(level, *a)
    while x != (0, 0):
        x = unit_product(level, x, a)
        k += 1
    return k


def order_profile(level: LevelLike, elements) -> Counter:
    """Multiset of element orders; determines a finite abelian group."""
    return Counter(element_order(level, x) for x in elements)


def cyclic_product_profile(factors: tuple[int, ...]) -> Counter:
    """Order profile of Z_a x Z_b x ... computed by brute force."""
    from itertools import product
    from math import gcd

    def lcm(a, b):
        return a * b // gcd(a, b)

    prof: Counter = Counter()
    for coords in product(*(range(k) for k in factors)):
        o = 1
        for x, k in zip(coords, factors):
            o = lcm(o, k // gcd(x, k))
        prof[o] += 1
    return prof


def structure_of(level: LevelLike, elements) -> tuple[int, ...]:
    """Cyclic factor orders of a group of written forms (rank at most two)."""
    elements = list(elements)
    prof = order_profile(level, elements)
    size = len(elements)
    if size == 1:
        return ()
    exponent = max(prof)
    factors = (exponent,) if exponent == size else (exponent, size // exponent)
    if cyclic_product_profile(factors) != prof:
        raise ValueError(f"group of order {size} is not of rank <= 2: {dict(prof)}")
    return factors


def _generators(level, elements: list[RawLabel], structure) -> tuple[RawLabel, ...]:
    if not structure:
        return ()
    top = structure[0]
    g1 = min(x for x in elements if element_order(level, x) == top)
    if len(structure) == 1:
        return (g1,)
    span = set(closure(level, [g1]))
    target = set(elements)
    g2 = min(x for x in elements if x not in span and set(closure(level, [g1, x])) == target)
    return (g1, g2)


def _group(level, forms, details=None) -> CurrentGroup:
    level = as_level(level)
    forms = sorted(set(forms))
    structure = structure_of(level, forms)
    return CurrentGroup(
        level=level.n,
        elements=tuple(unit_element(level, x) for x in forms),
        structure=structure,
        generators=_generators(level, forms, structure),
        details=details or {},
    )


def units(level: LevelLike) -> list[UnitElement]:
    """One element per unit orbit (n+2 in total), written in canonical form."""
    level = _check_n(level)
    return [unit_element(level, o.canonical) for o in spectrum(level) if o.l in (0, level.n)]


def unit_group_structure(level: LevelLike) -> CurrentGroup:
    """The full group of written-form units.

    Odd n: cyclic of order 2(n+2) generated by (n, 1). Even n:
    Z_{n+2} x Z_2 generated by (0, 2) and (n, 0). The descriptor is checked
    against a brute-force order profile.
    """
    level = _check_n(level)
    n = level.n
    if n % 2:
        gens = (RawLabel(n, 1),)
        factors = (2 * (n + 2),)
    else:
        gens = (RawLabel(0, 2), RawLabel(n, 0))
        factors = (n + 2, 2)
    forms = closure(level, gens)
    if len(forms) != 2 * (n + 2) or set(forms) != set(unit_forms(level)):
        raise AssertionError(f"unit closure has order {len(forms)} at n={n}")
    if order_profile(level, forms) != cyclic_product_profile(factors):
        raise AssertionError(f"unit group at n={n} is not {factors}")
    return CurrentGroup(
        level=n,
        elements=tuple(unit_element(level, x) for x in forms),
        structure=factors,
        generators=gens,
        details={"case": "odd" if n % 2 else "even"},
    )


def half_label_exponent(n: int, M: int) -> Fraction:
    """Exponent (mod 1, in units of 2 pi i) of exp(n/2 pi i - M^2/(8(n+2)) pi i)."""
    return (Fraction(n, 2) - Fraction(M * M, 8 * (n + 2))) / 2 % 1


def _formal_phase(n: int, l: int, m: int) -> Fraction:
    # phase of (l, m) evaluated without the parity check
    return Fraction(l * (l + 2) - m * m, 4 * (n + 2)) % 1


def max_cyclic(level: LevelLike) -> CurrentGroup:
    """The maximal group of phase-one currents built by the case analysis
    on n mod 4 (odd n / n = 0 mod 4 / n = 2 mod 4).

    Phases are evaluated on the written forms the construction produces,
    never on orbit representatives. The derivation (p or M, intermediate
    phases, branch taken) is kept in ``details``.
    """
    level = _check_n(level)
    n, N = level.n, level.modulus
    order = 2 * (n + 2)

    if n % 2:
        sigma = RawLabel(n, 1)
        p = next(p for p in range(1, order + 1)
                 if statistics_phase(level, unit_power(level, sigma, p)) == 0)
        gen = unit_power(level, sigma, p)
        return _group(level, closure(level, [gen]),
                      {"case": "A", "p": p, "generator": list(gen)})

    omega_k0 = statistics_phase(level, (n, 0))
    if n % 4 == 0:
        p = next(p for p in range(1, order + 1)
                 if statistics_phase(level, unit_power(level, (0, 2), p)) == 0)
        gen = unit_power(level, (0, 2), p)
        return _group(level, closure(level, [gen, (n, 0)]),
                      {"case": "B", "p": p, "omega_k0": str(omega_k0),
                       "generators": [list(gen), [n, 0]]})

    # n = 2 mod 4
    M = next(M for M in range(2, 2 * N + 1, 2) if _formal_phase(n, 0, M) == 0)
    half = M // 2
    half_valid = half % 2 == 0  # l = 0 needs even m
    omega_half0 = _formal_phase(n, 0, half)
    omega_halfk = _formal_phase(n, n, half)
    premise_odd = Fraction(M * M, 8 * (n + 2))
    premises = (premise_odd.denominator == 1 and premise_odd.numerator % 2 == 1
                and (n // 2) % 2 == 1)
    minus_one = omega_half0 == Fraction(1, 2)
    pm_i = omega_half0 in (Fraction(1, 4), Fraction(3, 4))
    details = {
        "case": "C",
        "M": M,
        "omega_k0": str(omega_k0),
        "half_label_valid": half_valid,
        "omega_0_half": str(omega_half0),
        "omega_k_half": str(omega_halfk),
        "half_label_premises": premises,
        "half_label_exponent": str(half_label_exponent(n, M)),
        "branch_minus_one": {"premise": "omega(0,M/2) = -1", "holds": minus_one,
                             "generator": [n, half % N]},
        "branch_pm_i": {"premise": "omega(0,M/2) = +-i", "holds": pm_i,
                        "generator": [0, M % N]},
    }
    if not half_valid:
        details["warning"] = f"(0,{half}) violates l = m mod 2; phase evaluated formally"
    if minus_one and half_valid:
        details["branch"] = "minus_one"
        forms = closure(level, [(n, half)])
    else:
        details["branch"] = "pm_i" if pm_i else "none"
        forms = closure(level, [(0, M)])
    return _group(level, forms, details)


def local_subgroups(level: LevelLike) -> list[CurrentGroup]:
    """All groups of written-form units on which every phase is trivial.

    Sorted by order, then by generators.
    """
    level = _check_n(level)
    isotropic = [x for x in unit_forms(level) if statistics_phase(level, x) == 0]
    seen: set[frozenset] = set()
    out = []
    for a, b in combinations_with_replacement(isotropic, 2):
        forms = frozenset(closure(level, [a, b]))
        if forms in seen:
            continue
        seen.add(forms)
        if all(statistics_phase(level, x) == 0 for x in forms):
            out.append(_group(level, forms))
    return sorted(out, key=lambda g: (g.order, g.generators))


def orbit_local_subgroups(level: LevelLike) -> list[frozenset[LabelOrbit]]:
    """Subgroups of the unit *orbits* in which every orbit has a phase-zero form.

    This is the orbit-level reading of locality; unlike
    :func:`local_subgroups` it does not require the chosen forms to close.
    """
    level = _check_n(level)
    orbit_units = [canonicalize(level, x) for x in unit_forms(level)]

    def has_zero_form(o):
        return any(statistics_phase(level, f) == 0 for f in o.forms)

    def orbit_closure(gens):
        found = {canonicalize(level, (0, 0))}
        frontier = list(found)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = canonicalize(level, unit_product(level, x.canonical, g.canonical))
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(found)

    cands = sorted({o for o in orbit_units if has_zero_form(o)})
    groups = set()
    for a, b in combinations_with_replacement(cands, 2):
        H = orbit_closure([a, b])
        if all(has_zero_form(o) for o in H):
            groups.add(H)
    return sorted(groups, key=lambda H: (len(H), sorted(H)))


def monodromy_exponent(level: LevelLike, sigma, x) -> Fraction:
    """phase(sigma x) - phase(sigma) - phase(x) mod 1 on written forms."""
    level = as_level(level)
    s = sigma.written_form if isinstance(sigma, UnitElement) else validate_raw(level, *sigma)
    if s.l not in (0, level.n):
        raise LabelError(f"{s} is not a simple current")
    x = validate_raw(level, *x)
    sx = unit_product(level, s, x)
    return (statistics_phase(level, sx) - statistics_phase(level, s)
            - statistics_phase(level, x)) % 1


def find_subgroup(level: LevelLike, forms) -> Optional[CurrentGroup]:
    """The local subgroup with exactly these written forms, if any."""
    target = frozenset(validate_raw(level, *f) for f in forms)
    for g in local_subgroups(level):
        if g.forms == target:
            return g
    return None
