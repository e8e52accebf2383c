"""JSON encoding/decoding and plain-text tables for command output.

Encodings: orbits are ``{"l", "m", "partner": [l, m]}``, rationals are
``{"num", "den"}``, written forms are ``[l, m]``. Every decoder inverts its
encoder exactly, so payloads re-parse into equal in-memory values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .currents import CurrentGroup, UnitElement
from .extensions import (
    Check,
    ClassEntry,
    Classification,
    InvariantRow,
    Theta,
    Verification,
)
from .fusion import Sector
from .labels import (
    LabelOrbit,
    LevelLike,
    RawLabel,
    as_level,
    canonicalize,
    charge,
    phase_pair,
    qdim,
    spectrum,
    weight,
)

SCHEMA_VERSION = "1.0.0"


# --- primitives ------------------------------------------------------------


def enc_rational(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def dec_rational(d: dict) -> Fraction:
    return Fraction(d["num"], d["den"])


def enc_orbit(o: LabelOrbit) -> dict:
    return {"l": o.l, "m": o.m, "partner": [o.partner.l, o.partner.m]}


def dec_orbit(level: LevelLike, d: dict) -> LabelOrbit:
    o = canonicalize(level, (d["l"], d["m"]))
    if o.canonical != (d["l"], d["m"]) or list(o.partner) != list(d["partner"]):
        raise ValueError(f"inconsistent orbit encoding {d}")
    return o


def enc_raw(r: RawLabel) -> list:
    return [r.l, r.m]


def dec_raw(x) -> RawLabel:
    return RawLabel(int(x[0]), int(x[1]))


def enc_sector(s: Sector) -> list:
    return [{"orbit": enc_orbit(o), "mult": k} for o, k in s.terms]


def dec_sector(level, items) -> Sector:
    return Sector.from_counts({dec_orbit(level, t["orbit"]): t["mult"] for t in items})


# --- spectrum --------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumRow:
    orbit: LabelOrbit
    h: Fraction
    q: Fraction
    h_partner: Fraction
    q_partner: Fraction
    phase: Fraction
    phase_partner: Fraction
    d: float
    unit: bool


def spectrum_rows(level: LevelLike) -> list[SpectrumRow]:
    level = as_level(level)
    rows = []
    for o in spectrum(level):
        p, pp = phase_pair(level, o)
        rows.append(SpectrumRow(
            o, weight(level, o.canonical), charge(level, o.canonical),
            weight(level, o.partner), charge(level, o.partner),
            p, pp, qdim(level, o), o.l in (0, level.n),
        ))
    return rows


_RATIONAL_FIELDS = ("h", "q", "h_partner", "q_partner", "phase", "phase_partner")


def enc_spectrum_row(r: SpectrumRow) -> dict:
    out = {"orbit": enc_orbit(r.orbit)}
    out.update({f: enc_rational(getattr(r, f)) for f in _RATIONAL_FIELDS})
    out["d"] = r.d
    out["unit"] = r.unit
    return out


def dec_spectrum_row(level, d: dict) -> SpectrumRow:
    return SpectrumRow(
        orbit=dec_orbit(level, d["orbit"]),
        d=d["d"],
        unit=d["unit"],
        **{f: dec_rational(d[f]) for f in _RATIONAL_FIELDS},
    )


# --- groups ----------------------------------------------------------------


def enc_unit(u: UnitElement) -> dict:
    return {"orbit": enc_orbit(u.orbit), "written_form": enc_raw(u.written_form),
            "phase": enc_rational(u.phase)}


def dec_unit(level, d) -> UnitElement:
    return UnitElement(dec_orbit(level, d["orbit"]), dec_raw(d["written_form"]),
                       dec_rational(d["phase"]))


def enc_group(g: CurrentGroup) -> dict:
    return {
        "structure": list(g.structure),
        "name": g.structure_name(),
        "generators": [enc_raw(x) for x in g.generators],
        "elements": [enc_unit(u) for u in g.elements],
        "details": g.details,
    }


def dec_group(level, d) -> CurrentGroup:
    return CurrentGroup(
        level=as_level(level).n,
        elements=tuple(dec_unit(level, u) for u in d["elements"]),
        structure=tuple(d["structure"]),
        generators=tuple(dec_raw(x) for x in d["generators"]),
        details=d.get("details", {}),
    )


# --- extensions ------------------------------------------------------------


def enc_theta(t: Theta) -> dict:
    return {
        "level": t.level,
        "kind": t.kind,
        "tag": t.tag,
        "terms": [{"orbit": enc_orbit(o), "mult": k, "written_form": enc_raw(f)}
                  for (o, k), f in zip(t.sector.terms, t.forms)],
        "index": t.index,
    }


def dec_theta(d) -> Theta:
    n = d["level"]
    return Theta(
        level=n,
        sector=dec_sector(n, d["terms"]),
        forms=tuple(dec_raw(t["written_form"]) for t in d["terms"]),
        kind=d["kind"],
        tag=d["tag"],
        index=d["index"],
    )


def enc_row(r: InvariantRow) -> list:
    return [{"orbit": enc_orbit(o), "value": k} for o, k in r.nonzero()]


def dec_row(level, items) -> InvariantRow:
    vals = {dec_orbit(level, t["orbit"]): t["value"] for t in items}
    return InvariantRow(tuple((o, vals.get(o, 0)) for o in spectrum(level)))


def enc_verification(v: Verification) -> dict:
    return {
        "passed": v.passed,
        "scope": v.scope,
        "checks": [{"name": c.name, "passed": c.passed, "witness": c.witness} for c in v.checks],
    }


def dec_verification(d) -> Verification:
    return Verification(tuple(Check(c["name"], c["passed"], c["witness"]) for c in d["checks"]),
                        d["scope"])


def enc_entry(e: ClassEntry) -> dict:
    return {
        "name": e.name,
        "theta": enc_theta(e.theta),
        "vacuum_row": enc_row(e.row),
        "verification": enc_verification(e.verification),
        "notes": list(e.notes),
    }


def dec_entry(level, d) -> ClassEntry:
    return ClassEntry(d["name"], dec_theta(d["theta"]), dec_row(level, d["vacuum_row"]),
                      dec_verification(d["verification"]), tuple(d["notes"]))


def enc_classification(c: Classification) -> dict:
    return {
        "level": c.level,
        "passed": c.passed,
        "max_cyclic": enc_group(c.max_cyclic),
        "entries": [enc_entry(e) for e in c.entries],
    }


def dec_classification(d) -> Classification:
    n = d["level"]
    return Classification(n, dec_group(n, d["max_cyclic"]),
                          tuple(dec_entry(n, e) for e in d["entries"]))


# --- envelope and tables ---------------------------------------------------


def envelope(command: str, level, payload, warnings=()) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "level": level,
        "command": command,
        "payload": payload,
        "warnings": list(warnings),
    }
    return json.dumps(doc, indent=2)


def fmt_float(x: float) -> str:
    return f"{x:.12g}"


def table(headers, rows) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def written_sum(theta: Theta) -> str:
    return " + ".join(f"{k if k > 1 else ''}{f}" for (_, k), f in zip(theta.sector.terms, theta.forms))
