"""Command-line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
JSON goes to stdout; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import re
import sys
from collections import Counter
from fractions import Fraction

from . import report as R
from .currents import (
    closure,
    local_subgroups,
    max_cyclic,
    unit_element,
    unit_group_structure,
    units,
)
from .extensions import (
    CurrentGroup,
    ThetaError,
    alpha_hom_matrix,
    classify,
    exceptional,
    theta_from_subgroup,
    vacuum_row,
    verify_theta,
)
from .fusion import Sector, fuse_raw
from .labels import (
    LabelError,
    canonicalize,
    central_charge,
    spectrum,
    statistics_phase,
    unitarity_class,
    validate_raw,
)


class UsageError(Exception):
    pass


def _level(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"level must be an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"level must be nonnegative, got {n}")
    return n


def _positive_level(n: int) -> int:
    if n < 1:
        raise UsageError(f"this command needs n >= 1, got {n}")
    return n


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    try:
        l, m = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected l,m but got {text!r}") from None
    return l, m


# --- commands ----------------------------------------------------------------
# each returns (level, payload, text, warnings, exit_code)


def cmd_spectrum(args):
    n = args.n
    rows = R.spectrum_rows(n)
    payload = {"c": R.enc_rational(central_charge(n)), "count": len(rows),
               "orbits": [R.enc_spectrum_row(r) for r in rows]}
    text = f"level {n}, c = {central_charge(n)}, {len(rows)} sectors\n" + R.table(
        ["orbit", "partner", "h", "q", "h'", "q'", "omega", "omega'", "d"],
        [[r.orbit.canonical, r.orbit.partner, r.h, r.q, r.h_partner, r.q_partner,
          r.phase, r.phase_partner, R.fmt_float(r.d)] for r in rows],
    )
    return n, payload, text, [], 0


def cmd_fuse(args):
    n = args.n
    a = validate_raw(n, args.l1, args.m1)
    b = validate_raw(n, args.l2, args.m2)
    raw = fuse_raw(n, a, b)
    counts: Counter = Counter()
    written = {}
    for x in raw:
        o = canonicalize(n, x)
        counts[o] += 1
        written.setdefault(o, x)
    sector = Sector.from_counts(counts)
    warnings = []
    if any(k > 1 for k in counts.values()):
        warnings.append("orbit-level multiplicity > 1 in product")
    terms = [{"orbit": R.enc_orbit(o), "mult": k, "written_form": R.enc_raw(written[o])}
             for o, k in sector.terms]
    payload = {"a": R.enc_raw(a), "b": R.enc_raw(b), "terms": terms}
    w_line = " + ".join(f"{k if k > 1 else ''}{written[o]}"
                        for o, k in sorted(sector.terms, key=lambda t: written[t[0]]))
    text = f"{w_line}\ncanonical: {sector}"
    return n, payload, text, warnings, 0


def cmd_simple_currents(args):
    n = _positive_level(args.n)
    us = units(n)
    G = unit_group_structure(n)
    entries = []
    rows = []
    for u in us:
        other = unit_element(n, u.other_form)
        entries.append({"orbit": R.enc_orbit(u.orbit),
                        "forms": [R.enc_unit(u), R.enc_unit(other)]})
        rows.append([u.orbit, u.written_form, u.phase, other.written_form, other.phase])
    payload = {"units": entries, "group": R.enc_group(G)}
    text = (f"unit group: {G.structure_name()} generated by "
            + ", ".join(map(str, G.generators)) + f" (order {G.order} on written forms, "
            f"{len(us)} orbits)\n"
            + R.table(["orbit", "form", "omega", "other form", "omega'"], rows))
    return n, payload, text, [], 0


def _group_text(G: CurrentGroup) -> str:
    lines = [f"{G.structure_name()}: " + ", ".join(str(e.written_form) for e in G.elements)]
    for k, v in G.details.items():
        lines.append(f"  {k}: {v}")
    return "\n".join(lines)


def cmd_max_cyclic(args):
    n = _positive_level(args.n)
    G = max_cyclic(n)
    warnings = [G.details["warning"]] if "warning" in G.details else []
    return n, R.enc_group(G), _group_text(G), warnings, 0


def _entry_text(name, theta, row, ver, notes=()) -> str:
    lines = [
        f"[{name}] theta = {R.written_sum(theta)}   (canonical: {theta.sector})",
        f"  index = {R.fmt_float(theta.index)}",
        "  vacuum row: " + ", ".join(f"Z[{o}]={k}" for o, k in row.nonzero()),
        f"  checks ({ver.scope}):",
    ]
    for c in ver.checks:
        lines.append(f"    {'ok  ' if c.passed else 'FAIL'} {c.name}" + (f": {c.witness}" if c.witness else ""))
    lines += [f"  note: {s}" for s in notes]
    return "\n".join(lines)


def cmd_classify(args):
    n = _positive_level(args.n)
    cl = classify(n)
    warnings = [f"{e.name}: {c.name} failed ({c.witness})"
                for e in cl.entries for c in e.verification.failures()]
    parts = [f"level {n}, c = {central_charge(n)}",
             "maximal group: " + _group_text(cl.max_cyclic)]
    parts += [_entry_text(e.name, e.theta, e.row, e.verification, e.notes) for e in cl.entries]
    return n, R.enc_classification(cl), "\n\n".join(parts), warnings, 1 if warnings else 0


def cmd_invariant(args):
    n = args.n
    if args.exceptional:
        theta = exceptional(args.exceptional)
        if theta.level != n:
            raise UsageError(f"exceptional {args.exceptional} lives at level {theta.level}, not {n}")
    else:
        _positive_level(n)
        gens = [validate_raw(n, *g) for g in args.subgroup]
        for g in gens:
            unit_element(n, g)  # raises on non-units
        forms = closure(n, gens)
        match = [H for H in local_subgroups(n) if H.forms == frozenset(forms)]
        if not match:
            bad = [f for f in forms if statistics_phase(n, f) != 0]
            msg = "subgroup generated by " + ", ".join(map(str, gens)) + " is not local: " + \
                  ", ".join(f"omega{f} = exp(2 pi i {statistics_phase(n, f)})" for f in bad)
            payload = {"local": False, "forms": [R.enc_raw(f) for f in forms]}
            return n, payload, msg, [msg], 1
        theta = theta_from_subgroup(n, match[0])
    M = alpha_hom_matrix(n, theta)
    row = vacuum_row(n, theta)
    ver = verify_theta(n, theta)
    basis = spectrum(n)
    payload = {
        "theta": R.enc_theta(theta),
        "basis": [R.enc_orbit(o) for o in basis],
        "alpha_hom_matrix": M.tolist(),
        "vacuum_row": R.enc_row(row),
        "verification": R.enc_verification(ver),
    }
    text = _entry_text(theta.tag, theta, row, ver) + "\n\n<theta lambda, mu> (nonzero entries):\n"
    text += "\n".join(
        f"  {basis[i]} -> " + ", ".join(f"{basis[j]}:{M[i, j]}" for j in range(len(basis)) if M[i, j])
        for i in range(len(basis))
    )
    warnings = [f"{c.name} failed ({c.witness})" for c in ver.failures()]
    return n, payload, text, warnings, 1 if warnings else 0


def cmd_unitarity(args):
    u = unitarity_class(args.c, args.h, args.q)
    payload = {"c": R.enc_rational(args.c), "h": R.enc_rational(args.h), "q": R.enc_rational(args.q),
               "tag": u.tag, "witness": list(u.witness) if u.witness else None}
    text = u.tag + (f" (n={u.witness[0]}, l={u.witness[1]}, m={u.witness[2]})" if u.witness else "")
    level = u.witness[0] if u.witness else None
    return level, payload, text, [], 0


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["table", "json"], default=argparse.SUPPRESS)
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(
        prog="n2minimal",
        description="Sector data and extensions of the N=2 minimal models c = 3n/(n+2).",
    )
    # separate actions: subcommand flags must not inherit these defaults
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--quiet", action="store_true", help="no warnings on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectrum", parents=[common], help="list all sectors")
    s.add_argument("n", type=_level)
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("fuse", parents=[common], help="fuse two labels")
    s.add_argument("n", type=_level)
    for name in ("l1", "m1", "l2", "m2"):
        s.add_argument(name, type=int)
    s.set_defaults(func=cmd_fuse)

    s = sub.add_parser("simple-currents", parents=[common], help="dimension-one sectors")
    s.add_argument("n", type=_level)
    s.set_defaults(func=cmd_simple_currents)

    s = sub.add_parser("max-cyclic", parents=[common], help="maximal group of local currents")
    s.add_argument("n", type=_level)
    s.set_defaults(func=cmd_max_cyclic)

    s = sub.add_parser("classify", parents=[common], help="all extensions at level n")
    s.add_argument("n", type=_level)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("invariant", parents=[common], help="multiplicity matrix of one extension")
    s.add_argument("n", type=_level)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--subgroup", nargs="+", type=_pair, metavar="L,M",
                   help="written-form generators of a local current group")
    g.add_argument("--exceptional", choices=["a", "b", "c", "d"])
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("unitarity", parents=[common], help="classify (c, h, q)")
    # let "-1/3" parse as a value rather than an option
    s._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")
    s.add_argument("c", type=_rational)
    s.add_argument("h", type=_rational)
    s.add_argument("q", type=_rational)
    s.set_defaults(func=cmd_unitarity)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        level, payload, text, warnings, code = args.func(args)
    except (LabelError, UsageError, ThetaError) as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "json":
        print(R.envelope(args.command, level, payload, warnings))
    else:
        print(text)
    if warnings and not args.quiet:
        for w in warnings:
            print(f"warning: {w}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
