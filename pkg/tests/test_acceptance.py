"""Exit criteria. Each test carries a ``criterion`` mark; the summary prints one
PASS/FAIL line per criterion (see conftest.py)."""

import json
import subprocess
import sys
import time
from collections import Counter
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from n2minimal import report as R
from n2minimal.currents import local_subgroups, max_cyclic, unit_group_structure
from n2minimal.extensions import alpha_hom_matrix, classify, exceptional_catalogue, theta_from_subgroup
from n2minimal.fusion import Sector, conjugate, fuse, fuse_raw, fuse_sectors, hom_dim, vacuum
from n2minimal.labels import canonicalize, orbit_of, phase_pair, qdim, spectrum, statistics_phase, weight

crit = pytest.mark.criterion


# --- independent oracles -------------------------------------------------------


def quotient_count(n):
    N = 2 * n + 4
    raw = [(l, m) for l in range(n + 1) for m in range(N) if (l - m) % 2 == 0]
    classes = {}
    for l, m in raw:
        key = min((l, m), (n - l, (m + n + 2) % N))
        classes.setdefault(key, set()).add((l, m))
    return len(classes)


def unit_mul(n, a, b):
    return (0 if a[0] == b[0] else n, (a[1] + b[1]) % (2 * n + 4))


def cyclic_closure(n, g):
    out, x = [(0, 0)], g
    while x != (0, 0):
        out.append(x)
        x = unit_mul(n, x, g)
    return out


def order(n, x):
    return len(cyclic_closure(n, x))


def orders_of_product(a, b):
    from math import gcd
    return Counter(
        (a // gcd(i, a)) * (b // gcd(j, b)) // gcd(a // gcd(i, a), b // gcd(j, b))
        for i in range(a) for j in range(b)
    )


def action_count(n, forms, lam, mu):
    N = 2 * n + 4
    return sum(
        canonicalize(n, (lam.l if ls == 0 else n - lam.l, (lam.m + ms) % N)) == mu
        for ls, ms in forms
    )


# --- criteria ------------------------------------------------------------------


@crit(1, "spectrum count (n+1)(n+2)/2 = brute-force quotient, n <= 64, < 1 s")
def test_c1_spectrum_counts():
    t0 = time.perf_counter()
    for n in range(65):
        assert len(spectrum(n)) == quotient_count(n) == (n + 1) * (n + 2) // 2
    assert time.perf_counter() - t0 < 1.0


@crit(2, "fusion ring axioms exhaustive for n <= 10, < 30 s")
def test_c2_fusion_axioms():
    t0 = time.perf_counter()
    for n in range(11):
        sp = spectrum(n)
        vac = vacuum(n)
        single = {a: Sector.of(a) for a in sp}
        prods = {(a, b): fuse(n, a, b) for a in sp for b in sp}
        for a in sp:
            assert prods[vac, a] == single[a] == prods[a, vac]
        for a, b in product(sp, repeat=2):
            assert prods[a, b] == prods[b, a]
            for x, y in product(a.forms, b.forms):
                assert Sector.of(*(canonicalize(n, z) for z in fuse_raw(n, x, y))) == prods[a, b]
        # structure constants T[a, b, c] = <a b, c>
        idx = {o: i for i, o in enumerate(sp)}
        T = np.zeros((len(sp),) * 3, dtype=np.int64)
        for (a, b), s in prods.items():
            for c, k in s:
                T[idx[a], idx[b], idx[c]] = k
        assert np.array_equal(np.einsum("abe,ecd->abcd", T, T), np.einsum("bce,aed->abcd", T, T))
        bar = [idx[conjugate(n, a)] for a in sp]
        assert np.array_equal(T, T[bar].transpose(0, 2, 1))
        # spot-check the tensor reading against sector arithmetic
        for a, b, c in list(product(sp, repeat=3))[:: max(1, len(sp) ** 3 // 2000)]:
            assert fuse_sectors(n, prods[a, b], single[c]) == fuse_sectors(n, single[a], prods[b, c])
    assert time.perf_counter() - t0 < 30.0


@crit(3, "dimension homomorphism |d(a)d(b) - sum N d| < 1e-8, n <= 12")
def test_c3_dimension_homomorphism():
    for n in range(13):
        sp = spectrum(n)
        for a, b in product(sp, repeat=2):
            total = sum(k * qdim(n, c) for c, k in fuse(n, a, b))
            assert abs(qdim(n, a) * qdim(n, b) - total) < 1e-8


@crit(4, "phase half-shift between representatives, exact, n <= 64")
def test_c4_half_shift():
    for n in range(65):
        for o in spectrum(n):
            p, q = phase_pair(n, o)
            assert (p - q) % 1 == Fraction(1, 2)


@crit(5, "unit group structure: odd n cyclic Z_2(n+2) via (n,1); even n Z_(n+2) x Z_2; omega(k,0)")
def test_c5_structure_claims():
    for n in range(1, 34, 2):
        elems = cyclic_closure(n, (n, 1))
        assert len(elems) == 2 * (n + 2)
        for N in range(n + 2):
            assert canonicalize(n, elems[2 * N]) == orbit_of(n, 0, 2 * N)
        G = unit_group_structure(n)
        assert G.structure == (2 * (n + 2),) and set(G.forms) == set(elems)
    for n in range(2, 33, 2):
        G = unit_group_structure(n)
        assert G.structure == (n + 2, 2)
        assert set(G.generators) == {(0, 2), (n, 0)}
        assert Counter(order(n, x) for x in G.forms) == orders_of_product(n + 2, 2)
        assert order(n, (0, 2)) == n + 2 and order(n, (n, 0)) == 2
        assert (n, 0) not in cyclic_closure(n, (0, 2))
    for k in range(2, 65, 2):
        want = 0 if k % 4 == 0 else Fraction(1, 2)
        assert statistics_phase(k, (k, 0)) == want


@crit(6, "exp(pi i (n/2 - M^2/(8(n+2)))) = 1 whenever the half-label branch applies, n = 2 mod 4, n <= 62")
def test_c6_half_label_phase():
    hit = 0
    for n in range(2, 63, 4):
        M = next(M for M in range(2, 4 * n + 9, 2) if Fraction(M * M, 4 * (n + 2)).denominator == 1)
        g = max_cyclic(n)
        assert g.details["M"] == M
        a = Fraction(M * M, 8 * (n + 2))
        if a.denominator == 1 and a.numerator % 2 and (n // 2) % 2:
            hit += 1
            # exponent of 2 pi i
            assert ((Fraction(n, 2) - a) / 2) % 1 == 0
            assert g.details["half_label_premises"] and g.details["half_label_exponent"] == "0"
    assert hit > 0


@crit(7, "simple-current hom matrix <theta_H lambda, mu> = #{s in H: s lambda = mu}, rows sum |H|, n <= 12")
def test_c7_current_action_count():
    for n in range(1, 13):
        sp = spectrum(n)
        for H in local_subgroups(n):
            M = alpha_hom_matrix(n, theta_from_subgroup(n, H))
            oracle = np.array([[action_count(n, H.forms, lam, mu) for mu in sp] for lam in sp])
            assert np.array_equal(M, oracle)
            assert (M.sum(axis=1) == H.order).all()


@crit(8, "exceptional catalogue (a)-(d): weights, vacuum, conjugation, index, closure, classify output")
def test_c8_exceptional():
    cat = {t.tag: t for t in exceptional_catalogue()}
    want = {"a": (10, [0, 1]), "b": (10, [0, -3]), "c": (10, [0, 1, -3, -2]), "d": (28, [0, 1, 3, 7])}
    for tag, (n, ws) in want.items():
        t = cat[tag]
        assert t.level == n
        assert sorted(weight(n, f) for f in t.forms) == sorted(ws)
        assert t.sector.mult(vacuum(n)) == 1
        assert all(t.sector.mult(conjugate(n, o)) == k for o, k in t.sector)
    assert abs(cat["a"].index - (3 + 3 ** 0.5)) < 1e-9
    z = orbit_of(10, 0, 12)
    c_orbits = set(cat["c"].orbits)
    assert {fuse(10, z, o).orbits[0] for o in c_orbits} == c_orbits
    ex10 = [e.name for e in classify(10).entries if e.theta.kind == "exceptional"]
    ex28 = [e.name for e in classify(28).entries if e.theta.kind == "exceptional"]
    assert ex10 == ["a", "b", "c"] and ex28 == ["d"]


@crit(9, "vacuum row = vacuum row of <theta lambda, mu> for classify output, n <= 12 and n = 28")
def test_c9_vacuum_row():
    for n in list(range(1, 13)) + [28]:
        sp = spectrum(n)
        i0 = sp.index(vacuum(n))
        for e in classify(n).entries:
            M = alpha_hom_matrix(n, e.theta)
            row = [hom_dim(n, e.theta.sector, Sector.of(mu)) for mu in sp]
            assert [k for _, k in e.row.entries] == M[i0].tolist() == row


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "n2minimal", *map(str, args)],
                          capture_output=True)


@crit(10, "CLI: JSON round-trip, byte-identical reruns, exit codes 0/1/2")
def test_c10_cli():
    cases = [
        (("spectrum", 10, "--format", "json"), 0),
        (("classify", 10, "--format", "json"), 0),
        (("invariant", 28, "--exceptional", "d", "--format", "json"), 0),
        (("fuse", 2, 1, 1, 1, 1), 0),
        (("unitarity", "1", "1/6", "-1/3"), 0),
        (("invariant", 2, "--subgroup", "0,2"), 1),
        (("spectrum", -3), 2),
        (("fuse", 2, 1, 0, 1, 1), 2),
        (("classify", 0), 2),
        (("invariant", 4, "--exceptional", "a"), 2),
        (("nonsense",), 2),
    ]
    for args, code in cases:
        first, second = _cli(*args), _cli(*args)
        assert first.returncode == code, (args, first.stderr)
        assert first.stdout == second.stdout
    spectrum_doc = json.loads(_cli("spectrum", 10, "--format", "json").stdout)
    assert [R.dec_spectrum_row(10, r) for r in spectrum_doc["payload"]["orbits"]] == R.spectrum_rows(10)
    cl_doc = json.loads(_cli("classify", 10, "--format", "json").stdout)
    assert R.dec_classification(cl_doc["payload"]) == classify(10)
    inv_doc = json.loads(_cli("invariant", 28, "--exceptional", "d", "--format", "json").stdout)
    theta = R.dec_theta(inv_doc["payload"]["theta"])
    assert theta == exceptional_catalogue()[3]
    assert np.array_equal(np.array(inv_doc["payload"]["alpha_hom_matrix"]), alpha_hom_matrix(28, theta))
