"""One test group per acceptance criterion; each prints a PASS/FAIL line.

The pytest run also prints a per-criterion summary at the end.  Run with
``--full`` for r0(7) by enumeration and ``--extended`` for q(7) as well.
"""

import itertools
import random
from fractions import Fraction
from math import factorial

import pytest

from conftest import record
from rank_arrange import arrangement as arr
from rank_arrange import finitefield as ff
from rank_arrange import unfolding as uf
from rank_arrange.bounds import a_seq, bounds_table, f_seq, lower_ell, order_relations, upper_u
from rank_arrange.chambers import verify_poset_isomorphism
from rank_arrange.errors import BadPrime
from rank_arrange.exactmath import IntPolynomial, interpolate_integer_polynomial, stirling_first_signless
from rank_arrange.reference import load_reference

R0 = {4: 2, 5: 12, 6: 168, 7: 4680, 8: 229386, 9: 18330206, 10: 2241662282}
Q = {3: 3, 4: 28, 5: 365, 6: 11286}
Q_IE = {4: 3, 5: 11, 6: 55}
SEED = 1234


def check(criterion, label, actual, expected):
    ok = actual == expected
    record(criterion, label, ok, f"got {actual}, want {expected}")
    assert ok


# 1 -------------------------------------------------------------------------

@pytest.mark.parametrize("m", [4, 5, 6, 7])
def test_c01_r0_from_charpoly(m):
    chi = ff.charpoly("mid", m).poly
    val = (-1) ** m * chi(-1)
    assert val % factorial(m) == 0
    check(1, f"r0({m}) charpoly", val // factorial(m), R0[m])


def test_c01_extended_r0_8(tmp_path):
    # No runtime promise; about a minute here.  See the notes on this value.
    cache = ff.CountsCache(tmp_path / "counts.tsv")
    res = ff.charpoly("mid", 8, cache=cache, extended=True, extra_checks=3)
    check(1, "extended r0(8) charpoly", res.poly(-1) // factorial(8), R0[8])


# 2 -------------------------------------------------------------------------

@pytest.mark.parametrize("m", [4, 5, 6])
def test_c02_r0_enumerate(m):
    check(2, f"r0({m}) enumerate", uf.r0_enumerate(m), R0[m])


@pytest.mark.full
def test_c02_r0_enumerate_7():
    check(2, "r0(7) enumerate", uf.r0_enumerate(7), R0[7])


# 3 -------------------------------------------------------------------------

PAIRS = [(m, n) for m in (4, 5, 6) for n in (1, 2, 3) if n <= m - 2]


def test_c03_chamber_counts():
    rng = random.Random(SEED)
    bad = []
    for k in range(20):
        m, n = PAIRS[k % len(PAIRS)]
        cfg = arr.random_generic_config(m, n, rng)
        pat, bounded = uf.admissible_rankings(cfg, with_bounded=True)
        s = [stirling_first_signless(m, j) for j in range(m - n, m + 1)]
        want = (sum(s), abs(sum((-1) ** i * v for i, v in enumerate(s))))
        if (len(pat), bounded) != want:
            bad.append((m, n, len(pat), bounded, want))
    check(3, "20 generic configs", bad, [])


# 4 -------------------------------------------------------------------------

def test_c04_all_rankings_m4_n3():
    cfg = arr.random_generic_config(4, 3, random.Random(SEED))
    pat, bounded = uf.admissible_rankings(cfg, with_bounded=True)
    assert set(pat) == set(itertools.permutations(range(1, 5)))
    check(4, "m=4 n=3", (len(pat), bounded), (24, 0))


# 5 -------------------------------------------------------------------------

@pytest.mark.parametrize("m,n", [(4, 1), (4, 2), (5, 2), (5, 3)])
def test_c05_poset_isomorphism(m, n):
    cfg = arr.random_generic_config(m, n, random.Random(SEED + m * 10 + n))
    rep = verify_poset_isomorphism(m, n, cfg)
    check(5, f"poset ({m},{n})", rep.ok, True)


# 6 -------------------------------------------------------------------------

@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_c06_q_charpoly(m):
    check(6, f"q({m}) charpoly", uf.q_from_charpoly(m), Q[m])


@pytest.mark.parametrize("m", [3, 4, 5])
def test_c06_q_enumerate(m):
    q, census = uf.q_enumerate(m)
    check(6, f"q({m}) enumerate + census", (q, census.d_plus, census.d_minus), (Q[m], m, m))


@pytest.mark.extended
def test_c06_extended_q7():
    check(6, "extended q(7) charpoly", uf.q_from_charpoly(7, extended=True), 1066037)


# 7 -------------------------------------------------------------------------

@pytest.mark.parametrize("m", [4, 5])
def test_c07_pattern_equals_slice(m):
    rng = random.Random(SEED + m)
    bad = 0
    for _ in range(10):
        cfg = arr.random_generic_config(m, m - 2, rng)
        if uf.admissible_rankings(cfg) != uf.braid_slice_pattern(uf.v_map(cfg)):
            bad += 1
    check(7, f"m={m} ten configs", bad, 0)


# 8 -------------------------------------------------------------------------

def test_c08_slice_bijection_m4():
    check(8, "m=4 chambers vs patterns", uf.distinct_slice_patterns(4), (32, 32))


# 9 -------------------------------------------------------------------------

@pytest.mark.parametrize("m", [4, 5, 6])
def test_c09_qie_upper(m):
    check(9, f"q_ie_upper({m})", uf.q_ie_upper(m).value, Q_IE[m])


# 10 ------------------------------------------------------------------------

TABLE = [  # m, r0, a, ell, u, f as displayed
    (4, "2", "2", "2", "12", "2"),
    (5, "12", "12", "6", "334", "12"),
    (6, "168", "168", "41", "18,744", "286"),
    (7, "4,680", "4,680", "486", "1.82e6", "33,592"),
    (8, "229,386", "223,920", "9,113", "2.76e8", "23,178,480"),
    (9, "18,330,206", "16,470,720", "246,038", "6.06e10", "108,995,910,720"),
    (10, "2,241,662,282", "1,725,655,680", "9.05e6", "1.81e13", "3,973,186,258,569,120"),
]


def test_c10_table_cells():
    rows = bounds_table(10)
    got = [tuple([r.m] + [r.display()[k] for k in ("r0", "a", "ell", "u", "f")]) for r in rows]
    assert lower_ell(6) == Fraction(81, 2) and upper_u(4).floor() == 12
    assert f_seq(8) == 23178480 and a_seq(9) == 16470720
    check(10, "cells", got, TABLE)


def test_c10_order_relations():
    bad = []
    for r in bounds_table(10):
        rel = order_relations(r)
        if not (rel["ell<=r0"] and rel["r0<u"] and rel["r0<=f"]):
            bad.append(r.m)
        if r.m <= 7 and not rel["r0=a"] or r.m >= 8 and not rel["r0>a"]:
            bad.append(r.m)
    check(10, "order relations", bad, [])


# 11 ------------------------------------------------------------------------

def test_c11_reference_chi():
    ref = load_reference()
    got = {m: ref.chi_mid[m](-1) for m in (9, 10)}
    want = {m: (-1) ** m * factorial(m) * R0[m] for m in (9, 10)}
    check(11, "chi(-1)", got, want)


# 12 ------------------------------------------------------------------------

def test_c12_pattern_1d_vs_chambers():
    rng = random.Random(SEED)
    bad = 0
    for m in (3, 4, 5, 6):
        for _ in range(3):
            cfg = uf.increasing_line_config(rng, m, bound=50)
            bad += uf.pattern_1d(cfg) != uf.admissible_rankings(cfg)
    check(12, "pattern_1d oracle", bad, 0)


def test_c12_symmetries():
    rng = random.Random(SEED)
    bad = 0
    for m, n in [(4, 1), (4, 2), (5, 2)]:
        cfg = arr.random_generic_config(m, n, rng)
        pat = uf.admissible_rankings(cfg)
        # moving every point to -x leaves distances, hence rankings, unchanged
        bad += uf.admissible_rankings(cfg.negated()) != pat
        # listing objects in reverse order relabels i -> m+1-i
        rev = arr.ObjectConfig(cfg.points[::-1])
        bad += uf.admissible_rankings(rev) != pat.relabel({i: m + 1 - i for i in range(1, m + 1)})
    check(12, "negation and reversal", bad, 0)


def test_c12_ray_invariance():
    rng = random.Random(SEED)
    bad = 0
    for m in (4, 5):
        cfg = arr.random_generic_config(m, m - 2, rng)
        d = uf.v_map(cfg)
        for lam in (Fraction(1, 3), 2, 7):
            e = uf.v_map(cfg.scaled(lam))
            # same ray: v' = mu v for some mu > 0, and c'/|v'|^2 = c/|v|^2
            mu = e.v[0] / d.v[0]
            bad += not (mu > 0 and e.v == tuple(mu * x for x in d.v) and e.c == mu**2 * d.c)
            bad += uf.braid_slice_pattern(e) != uf.braid_slice_pattern(d)
    check(12, "v_map ray invariance", bad, 0)


def test_c12_interpolation_round_trip():
    rng = random.Random(SEED)
    bad = 0
    for _ in range(30):
        deg = rng.randint(0, 8)
        p = IntPolynomial(tuple(rng.randint(-10**6, 10**6) for _ in range(deg)) + (1,))
        xs = rng.sample(range(-200, 200), deg + 2)
        bad += interpolate_integer_polynomial([(x, p(x)) for x in xs], deg) != p
    check(12, "interpolation round trip", bad, 0)


def test_c12_counters_agree():
    bad = []
    for fam in ff.FAMILIES:
        for m in range(3, 6):
            a = ff.family_arrangement(fam, m)
            for q in (2, 3, 5, 7, 11, 13):
                if fam == "mid" and q <= m:
                    continue  # the specialized mid counter needs q > m
                try:
                    generic = ff.count_complement_generic(a, q)
                except BadPrime:
                    continue
                if ff.count_family(fam, m, q) != generic:
                    bad.append((fam, m, q))
    check(12, "specialized vs generic counters", bad, [])
