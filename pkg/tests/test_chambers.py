import random
from fractions import Fraction

import pytest

from rank_arrange import arrangement as arr
from rank_arrange.chambers import (ConstraintRegion, enumerate_chambers, increasing_region, intersection_poset,
                                   is_bounded, partition_map, refines, set_partitions, zaslavsky_counts)
from rank_arrange.errors import BudgetExceeded, InfeasibleRegion
from rank_arrange.exactmath import IntPolynomial, interpolate_integer_polynomial, stirling_first_signless
from rank_arrange.finitefield import count_complement_generic, primes_above


def _signs_ok(a, c):
    return all(h.side(c.witness) == (1 if s == "+" else -1) for h, s in zip(a.hyperplanes, c.signs))


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_braid_chambers_are_permutations(m):
    a = arr.braid(m)
    chs = enumerate_chambers(a)
    assert len(chs) == len({tuple(sorted(range(m), key=lambda i: c.witness[i])) for c in chs}) == \
        {2: 2, 3: 6, 4: 24, 5: 120}[m]
    assert all(_signs_ok(a, c) for c in chs)


def test_sign_vectors_distinct_and_sorted():
    chs = enumerate_chambers(arr.mid_hyperplane(4))
    signs = [c.signs for c in chs]
    assert signs == sorted(set(signs))


@pytest.mark.parametrize("a,chi", [
    (arr.braid(4), IntPolynomial.from_roots([0, 1, 2, 3])),
    (arr.mid_hyperplane(4), IntPolynomial((0, -15, 23, -9, 1))),
    (arr.all_subset_restricted(4), None),
])
def test_zaslavsky_cross_check(a, chi):
    if chi is None:
        pts = [(q, count_complement_generic(a, q)) for q in (11, 13, 17, 19, 23)]
        chi = interpolate_integer_polynomial(pts, a.dim)
    total, _ = zaslavsky_counts(chi, a.dim)
    assert len(enumerate_chambers(a)) == total


@pytest.mark.parametrize("m,n", [(4, 1), (4, 2), (5, 2)])
def test_bounded_counts_against_point_counts(m, n):
    # chi of the unfolding arrangement from point counts, independent of the Stirling formula
    cfg = arr.random_generic_config(m, n, random.Random(m * 7 + n), bound=20)
    a = arr.unfolding_arrangement(cfg)
    gen = primes_above(1000)
    pts = [(q, count_complement_generic(a, q)) for q in [next(gen) for _ in range(n + 2)]]
    chi = interpolate_integer_polynomial(pts, n)
    total, bounded = zaslavsky_counts(chi, n)
    chs = enumerate_chambers(a)
    assert len(chs) == total == sum(stirling_first_signless(m, k) for k in range(m - n, m + 1))
    assert sum(is_bounded(c, a) for c in chs) == bounded


def test_negation_maps_chambers_to_chambers():
    a = arr.mid_hyperplane(4)
    signs = {c.signs for c in enumerate_chambers(a)}
    flip = {s.translate(str.maketrans("+-", "-+")) for s in signs}
    assert signs == flip


def test_within_region():
    chs = enumerate_chambers(arr.braid(3), within=increasing_region(3))
    assert len(chs) == 1 and chs[0].witness[0] < chs[0].witness[1] < chs[0].witness[2]
    empty = ConstraintRegion.from_pairs(1, [([1], 0), ([-1], 0)])
    with pytest.raises(InfeasibleRegion):
        enumerate_chambers(arr.Arrangement(1, (arr.Hyperplane.from_equation([1], 5),)), within=empty)
    with pytest.raises(BudgetExceeded):
        enumerate_chambers(arr.braid(4), max_chambers=5)


def test_workers_give_same_result():
    a = arr.mid_hyperplane(4)
    assert enumerate_chambers(a, workers=2) == enumerate_chambers(a)


def test_bounded_on_a_line():
    a = arr.unfolding_arrangement(arr.ObjectConfig.line([0, 1, 3]))
    assert sorted(is_bounded(c, a) for c in enumerate_chambers(a)) == [False, False, True, True]


def test_zaslavsky_non_essential():
    # braid(3) has a one-dimensional center, so nothing is bounded
    assert zaslavsky_counts(IntPolynomial.from_roots([0, 1, 2]), 3) == (6, 0)


def test_braid_poset_is_partition_lattice():
    a = arr.braid(4)
    p = intersection_poset(a)
    ranks = {r: len(v) for r, v in p.by_rank().items()}
    assert ranks == {0: 1, 1: 6, 2: 7, 3: 1}
    parts = {partition_map(a, x, 4) for x in p.elements}
    assert len(parts) == 15 == len(list(set_partitions(4)))


def test_refines():
    assert refines(((1,), (2,), (3,)), ((1, 2), (3,)))
    assert not refines(((1, 3), (2,)), ((1, 2), (3,)))
