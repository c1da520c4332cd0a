"""Rankings produced by unfolding models and counts of ranking patterns.

A ranking is a tuple ``(i_1, ..., i_m)`` of 1-based object labels listed from
most preferred (closest to the judge) to least preferred.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

from . import arrangement as arr
from . import exactmath as em
from .arrangement import ObjectConfig
from .chambers import enumerate_chambers, increasing_region, is_bounded
from .errors import (BudgetExceeded, DegenerateProjection, DuplicatePoints, MissingCharPoly, NonAdjacentSwap,
                     NotGeneric, TiedDistances, TiedMidpoints)
from .finitefield import CountsCache, charpoly
from .lp import strictly_feasible
from .reference import load_reference

Ranking = tuple[int, ...]


@dataclass(frozen=True)
class RankingPattern:
    """A set of rankings kept as a sorted tuple, so equal sets compare equal."""

    rankings: tuple[Ranking, ...]

    def __post_init__(self):
        object.__setattr__(self, "rankings", tuple(sorted(set(tuple(r) for r in self.rankings))))

    @classmethod
    def of(cls, rankings: Iterable[Sequence[int]]) -> "RankingPattern":
        return cls(tuple(tuple(r) for r in rankings))

    def __len__(self) -> int:
        return len(self.rankings)

    def __iter__(self):
        return iter(self.rankings)

    def __contains__(self, r) -> bool:
        return tuple(r) in set(self.rankings)

    def relabel(self, sigma: dict[int, int]) -> "RankingPattern":
        return RankingPattern.of(tuple(sigma[i] for i in r) for r in self.rankings)

    def to_strings(self) -> list[str]:
        m = len(self.rankings[0]) if self.rankings else 0
        if m <= 9:
            return ["".join(map(str, r)) for r in self.rankings]
        return ["-".join(map(str, r)) for r in self.rankings]


# ---------------------------------------------------------------------------
# single configurations


def rank_of_judge(config: ObjectConfig, y: Sequence) -> Ranking:
    y = [Fraction(c) for c in y]
    dist = []
    for idx, x in enumerate(config.points, start=1):
        diff = [a - b for a, b in zip(y, x)]
        dist.append((em.dot(diff, diff), idx))
    dist.sort()
    for (d1, i), (d2, j) in zip(dist, dist[1:]):
        if d1 == d2:
            raise TiedDistances(min(i, j), max(i, j))
    return tuple(i for _, i in dist)


def admissible_rankings(config: ObjectConfig, check: bool = True, with_bounded: bool = False):
    """One ranking per chamber of the unfolding arrangement.

    With ``with_bounded`` the number of bounded chambers is returned too.
    """
    if check:
        rep = arr.check_generic(config, stop_at_first=True)
        if not rep.ok:
            raise NotGeneric(f"configuration violates {rep.first()[0]}", rep.first())
    a = arr.unfolding_arrangement(config)
    chambers = enumerate_chambers(a)
    pattern = RankingPattern.of(rank_of_judge(config, c.witness) for c in chambers)
    if len(pattern) != len(chambers):
        raise NotGeneric("two chambers gave the same ranking")
    if with_bounded:
        return pattern, sum(is_bounded(c, a) for c in chambers)
    return pattern


def count_admissible(m: int, n: int) -> tuple[int, int]:
    """Chamber and bounded-chamber counts of a generic unfolding arrangement."""
    if m < 3 or not 1 <= n <= m - 2:
        raise ValueError("need m >= 3 and 1 <= n <= m-2")
    s = [em.stirling_first_signless(m, k) for k in range(m - n, m + 1)]
    total = sum(s)
    bounded = sum((-1) ** i * v for i, v in enumerate(s))
    return total, bounded


def midpoint_order(xs: Sequence[Fraction]) -> list[tuple[int, int]]:
    """Pairs (i, j), i < j, sorted by their midpoint; ties raise."""
    m = len(xs)
    mids = sorted(((xs[i] + xs[j], (i + 1, j + 1)) for i, j in itertools.combinations(range(m), 2)))
    for (a, p), (b, q) in zip(mids, mids[1:]):
        if a == b:
            raise TiedMidpoints(f"pairs {p} and {q} share a midpoint")
    return [p for _, p in mids]


def pattern_1d(config: ObjectConfig) -> RankingPattern:
    """Walk a judge along the line from -infinity, swapping at each midpoint."""
    if config.n != 1:
        raise ValueError("pattern_1d needs objects on a line")
    xs = [p[0] for p in config.points]
    if len(set(xs)) != len(xs):
        i, j = next((i + 1, j + 1) for i, j in itertools.combinations(range(len(xs)), 2) if xs[i] == xs[j])
        raise DuplicatePoints(i, j)
    current = [i for _, i in sorted((x, i) for i, x in enumerate(xs, start=1))]
    out = [tuple(current)]
    pos = {v: k for k, v in enumerate(current)}
    for i, j in midpoint_order(xs):
        a, b = pos[i], pos[j]
        if abs(a - b) != 1:
            raise NonAdjacentSwap(f"objects {i} and {j} are not adjacent when their midpoint is crossed")
        current[a], current[b] = current[b], current[a]
        pos[i], pos[j] = b, a
        out.append(tuple(current))
    return RankingPattern.of(out)


# ---------------------------------------------------------------------------
# unidimensional pattern counts


def r0_enumerate(m: int, max_m: int = 7) -> int:
    """Distinct patterns over the chambers of the x_i+x_j=x_k+x_l arrangement in x_1 < ... < x_m."""
    if m > max_m:
        raise BudgetExceeded(f"chamber enumeration for m={m} exceeds max_m={max_m}")
    if m == 3:
        return 1
    chambers = enumerate_chambers(arr.mid_nonbraid(m), within=increasing_region(m))
    patterns = {pattern_1d(ObjectConfig.line(c.witness)) for c in chambers}
    if len(patterns) != len(chambers):
        raise AssertionError("distinct chambers gave equal patterns")
    return len(patterns)


def mid_charpoly(m: int, cache: CountsCache | None = None, workers: int = 1, extended: bool = False):
    """chi of the mid-hyperplane arrangement: computed, or the published one for m = 9, 10."""
    ref = load_reference()
    if m in ref.chi_mid and not extended:
        return ref.chi_mid[m]
    try:
        return charpoly("mid", m, cache=cache, workers=workers, extended=extended).poly
    except BudgetExceeded as exc:
        raise MissingCharPoly(f"no characteristic polynomial available for m={m}: {exc}") from exc


def r0_from_charpoly(m: int, **kw) -> int:
    chi = mid_charpoly(m, **kw)
    total = (-1) ** m * chi(-1)
    if total % factorial(m):
        raise ArithmeticError(f"chamber count {total} not divisible by {m}!")
    return total // factorial(m)


def r_total(m: int, **kw) -> int:
    """All unidimensional ranking patterns: m! r0(m) / 2."""
    r0 = 1 if m == 3 else r0_from_charpoly(m, **kw)
    return factorial(m) * r0 // 2


def r_ie(m: int, **kw) -> int:
    """Unidimensional ranking patterns up to relabelling the objects."""
    if m == 3:
        return 1
    r0 = r0_from_charpoly(m, **kw)
    return r0 // 2


# ---------------------------------------------------------------------------
# codimension one


@dataclass(frozen=True)
class SliceDirection:
    """A ray in H_0 (ambient coordinates summing to zero) and an offset c > 0.

    The slice is {x in H_0 : v . x = c}.
    """

    v: tuple[Fraction, ...]
    c: Fraction

    def __post_init__(self):
        if not any(self.v):
            raise DegenerateProjection("slice direction is zero")
        if sum(self.v) != 0:
            raise ValueError("slice direction must lie in the zero-sum hyperplane")
        if self.c <= 0:
            raise ValueError("slice offset must be positive")

    def scaled(self, lam) -> "SliceDirection":
        lam = Fraction(lam)
        return SliceDirection(tuple(lam * x for x in self.v), lam * self.c)


def subset_sum_free(v: Sequence[Fraction]) -> bool:
    """No proper nonempty subset of coordinates sums to zero."""
    m = len(v)
    for size in range(1, m):
        for sub in itertools.combinations(v, size):
            if sum(sub) == 0:
                return False
    return True


def v_map(config: ObjectConfig, check: bool = True) -> SliceDirection:
    """Slice direction of a codimension-one configuration.

    Points are recentred to mean zero; u_i = -(|x_i|^2 - s)/2 with s the mean
    squared norm; the direction is u minus its projection on the column space
    of the matrix whose rows are the points.  No normalization is applied, so
    the result scales by lambda^2 when the configuration scales by lambda.
    """
    m, n = config.m, config.n
    if n != m - 2:
        raise ValueError("v_map needs n = m - 2")
    if check:
        rep = arr.check_generic(config, stop_at_first=True)
        if not rep.ok:
            raise NotGeneric(f"configuration violates {rep.first()[0]}", rep.first())
    mean = [sum(p[k] for p in config.points) / m for k in range(n)]
    X = [[p[k] - mean[k] for k in range(n)] for p in config.points]
    sq = [em.dot(x, x) for x in X]
    s = sum(sq) / m
    u = [-(v - s) / 2 for v in sq]
    proj = em.project_onto_column_space(X, u)
    vt = tuple(a - b for a, b in zip(u, proj))
    if not any(vt):
        raise DegenerateProjection("offset vector lies in the column space")
    if not subset_sum_free(vt):
        raise NotGeneric("slice direction lies on a subset-sum hyperplane")
    return SliceDirection(vt, em.dot(vt, vt))


def _h0_form(m: int, coeffs: dict[int, Fraction]) -> list:
    return list(arr.zero_sum_coordinates(m, coeffs))


def slice_meets_chamber(d: SliceDirection, perm: Sequence[int]) -> bool:
    """Does {x in H_0 : v.x = c} meet x_{perm[0]} > ... > x_{perm[-1]}?"""
    m = len(d.v)
    strict = []
    for a, b in zip(perm, perm[1:]):
        # x_b - x_a < 0
        strict.append((_h0_form(m, {b: Fraction(1), a: Fraction(-1)}), 0))
    eq = (_h0_form(m, {i + 1: d.v[i] for i in range(m)}), d.c)
    return strictly_feasible(strict, [eq], dim=m - 1) is not None


def braid_slice_pattern(d: SliceDirection, m: int | None = None, max_m: int = 7) -> RankingPattern:
    m = len(d.v) if m is None else m
    if len(d.v) != m:
        raise ValueError("direction length does not match m")
    if m > max_m:
        raise BudgetExceeded(f"{factorial(m)} feasibility problems exceed the budget")
    return RankingPattern.of(p for p in itertools.permutations(range(1, m + 1)) if slice_meets_chamber(d, p))


def slice_pattern_by_prefix_sums(v: Sequence[Fraction]) -> RankingPattern:
    """Same set as :func:`braid_slice_pattern`, from the cone's extreme rays.

    The closed braid cone x_{i1} >= ... >= x_{im} in H_0 is spanned by the
    centred indicators of its top-k sets, so the slice meets the open cone
    iff some proper prefix of the permutation has positive v-sum.
    """
    m = len(v)
    out = []
    for p in itertools.permutations(range(1, m + 1)):
        acc = Fraction(0)
        for i in p[:-1]:
            acc += v[i - 1]
            if acc > 0:
                out.append(p)
                break
    return RankingPattern.of(out)


@dataclass(frozen=True)
class SignCensus:
    chambers: int
    v2: int
    d_plus: int
    d_minus: int


def classify_direction(v: Sequence[Fraction]) -> str:
    """'D' (one positive coordinate), '-D' (one negative) or 'V2'."""
    pos = sum(1 for x in v if x > 0)
    neg = sum(1 for x in v if x < 0)
    if pos + neg != len(v):
        raise ValueError("direction has a zero coordinate")
    if pos == 1:
        return "D"
    if neg == 1:
        return "-D"
    return "V2"


def allsubset_chamber_directions(m: int) -> list[tuple[Fraction, ...]]:
    """Ambient witness of every chamber of the restricted all-subset arrangement."""
    chambers = enumerate_chambers(arr.all_subset_restricted(m))
    return [tuple(arr.lift_from_zero_sum(c.witness)) for c in chambers]


def q_enumerate(m: int, max_m: int = 6) -> tuple[int, SignCensus]:
    """q(m) by enumerating chambers and removing the m chambers of type -D."""
    if m > max_m:
        raise BudgetExceeded(f"chamber enumeration for m={m} exceeds max_m={max_m}")
    dirs = allsubset_chamber_directions(m)
    kinds = [classify_direction(v) for v in dirs]
    census = SignCensus(len(dirs), kinds.count("V2"), kinds.count("D"), kinds.count("-D"))
    return census.chambers - census.d_minus, census


def distinct_slice_patterns(m: int) -> tuple[int, int]:
    """(chambers, distinct braid-slice patterns over their witnesses)."""
    dirs = allsubset_chamber_directions(m)
    pats = {braid_slice_pattern(SliceDirection(v, em.dot(v, v))) for v in dirs}
    return len(dirs), len(pats)


def q_from_charpoly(m: int, cache: CountsCache | None = None, workers: int = 1, extended: bool = False) -> int:
    chi = charpoly("allsubset0", m, cache=cache, workers=workers, extended=extended).poly
    return (-1) ** (m - 1) * chi(-1) - m


@dataclass(frozen=True)
class QieBound:
    m: int
    value: int
    exact: bool  # the bound is known to be attained only for m <= 6


def q_ie_upper(m: int, cache: CountsCache | None = None, workers: int = 1, extended: bool = False) -> QieBound:
    """Upper bound |ch(A_m^0 u B_m^0)| / m! - 1 on inequivalent patterns."""
    chi = charpoly("allsubset0_union_braid0", m, cache=cache, workers=workers, extended=extended).poly
    total = (-1) ** (m - 1) * chi(-1)
    if total % factorial(m):
        raise ArithmeticError(f"chamber count {total} not divisible by {m}!")
    return QieBound(m, total // factorial(m) - 1, exact=m <= 6)


# ---------------------------------------------------------------------------
# sampling


def random_generic_configs(m: int, n: int, count: int, seed: int) -> list[ObjectConfig]:
    rng = random.Random(seed)
    return [arr.random_generic_config(m, n, rng) for _ in range(count)]


def increasing_line_config(rng: random.Random, m: int, bound: int = 10**4) -> ObjectConfig:
    """Distinct sorted integers with distinct midpoints."""
    while True:
        xs = sorted(rng.sample(range(-bound, bound + 1), m))
        sums = [a + b for a, b in itertools.combinations(xs, 2)]
        if len(set(sums)) == comb(m, 2):
            return ObjectConfig.line(xs)
