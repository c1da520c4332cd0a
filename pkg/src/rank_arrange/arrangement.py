"""Hyperplane arrangements used for unfolding models.

A hyperplane is ``{x : normal . x = offset}`` with integer data in canonical
form: the gcd of all entries (normal and offset) is 1 and the first nonzero
normal entry is positive.  Labels are informational only and never take part
in equality.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from . import exactmath as em
from .errors import DimensionMismatch, DuplicatePoints, NotGeneric


@dataclass(frozen=True)
class Hyperplane:
    normal: tuple[int, ...]
    offset: int = 0
    label: object = field(default=None, compare=False, hash=False)

    @classmethod
    def from_equation(cls, normal: Sequence, offset=0, label=None) -> "Hyperplane":
        """Canonicalize ``normal . x = offset`` given rational data."""
        ints = em.primitive_integer_vector(list(normal) + [offset])
        *nrm, off = ints
        if not any(nrm):
            raise ValueError("hyperplane normal must be nonzero")
        first = next(x for x in nrm if x)
        if first < 0:
            nrm = [-x for x in nrm]
            off = -off
        return cls(tuple(nrm), off, label)

    @property
    def dim(self) -> int:
        return len(self.normal)

    def value(self, x: Sequence) -> Fraction:
        """``normal . x - offset``; its sign tells the side of ``x``."""
        return em.dot(self.normal, x) - self.offset

    def side(self, x: Sequence) -> int:
        v = self.value(x)
        return (v > 0) - (v < 0)

    @property
    def key(self) -> tuple:
        return (self.normal, self.offset)

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": self.offset, "label": _label_json(self.label)}


def _label_json(label):
    if label is None:
        return None
    if isinstance(label, frozenset):
        return sorted(label)
    if isinstance(label, tuple):
        return list(label)
    return label


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[Hyperplane, ...]
    family: str = "custom"

    def __post_init__(self):
        seen = {}
        for h in self.hyperplanes:
            if h.dim != self.dim:
                raise DimensionMismatch(f"hyperplane of dim {h.dim} in arrangement of dim {self.dim}")
            seen.setdefault(h.key, h)
        object.__setattr__(self, "hyperplanes", tuple(seen.values()))

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def keys(self) -> set:
        return {h.key for h in self.hyperplanes}

    def is_central(self) -> bool:
        return all(h.offset == 0 for h in self.hyperplanes)

    def rank(self) -> int:
        return em.rank([h.normal for h in self.hyperplanes]) if self.hyperplanes else 0

    def sorted(self) -> "Arrangement":
        return Arrangement(self.dim, tuple(sorted(self.hyperplanes, key=lambda h: h.key)), self.family)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "dim": self.dim,
            "hyperplanes": [h.to_json() for h in self.hyperplanes],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "Arrangement":
        hs = []
        for h in data["hyperplanes"]:
            label = h.get("label")
            if isinstance(label, list):
                label = tuple(label)
            hs.append(Hyperplane.from_equation(h["normal"], h.get("offset", 0), label))
        return cls(int(data["dim"]), tuple(hs), data.get("family", "custom"))


@dataclass(frozen=True)
class ObjectConfig:
    """``m`` object points in R^n with exact rational coordinates."""

    points: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        pts = tuple(tuple(Fraction(c) for c in p) for p in self.points)
        if len(pts) < 2:
            raise ValueError("need at least two objects")
        n = len(pts[0])
        if n < 1 or any(len(p) != n for p in pts):
            raise DimensionMismatch("all points must share one positive dimension")
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return len(self.points[0])

    @classmethod
    def line(cls, xs: Iterable) -> "ObjectConfig":
        return cls(tuple((Fraction(x),) for x in xs))

    def scaled(self, lam) -> "ObjectConfig":
        lam = Fraction(lam)
        return ObjectConfig(tuple(tuple(lam * c for c in p) for p in self.points))

    def negated(self) -> "ObjectConfig":
        return self.scaled(-1)

    def to_json(self) -> dict:
        return {"m": self.m, "n": self.n, "points": [[_frac_str(c) for c in p] for p in self.points]}

    @classmethod
    def from_json(cls, data: dict) -> "ObjectConfig":
        cfg = cls(tuple(tuple(Fraction(str(c)) for c in p) for p in data["points"]))
        if "m" in data and int(data["m"]) != cfg.m:
            raise ValueError(f"config declares m={data['m']} but lists {cfg.m} points")
        if "n" in data and int(data["n"]) != cfg.n:
            raise ValueError(f"config declares n={data['n']} but points have dimension {cfg.n}")
        return cfg


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# named families


def _unit(m: int, idx: dict[int, int]) -> tuple[int, ...]:
    v = [0] * m
    for i, c in idx.items():
        v[i - 1] += c
    return tuple(v)


def braid(m: int) -> Arrangement:
    """x_i = x_j in R^m, labelled (i, j) with 1-based indices."""
    if m < 2:
        raise ValueError("braid arrangement needs m >= 2")
    hs = [Hyperplane.from_equation(_unit(m, {i: 1, j: -1}), 0, (i, j))
          for i, j in itertools.combinations(range(1, m + 1), 2)]
    return Arrangement(m, tuple(hs), f"braid:{m}")


def index_set_i4(m: int) -> list[tuple[int, int, int, int]]:
    """Quadruples (i,j,k,l), all distinct, i<j, i<k<l."""
    out = []
    for i, j, k, l in itertools.permutations(range(1, m + 1), 4):
        if i < j and i < k < l:
            out.append((i, j, k, l))
    return sorted(out)


def mid_nonbraid(m: int) -> Arrangement:
    """The x_i + x_j = x_k + x_l part of the mid-hyperplane arrangement."""
    hs = [Hyperplane.from_equation(_unit(m, {i: 1, j: 1, k: -1, l: -1}), 0, (i, j, k, l))
          for i, j, k, l in index_set_i4(m)]
    return Arrangement(m, tuple(hs), f"midN:{m}")


def mid_hyperplane(m: int) -> Arrangement:
    if m < 3:
        raise ValueError("mid-hyperplane arrangement needs m >= 3")
    return Arrangement(m, braid(m).hyperplanes + mid_nonbraid(m).hyperplanes, f"mid:{m}")


def zero_sum_coordinates(m: int, coeffs: dict[int, int]) -> tuple[int, ...]:
    """Rewrite a linear form on R^m in the coordinates x_1..x_{m-1} of H_0.

    The last variable is eliminated through x_m = -(x_1 + ... + x_{m-1}).
    """
    v = [0] * (m - 1)
    last = coeffs.get(m, 0)
    for i, c in coeffs.items():
        if i != m:
            v[i - 1] += c
    for i in range(m - 1):
        v[i] -= last
    return tuple(v)


def lift_from_zero_sum(y: Sequence) -> list[Fraction]:
    """Ambient point in R^m from its H_0 coordinates."""
    y = [Fraction(c) for c in y]
    return y + [-sum(y, Fraction(0))]


def all_subset_restricted(m: int) -> Arrangement:
    """Restriction of the all-subset arrangement to the zero-sum hyperplane.

    Each hyperplane is labelled by the subset I of [m] that avoids m; its
    complement gives the same hyperplane.
    """
    if m < 3:
        raise ValueError("all-subset arrangement needs m >= 3")
    hs = []
    for size in range(1, m):
        for sub in itertools.combinations(range(1, m + 1), size):
            I = frozenset(sub)
            label = I if m not in I else frozenset(range(1, m + 1)) - I
            normal = zero_sum_coordinates(m, {i: 1 for i in sub})
            hs.append(Hyperplane.from_equation(normal, 0, label))
    return Arrangement(m - 1, tuple(hs), f"allsubset0:{m}")


def braid_restricted(m: int) -> Arrangement:
    """The braid arrangement restricted to H_0, in H_0 coordinates."""
    hs = [Hyperplane.from_equation(zero_sum_coordinates(m, {i: 1, j: -1}), 0, (i, j))
          for i, j in itertools.combinations(range(1, m + 1), 2)]
    return Arrangement(m - 1, tuple(hs), f"braid0:{m}")


def unfolding_arrangement(config: ObjectConfig) -> Arrangement:
    """Perpendicular bisectors of every pair of objects."""
    hs = []
    pts = config.points
    for i, j in itertools.combinations(range(config.m), 2):
        xi, xj = pts[i], pts[j]
        if xi == xj:
            raise DuplicatePoints(i + 1, j + 1)
        normal = [a - b for a, b in zip(xi, xj)]
        offset = (em.dot(xi, xi) - em.dot(xj, xj)) / 2
        hs.append(Hyperplane.from_equation(normal, offset, (i + 1, j + 1)))
    arr = Arrangement(config.n, tuple(hs), f"unfolding:{config.m},{config.n}")
    if len(arr) != len(hs):
        raise NotGeneric("two bisectors coincide")
    return arr


def union(a: Arrangement, b: Arrangement) -> Arrangement:
    if a.dim != b.dim:
        raise DimensionMismatch(f"cannot unite arrangements of dims {a.dim} and {b.dim}")
    fam = a.family if a.family == b.family else f"{a.family}+{b.family}"
    return Arrangement(a.dim, a.hyperplanes + b.hyperplanes, fam)


def essentialize(a: Arrangement) -> Arrangement:
    """Quotient by the directions every hyperplane contains.

    Coordinates on the quotient are the pivot coordinates of the reduced row
    echelon basis of the normal space, so each normal maps to its own pivot
    entries and no denominators appear.
    """
    if not a.hyperplanes:
        return Arrangement(0, (), a.family)
    _, piv = em.rref([h.normal for h in a.hyperplanes])
    hs = [Hyperplane.from_equation([h.normal[c] for c in piv], h.offset, h.label) for h in a.hyperplanes]
    return Arrangement(len(piv), tuple(hs), a.family)


# ---------------------------------------------------------------------------
# genericity


@dataclass(frozen=True)
class GenericityReport:
    ok: bool
    violations: tuple[tuple[str, tuple[tuple[int, int], ...]], ...] = ()

    def first(self):
        return self.violations[0] if self.violations else None


def _forest(edges: Sequence[tuple[int, int]]) -> bool:
    parent: dict[int, int] = {}

    def find(x):
        while parent.get(x, x) != x:
            x = parent[x]
        return x

    for i, j in edges:
        ri, rj = find(i), find(j)
        if ri == rj:
            return False
        parent[ri] = rj
    return True


def forest_rank_violation(points: Sequence[Sequence], nu: int):
    """First ``nu``-edge forest whose difference vectors are dependent, else None."""
    m = len(points)
    pairs = list(itertools.combinations(range(m), 2))
    for edges in itertools.combinations(pairs, nu):
        if not _forest(edges):
            continue
        diffs = [[a - b for a, b in zip(points[i], points[j])] for i, j in edges]
        if em.rank(diffs) < nu:
            return tuple((i + 1, j + 1) for i, j in edges)
    return None


def check_generic(config: ObjectConfig, stop_at_first: bool = False) -> GenericityReport:
    """Check the forest-independence conditions on the objects and their lifts.

    For n <= m-2 both the points (forests of n edges) and the paraboloid lifts
    (x, |x|^2) (forests of n+1 edges) are tested; for n >= m-1 only spanning
    forests of the points themselves.  Each violated condition reports its
    first offending edge set.
    """
    m, n = config.m, config.n
    pts = config.points
    for i, j in itertools.combinations(range(m), 2):
        if pts[i] == pts[j]:
            return GenericityReport(False, (("distinct", ((i + 1, j + 1),)),))
    violations = []
    if n <= m - 2:
        bad = forest_rank_violation(pts, n)
        if bad:
            violations.append(("A1", bad))
            if stop_at_first:
                return GenericityReport(False, tuple(violations))
        lifted = [tuple(p) + (em.dot(p, p),) for p in pts]
        bad = forest_rank_violation(lifted, n + 1)
        if bad:
            violations.append(("A2", bad))
    else:
        bad = forest_rank_violation(pts, m - 1)
        if bad:
            violations.append(("A1", bad))
    return GenericityReport(not violations, tuple(violations))


def random_generic_config(m: int, n: int, rng: random.Random, bound: int = 10**4,
                          max_tries: int = 1000) -> ObjectConfig:
    """Integer coordinates uniform in [-bound, bound], resampled until generic."""
    for _ in range(max_tries):
        cfg = ObjectConfig(tuple(tuple(rng.randint(-bound, bound) for _ in range(n)) for _ in range(m)))
        if check_generic(cfg, stop_at_first=True).ok:
            return cfg
    raise NotGeneric(f"no generic configuration after {max_tries} draws")


def expected_mid_size(m: int) -> int:
    return comb(m, 2) + 3 * comb(m, 4)
