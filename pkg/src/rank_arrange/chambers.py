"""Chambers of real arrangements, Zaslavsky counts and intersection posets."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import exactmath as em
from .arrangement import Arrangement, Hyperplane, ObjectConfig
from .errors import BudgetExceeded, InfeasibleRegion
from .exactmath import IntPolynomial
from .lp import cone_is_trivial, strictly_feasible

DEFAULT_MAX_CHAMBERS = 1_000_000


@dataclass(frozen=True)
class ConstraintRegion:
    """Open polyhedron given by strict inequalities ``a . x < b``."""

    dim: int
    inequalities: tuple[tuple[tuple[Fraction, ...], Fraction], ...] = ()

    @classmethod
    def from_pairs(cls, dim: int, pairs) -> "ConstraintRegion":
        ineqs = tuple((tuple(Fraction(v) for v in a), Fraction(b)) for a, b in pairs)
        if any(len(a) != dim for a, _ in ineqs):
            raise ValueError("inequality of wrong dimension")
        return cls(dim, ineqs)

    def contains(self, x: Sequence) -> bool:
        return all(em.dot(a, x) < b for a, b in self.inequalities)


def increasing_region(m: int) -> ConstraintRegion:
    """The braid chamber x_1 < x_2 < ... < x_m."""
    pairs = []
    for i in range(m - 1):
        a = [0] * m
        a[i], a[i + 1] = 1, -1
        pairs.append((a, 0))
    return ConstraintRegion.from_pairs(m, pairs)


@dataclass(frozen=True)
class Chamber:
    signs: str  # one of "+-" per hyperplane, in arrangement order
    witness: tuple[Fraction, ...]

    def to_json(self) -> dict:
        return {"signs": self.signs, "witness": [_q(v) for v in self.witness]}


def _q(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _strict_for(h: Hyperplane, sign: int) -> tuple[list[int], int]:
    # sign * (n.x - off) > 0  <=>  (-sign n).x < -sign off
    return [-sign * c for c in h.normal], -sign * h.offset


def _split_task(args):
    cons, h, w, dim = args
    v = h.value(w)
    if v != 0:
        s = 1 if v > 0 else -1
        other = strictly_feasible(cons + [_strict_for(h, -s)], dim=dim)
        return [(s, w), (-s, other)] if other is not None else [(s, w)]
    out = []
    for s in (1, -1):
        pt = strictly_feasible(cons + [_strict_for(h, s)], dim=dim)
        if pt is not None:
            out.append((s, pt))
    return out


def enumerate_chambers(a: Arrangement, within: ConstraintRegion | None = None,
                       max_chambers: int = DEFAULT_MAX_CHAMBERS, workers: int = 1) -> list[Chamber]:
    """All chambers of ``a`` (inside ``within`` when given), each with an exact
    interior witness, sorted by sign string.

    Hyperplanes are inserted one at a time in canonical order; a chamber is
    split when the new hyperplane has feasible points on both of its sides.
    """
    dim = a.dim
    base = [(list(p), b) for p, b in within.inequalities] if within else []
    start = strictly_feasible(base, dim=dim)
    if start is None:
        raise InfeasibleRegion("constraint region is empty")
    order = sorted(range(len(a)), key=lambda k: a.hyperplanes[k].key)
    # each cell: (signs dict index->sign, strict constraint list, witness)
    cells = [({}, base, start)]
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for k in order:
            h = a.hyperplanes[k]
            tasks = [(cons, h, w, dim) for _, cons, w in cells]
            results = list(pool.map(_split_task, tasks, chunksize=16)) if pool else map(_split_task, tasks)
            nxt = []
            for (signs, cons, _), parts in zip(cells, results):
                for s, pt in parts:
                    nxt.append(({**signs, k: s}, cons + [_strict_for(h, s)], pt))
            if len(nxt) > max_chambers:
                raise BudgetExceeded(f"more than {max_chambers} chambers")
            cells = nxt
    finally:
        if pool:
            pool.shutdown()
    out = []
    for signs, _, w in cells:
        s = "".join("+" if signs[k] > 0 else "-" for k in range(len(a)))
        out.append(Chamber(s, tuple(w)))
    out.sort(key=lambda c: c.signs)
    return out


def chamber_constraints(c: Chamber, a: Arrangement, within: ConstraintRegion | None = None):
    cons = [(list(p), b) for p, b in within.inequalities] if within else []
    for h, ch in zip(a.hyperplanes, c.signs):
        cons.append(_strict_for(h, 1 if ch == "+" else -1))
    return cons


def is_bounded(c: Chamber, a: Arrangement, within: ConstraintRegion | None = None) -> bool:
    """A chamber is bounded iff its recession cone is the origin."""
    rows = [p for p, _ in chamber_constraints(c, a, within)]
    return cone_is_trivial(rows, a.dim)


def zaslavsky_counts(chi: IntPolynomial, ambient_dim: int, rank: int | None = None) -> tuple[int, int]:
    """(chambers, bounded chambers) from the characteristic polynomial.

    The rank defaults to ``ambient_dim`` minus the power of t dividing chi.
    A non-essential arrangement has no bounded chambers.
    """
    total = (-1) ** ambient_dim * chi(-1)
    if rank is None:
        rank = ambient_dim - chi.t_adic_valuation()
    if rank < ambient_dim:
        return total, 0
    return total, (-1) ** rank * chi(1)


# ---------------------------------------------------------------------------
# intersection poset


@dataclass(frozen=True)
class Flat:
    """An affine subspace stored as the RREF of its defining equations."""

    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.rows)

    def within(self, h_row: Sequence) -> bool:
        """True iff this subspace lies inside the hyperplane ``h_row``."""
        if not self.rows:
            return False
        return em.rank(list(self.rows) + [list(h_row)]) == self.rank


def _hrow(h: Hyperplane) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in h.normal) + (Fraction(h.offset),)


def _meet(rows: Sequence, extra: Sequence, ncols: int) -> Flat | None:
    red, piv = em.rref(list(rows) + [list(extra)], ncols=ncols)
    if piv and piv[-1] == ncols - 1:
        return None  # inconsistent: empty intersection
    return Flat(tuple(tuple(r) for r in red))


@dataclass
class IntersectionPoset:
    arrangement: Arrangement
    elements: list[Flat]

    def leq(self, x: Flat, y: Flat) -> bool:
        """x <= y in reverse inclusion, i.e. y is contained in x."""
        if not x.rows:
            return True
        return em.rank(list(y.rows) + list(x.rows)) == y.rank

    def by_rank(self) -> dict[int, list[Flat]]:
        out: dict[int, list[Flat]] = {}
        for e in self.elements:
            out.setdefault(e.rank, []).append(e)
        return out


def intersection_poset(a: Arrangement, max_rank: int | None = None, max_elements: int = 100_000) -> IntersectionPoset:
    ncols = a.dim + 1
    max_rank = a.dim if max_rank is None else max_rank
    rows = [_hrow(h) for h in a.hyperplanes]
    bottom = Flat(())
    seen = {bottom.rows: bottom}
    level = [bottom]
    for r in range(max_rank):
        nxt = {}
        for x in level:
            for hr in rows:
                if x.within(hr):
                    continue
                y = _meet(x.rows, hr, ncols)
                if y is None or y.rows in seen or y.rows in nxt:
                    continue
                nxt[y.rows] = y
                if len(seen) + len(nxt) > max_elements:
                    raise BudgetExceeded(f"intersection poset has more than {max_elements} elements")
        seen.update(nxt)
        level = sorted(nxt.values(), key=lambda f: f.rows)
        if not level:
            break
    elements = sorted(seen.values(), key=lambda f: (f.rank, f.rows))
    return IntersectionPoset(a, elements)


Partition = tuple[tuple[int, ...], ...]


def _canon(blocks) -> Partition:
    return tuple(sorted(tuple(sorted(b)) for b in blocks))


def partition_map(a: Arrangement, x: Flat, m: int | None = None) -> Partition:
    """Blocks of i ~ j  <=>  x lies in the bisector labelled (i, j)."""
    if m is None:
        m = max(max(h.label) for h in a.hyperplanes)
    parent = list(range(m + 1))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for h in a.hyperplanes:
        i, j = h.label
        if x.within(_hrow(h)):
            parent[find(i)] = find(j)
    blocks: dict[int, list[int]] = {}
    for v in range(1, m + 1):
        blocks.setdefault(find(v), []).append(v)
    return _canon(blocks.values())


def set_partitions(m: int):
    """All set partitions of {1..m} in canonical form."""
    def rec(k, blocks):
        if k > m:
            yield _canon(blocks)
            return
        for b in blocks:
            b.append(k)
            yield from rec(k + 1, blocks)
            b.pop()
        blocks.append([k])
        yield from rec(k + 1, blocks)
        blocks.pop()

    yield from rec(1, [])


def refines(p: Partition, q: Partition) -> bool:
    """Every block of p sits inside a block of q."""
    where = {v: i for i, b in enumerate(q) for v in b}
    return all(len({where[v] for v in b}) == 1 for b in p)


@dataclass
class IsomorphismReport:
    ok: bool
    poset_size: int
    partitions: int
    failure: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_poset_isomorphism(m: int, n: int, config: ObjectConfig) -> IsomorphismReport:
    """Check that X -> I_X is an order isomorphism onto partitions of rank <= n."""
    from .arrangement import unfolding_arrangement

    if config.m != m or config.n != n:
        raise ValueError("config does not match (m, n)")
    arr = unfolding_arrangement(config)
    poset = intersection_poset(arr, max_rank=n)
    targets = {p for p in set_partitions(m) if m - len(p) <= n}
    images = {}
    for x in poset.elements:
        p = partition_map(arr, x, m)
        if m - len(p) != x.rank:
            return IsomorphismReport(False, len(poset.elements), len(targets),
                                     f"rank mismatch at {p}: flat rank {x.rank}")
        if p in images:
            return IsomorphismReport(False, len(poset.elements), len(targets), f"two flats map to {p}")
        images[p] = x
    if set(images) != targets:
        missing = sorted(targets - set(images))
        extra = sorted(set(images) - targets)
        return IsomorphismReport(False, len(poset.elements), len(targets),
                                 f"image mismatch: missing {missing[:3]}, extra {extra[:3]}")
    for (p, x), (q, y) in itertools.product(images.items(), repeat=2):
        if poset.leq(x, y) != refines(p, q):
            return IsomorphismReport(False, len(poset.elements), len(targets),
                                     f"order mismatch between {p} and {q}")
    return IsomorphismReport(True, len(poset.elements), len(targets))


def default_workers() -> int:
    return os.cpu_count() or 1
