"""Reproduction checks grouped into fast, full and extended scopes."""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import factorial
from typing import Callable

from . import unfolding as uf
from .bounds import bounds_table, order_relations
from .chambers import verify_poset_isomorphism
from .errors import RankArrangeError
from .finitefield import CountsCache
from .reference import load_reference

SCOPES = ("fast", "full", "extended")
SEED = 20240601


@dataclass
class Check:
    name: str
    expected: object
    actual: object
    ok: bool
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "expected": _js(self.expected),
                "actual": _js(self.actual), "seconds": round(self.seconds, 3)}


def _js(v):
    if isinstance(v, bool) or v is None:
        return v
    if isinstance(v, int):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [_js(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _js(x) for k, x in v.items()}
    return str(v)


def _run(name: str, expected, fn: Callable[[], object]) -> Check:
    t0 = time.perf_counter()
    try:
        actual = fn()
        ok = actual == expected
    except RankArrangeError as exc:
        actual, ok = f"{type(exc).__name__}: {exc}", False
    return Check(name, expected, actual, ok, time.perf_counter() - t0)


# individual checks -------------------------------------------------------

def chamber_counts(m: int, n: int, count: int, seed: int = SEED) -> tuple[int, int]:
    """Number of sampled configs that match (chambers, bounded) exactly, and the sample size."""
    good = 0
    want = uf.count_admissible(m, n)
    for cfg in uf.random_generic_configs(m, n, count, seed + 100 * m + n):
        pat, bounded = uf.admissible_rankings(cfg, with_bounded=True)
        good += (len(pat), bounded) == want
    return good, count


def rp_equals_rp(m: int, count: int, seed: int = SEED) -> int:
    """How many of `count` sampled codimension-one configs satisfy pattern == slice pattern."""
    good = 0
    for cfg in uf.random_generic_configs(m, m - 2, count, seed + m):
        good += uf.admissible_rankings(cfg) == uf.braid_slice_pattern(uf.v_map(cfg))
    return good


def poset_ok(m: int, n: int, seed: int = SEED) -> bool:
    cfg = uf.random_generic_configs(m, n, 1, seed + 10 * m + n)[0]
    return bool(verify_poset_isomorphism(m, n, cfg))


def table_cells() -> list[str]:
    """Cells of the bounds table that differ from the reference strings (empty when all match)."""
    wanted = load_reference().table1
    bad = []
    for row, want in zip(bounds_table(10), wanted):
        got = row.display()
        bad += [f"m={row.m} {k}: {got[k]} != {want[k]}" for k in want if got[k] != want[k]]
    return bad


def table_orders() -> list[str]:
    bad = []
    for row in bounds_table(10):
        rel = order_relations(row)
        for key in ("ell<=r0", "r0<u", "r0<=f"):
            if not rel[key]:
                bad.append(f"m={row.m} {key}")
        if (row.m <= 7) != rel["r0=a"] or (row.m >= 8) != rel["r0>a"]:
            bad.append(f"m={row.m} r0 vs a")
        if (row.m <= 8) != (rel["f_vs_u"] == "f<u"):
            bad.append(f"m={row.m} f vs u")
    return bad


def reference_chi() -> dict[int, int]:
    ref = load_reference()
    return {m: (-1) ** m * ref.chi_mid[m](-1) // factorial(m) for m in (9, 10)}


# suites ------------------------------------------------------------------

def build_suite(scope: str, cache: CountsCache | None = None, workers: int = 1):
    if scope not in SCOPES:
        raise ValueError(f"scope must be one of {SCOPES}")
    ref = load_reference()
    kw = dict(cache=cache, workers=workers)
    s: list[tuple[str, object, Callable[[], object]]] = []
    add = s.append
    big = scope != "fast"
    ext = scope == "extended"

    for m in range(4, 8 if big else 6):
        add((f"r0({m}) via charpoly", ref.r0[m], lambda m=m: uf.r0_from_charpoly(m, **kw)))
    for m in range(4, 7 if big else 6):
        add((f"r0({m}) via enumeration", ref.r0[m], lambda m=m: uf.r0_enumerate(m)))
    pairs = [(4, 1), (4, 2), (5, 2), (5, 3)] + ([(6, 1), (6, 2), (6, 3)] if big else [])
    for m, n in pairs:
        k = 3 if big else 1
        add((f"chamber counts m={m} n={n}", (k, k), lambda m=m, n=n, k=k: chamber_counts(m, n, k)))
    add(("m=4 n=3 all rankings, none bounded", (24, 0),
         lambda: (lambda p: (len(p[0]), p[1]))(
             uf.admissible_rankings(uf.random_generic_configs(4, 3, 1, SEED)[0], with_bounded=True))))
    for m, n in [(4, 1), (4, 2), (5, 2)] + ([(5, 3)] if big else []):
        add((f"poset isomorphism m={m} n={n}", True, lambda m=m, n=n: poset_ok(m, n)))
    for m in range(3, 7 if big else 6):
        add((f"q({m}) via charpoly", ref.q[m], lambda m=m: uf.q_from_charpoly(m, **kw)))
    for m in range(3, 6 if big else 5):
        add((f"q({m}) via enumeration", (ref.q[m], m, m),
             lambda m=m: (lambda r: (r[0], r[1].d_plus, r[1].d_minus))(uf.q_enumerate(m))))
    for m in (4, 5):
        k = 10 if big else 2
        add((f"pattern equals slice pattern m={m}", k, lambda m=m, k=k: rp_equals_rp(m, k)))
    add(("distinct slice patterns m=4", (32, 32), lambda: uf.distinct_slice_patterns(4)))
    for m in range(4, 7 if big else 6):
        add((f"q_ie upper bound m={m}", ref.q_ie[m], lambda m=m: uf.q_ie_upper(m, **kw).value))
    add(("bounds table cells", [], table_cells))
    add(("bounds table order relations", [], table_orders))
    add(("reference chi at -1", {9: ref.r0[9], 10: ref.r0[10]}, reference_chi))
    if ext:
        add(("r0(8) via charpoly", ref.r0[8], lambda: uf.r0_from_charpoly(8, extended=True, **kw)))
        add(("r0(7) via enumeration", ref.r0[7], lambda: uf.r0_enumerate(7)))
        add(("q(7) via charpoly", ref.q[7], lambda: uf.q_from_charpoly(7, extended=True, **kw)))
    return s


def run_verify(scope: str, cache: CountsCache | None = None, workers: int = 1,
               progress: Callable[[Check], None] | None = None) -> list[Check]:
    out = []
    for name, expected, fn in build_suite(scope, cache, workers):
        c = _run(name, expected, fn)
        out.append(c)
        if progress:
            progress(c)
    return out
