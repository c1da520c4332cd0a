"""Command-line entry point: ``rank-arrange <command> ...``.

Exit codes: 0 success, 1 verification mismatch or failed computation,
2 usage or input error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import signal
import sys
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path

from . import arrangement as arr
from . import lp
from . import unfolding as uf
from .bounds import bounds_table
from .chambers import default_workers, enumerate_chambers, is_bounded, verify_poset_isomorphism
from .errors import BudgetExceeded, RankArrangeError
from .finitefield import FAMILIES, CountsCache, charpoly, family_arrangement
from .verify import SCOPES, run_verify

SCHEMA = "1"
EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 1, 2, 3
INPUT_ERRORS = ("NotGeneric", "DuplicatePoints", "DimensionMismatch", "TiedDistances", "TiedMidpoints",
                "NonAdjacentSwap", "InsufficientPoints", "DegenerateProjection")


@dataclass
class RunBudget:
    max_lps: int = 50_000_000
    max_point_tests: int = 10**9
    max_chambers: int = 1_000_000
    wall_clock: float = 3600.0
    threads: int = 1

    def __post_init__(self):
        for f in fields(self):
            if getattr(self, f.name) <= 0:
                raise ValueError(f"budget field {f.name} must be positive")

    @classmethod
    def from_env(cls, text: str | None, threads: int) -> "RunBudget":
        """Parse ``key=value,key=value``; unknown keys are usage errors."""
        kw: dict = {"threads": threads}
        names = {f.name: f.type for f in fields(cls)}
        for part in (text or "").split(","):
            if not part.strip():
                continue
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in names:
                raise ValueError(f"unknown budget key {key!r}")
            kw[key] = float(val) if key == "wall_clock" else int(val)
        return cls(**kw)


def _frac(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def emit(obj: dict, fmt: str = "json", rows: list[dict] | None = None) -> str:
    if fmt == "csv":
        if rows is None:
            rows = [{k: v for k, v in obj.items() if not isinstance(v, (list, dict))}]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), quoting=csv.QUOTE_MINIMAL, lineterminator="\r\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    return json.dumps({"schema": SCHEMA, **obj}, separators=(",", ":")) + "\n"


def _load_config(path: str) -> arr.ObjectConfig:
    return arr.ObjectConfig.from_json(json.loads(Path(path).read_text()))


def _cache(args) -> CountsCache | None:
    return CountsCache(args.counts_cache) if args.counts_cache else None


def _need(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required")


class UsageError(Exception):
    pass


# commands ----------------------------------------------------------------

def cmd_charpoly(args, budget):
    _need(args, "m")
    fam = args.family or "mid"
    res = charpoly(fam, args.m, cache=_cache(args), workers=budget.threads, extended=args.extended,
                   budget=budget.max_point_tests)
    out = res.to_json()
    rows = [{"power": k, "coefficient": str(c)} for k, c in enumerate(res.poly.coeffs)]
    return emit(out, args.format, rows), 0


def cmd_chambers(args, budget):
    if args.config:
        a = arr.unfolding_arrangement(_load_config(args.config))
    else:
        _need(args, "m")
        a = family_arrangement(args.family or "braid", args.m)
    chs = enumerate_chambers(a, max_chambers=budget.max_chambers, workers=budget.threads)
    rows = [{"signs": c.signs, "witness": [_frac(x) for x in c.witness], "bounded": is_bounded(c, a)}
            for c in chs]
    out = {"family": a.family, "dim": a.dim, "hyperplanes": len(a), "chambers": str(len(chs)),
           "bounded": str(sum(r["bounded"] for r in rows)), "list": rows}
    csv_rows = [{"signs": r["signs"], "witness": " ".join(r["witness"]), "bounded": r["bounded"]} for r in rows]
    return emit(out, args.format, csv_rows or [{"signs": "", "witness": "", "bounded": ""}]), 0


def cmd_pattern(args, budget):
    _need(args, "config")
    cfg = _load_config(args.config)
    method = args.method or ("1d" if cfg.n == 1 else "chambers")
    if method == "1d":
        pat = uf.pattern_1d(cfg)
    elif method == "chambers":
        pat = uf.admissible_rankings(cfg)
    elif method == "slice":
        pat = uf.braid_slice_pattern(uf.v_map(cfg))
    else:
        raise UsageError(f"unknown method {method!r}")
    out = {"m": cfg.m, "n": cfg.n, "method": method, "count": str(len(pat)), "rankings": pat.to_strings()}
    return emit(out, args.format, [{"ranking": r} for r in pat.to_strings()]), 0


def cmd_r0(args, budget):
    _need(args, "m")
    method = args.method or "charpoly"
    if method == "enumerate":
        val = uf.r0_enumerate(args.m)
    elif method == "charpoly":
        val = uf.r0_from_charpoly(args.m, cache=_cache(args), workers=budget.threads, extended=args.extended)
    else:
        raise UsageError(f"unknown method {method!r}")
    return emit({"m": args.m, "r0": str(val), "method": method}, args.format), 0


def cmd_q(args, budget):
    _need(args, "m")
    method = args.method or "charpoly"
    if method == "enumerate":
        val, census = uf.q_enumerate(args.m)
        out = {"m": args.m, "q": str(val), "method": method, "chambers": str(census.chambers),
               "D": str(census.d_plus), "minus_D": str(census.d_minus), "V2": str(census.v2)}
    elif method == "charpoly":
        val = uf.q_from_charpoly(args.m, cache=_cache(args), workers=budget.threads, extended=args.extended)
        out = {"m": args.m, "q": str(val), "method": method}
    else:
        raise UsageError(f"unknown method {method!r}")
    return emit(out, args.format), 0


def cmd_qie_upper(args, budget):
    _need(args, "m")
    b = uf.q_ie_upper(args.m, cache=_cache(args), workers=budget.threads, extended=args.extended)
    return emit({"m": b.m, "q_ie_upper": str(b.value), "known_exact": b.exact}, args.format), 0


def cmd_bounds(args, budget):
    rows = bounds_table(args.max_m)
    out = {"rows": [r.to_json() for r in rows]}
    return emit(out, args.format, [r.display() for r in rows]), 0


def cmd_poset_check(args, budget):
    if args.config:
        cfg = _load_config(args.config)
    else:
        _need(args, "m", "n")
        cfg = uf.random_generic_configs(args.m, args.n, 1, args.seed)[0]
    rep = verify_poset_isomorphism(cfg.m, cfg.n, cfg)
    out = {"m": cfg.m, "n": cfg.n, "ok": rep.ok, "poset_size": str(rep.poset_size),
           "partitions": str(rep.partitions), "failure": rep.failure}
    return emit(out, args.format), 0 if rep.ok else EXIT_MISMATCH


def cmd_verify(args, budget):
    scope = "extended" if args.extended else args.scope

    def progress(c):
        if args.verbose:
            print(f"{'PASS' if c.ok else 'FAIL'} {c.name} ({c.seconds:.1f}s)", file=sys.stderr)

    checks = run_verify(scope, cache=_cache(args), workers=budget.threads, progress=progress)
    ok = all(c.ok for c in checks)
    out = {"scope": scope, "ok": ok, "passed": sum(c.ok for c in checks), "total": len(checks),
           "checks": [c.to_json() for c in checks]}
    rows = [{"name": c.name, "ok": c.ok, "expected": json.dumps(c.to_json()["expected"]),
             "actual": json.dumps(c.to_json()["actual"])} for c in checks]
    return emit(out, args.format, rows), 0 if ok else EXIT_MISMATCH


COMMANDS = {
    "charpoly": cmd_charpoly,
    "chambers": cmd_chambers,
    "pattern": cmd_pattern,
    "r0": cmd_r0,
    "q": cmd_q,
    "qie-upper": cmd_qie_upper,
    "bounds": cmd_bounds,
    "poset-check": cmd_poset_check,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int)
    common.add_argument("--n", type=int)
    common.add_argument("--family", choices=FAMILIES)
    common.add_argument("--config", metavar="PATH")
    common.add_argument("--method")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--extended", action="store_true")
    common.add_argument("--counts-cache", metavar="PATH")

    p = argparse.ArgumentParser(prog="rank-arrange", description="Exact arrangement counts for unfolding models.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name == "bounds":
            sp.add_argument("--max-m", type=int, default=10)
        if name == "verify":
            sp.add_argument("--scope", choices=SCOPES, default="fast")
            sp.add_argument("-v", "--verbose", action="store_true")
    return p


def _alarm(signum, frame):
    raise BudgetExceeded("wall-clock budget exhausted")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        threads = args.threads if args.threads is not None else default_workers()
        budget = RunBudget.from_env(os.environ.get("RANK_ARRANGE_BUDGET"), max(threads, 1))
    except ValueError as exc:
        parser.error(str(exc))
    lp.set_lp_limit(budget.max_lps)
    use_alarm = hasattr(signal, "SIGALRM")
    if use_alarm:
        old = signal.signal(signal.SIGALRM, _alarm)
        signal.setitimer(signal.ITIMER_REAL, budget.wall_clock)
    try:
        text, code = COMMANDS[args.command](args, budget)
    except UsageError as exc:
        parser.error(str(exc))
    except BudgetExceeded as exc:
        sys.stdout.write(emit({"error": "budget", "message": str(exc)}))
        return EXIT_BUDGET
    except (RankArrangeError, ValueError) as exc:
        name = type(exc).__name__
        sys.stdout.write(emit({"error": name, "message": str(exc)}))
        return EXIT_USAGE if name in INPUT_ERRORS or isinstance(exc, ValueError) else EXIT_MISMATCH
    finally:
        if use_alarm:
            signal.setitimer(signal.ITIMER_REAL, 0)
            signal.signal(signal.SIGALRM, old)
        lp.set_lp_limit(None)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
