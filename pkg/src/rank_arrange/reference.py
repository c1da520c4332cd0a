"""Published reference values, loaded from ``data/reference.json``.

The file is hash-checked on load so an accidental edit cannot silently
change what the verification suite compares against.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from types import MappingProxyType
from typing import Mapping

from .exactmath import IntPolynomial

REFERENCE_SHA256 = "bc9b3ee6b3be86cee99b5e870b71bf1e3b353c34d45306acc9227090ad890d72"


class ReferenceIntegrityError(RuntimeError):
    pass


def _num(s: str) -> int:
    return int(s.replace(",", ""))


@dataclass(frozen=True)
class ReferenceData:
    r0: Mapping[int, int]
    q: Mapping[int, int]
    q_ie: Mapping[int, int]
    chi_mid: Mapping[int, IntPolynomial]
    table1: tuple[Mapping[str, str], ...]
    sources: Mapping[str, str]


def _raw() -> bytes:
    return resources.files("rank_arrange").joinpath("data/reference.json").read_bytes()


@lru_cache(maxsize=1)
def load_reference() -> ReferenceData:
    raw = _raw()
    digest = hashlib.sha256(raw).hexdigest()
    if digest != REFERENCE_SHA256:
        raise ReferenceIntegrityError(f"reference.json hash {digest} does not match the pinned value")
    data = json.loads(raw)

    def ints(section):
        return MappingProxyType({int(k): _num(v) for k, v in data[section]["values"].items()})

    chi = {}
    for key in ("9", "10"):
        factor_desc = [int(c) for c in data["chi_mid"][key]]
        factor = IntPolynomial(tuple(reversed(factor_desc)))
        chi[int(key)] = IntPolynomial((0, -1, 1)) * factor  # t(t-1) * factor
    cols = data["table1"]["columns"]
    rows = tuple(MappingProxyType(dict(zip(cols, row))) for row in data["table1"]["rows"])
    sources = {k: v["source"] for k, v in data.items() if isinstance(v, dict) and "source" in v}
    return ReferenceData(ints("r0"), ints("q"), ints("q_ie"), MappingProxyType(chi), rows,
                         MappingProxyType(sources))
