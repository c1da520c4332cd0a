import hashlib

import pytest

from rank_arrange import reference as r


def test_hash_pinned():
    assert hashlib.sha256(r._raw()).hexdigest() == r.REFERENCE_SHA256


def test_values():
    ref = r.load_reference()
    assert ref.r0[6] == 168 and ref.q[5] == 365 and ref.q_ie[6] == 55
    assert ref.chi_mid[9].degree == 9 and ref.chi_mid[10].leading == 1
    assert set(ref.sources) >= {"r0", "q", "q_ie", "chi_mid", "table1"}
    with pytest.raises(TypeError):
        ref.r0[4] = 3


def test_tampering_detected(monkeypatch):
    r.load_reference.cache_clear()
    monkeypatch.setattr(r, "_raw", lambda: b"{}")
    try:
        with pytest.raises(r.ReferenceIntegrityError):
            r.load_reference()
    finally:
        monkeypatch.undo()
        r.load_reference.cache_clear()
