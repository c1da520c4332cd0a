import pytest

# criterion number -> list of (label, ok, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[str, bool, str]]] = {}


def pytest_addoption(parser):
    parser.addoption("--full", action="store_true", help="run the slower full-scope checks")
    parser.addoption("--extended", action="store_true", help="run long extended-scope computations")


def pytest_collection_modifyitems(config, items):
    full = config.getoption("--full") or config.getoption("--extended")
    ext = config.getoption("--extended")
    for item in items:
        if "extended" in item.keywords and not ext:
            item.add_marker(pytest.mark.skip(reason="extended scope; pass --extended"))
        elif "full" in item.keywords and not full:
            item.add_marker(pytest.mark.skip(reason="full scope; pass --full"))


def record(criterion: int, label: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, []).append((label, ok, detail))
    print(f"criterion {criterion:>2} [{label}]: {'PASS' if ok else 'FAIL'} {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in range(1, 13):
        entries = ACCEPTANCE.get(n)
        if not entries:
            tr.write_line(f"criterion {n:>2}: NOT RUN")
            continue
        ok = all(e[1] for e in entries)
        parts = "; ".join(f"{label} {'ok' if good else 'FAILED'}{(' (' + d + ')') if d else ''}"
                          for label, good, d in entries)
        tr.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {parts}")
