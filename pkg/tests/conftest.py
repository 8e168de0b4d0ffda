import pytest

from casselman import build_root_system, parse_element


def el(rs, text):
    """Element from "s1*s2", "12" (digit letters) or "" / "e" for the identity."""
    if text in ("", "e"):
        return parse_element(rs, [])
    if "*" in text or text.startswith("s"):
        return parse_element(rs, text)
    return parse_element(rs, [int(c) for c in text])


@pytest.fixture(scope="session")
def A1():
    return build_root_system("A", 1)


@pytest.fixture(scope="session")
def A2():
    return build_root_system("A", 2)


@pytest.fixture(scope="session")
def A3():
    return build_root_system("A", 3)


@pytest.fixture(scope="session")
def A4():
    return build_root_system("A", 4)


@pytest.fixture(scope="session")
def B2():
    return build_root_system("B", 2)


# acceptance lines, printed once at the end of the run

_LINES = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_LINES] = {}


@pytest.fixture
def acceptance(request):
    """acceptance(key, ok, detail) records one criterion verdict."""
    lines = request.config.stash[_LINES]

    def record(key, ok, detail):
        lines[key] = (bool(ok), detail)
        print(f"criterion {key}: {'PASS' if ok else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, {})
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(lines, key=lambda k: (int(k.split(".")[0]), k)):
        ok, detail = lines[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")
