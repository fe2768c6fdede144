from pathlib import Path

import pytest

from vbshadow import parse_birack, parse_diagram, parse_module, parse_shadow

DATA = Path(__file__).resolve().parent.parent / "data"


def read(name):
    return (DATA / name).read_text()


def load_diagram(name):
    return parse_diagram(read(name))


@pytest.fixture(scope="session")
def two():
    return parse_birack(read("two.birack"))


@pytest.fixture(scope="session")
def checker(two):
    return parse_shadow(read("checkerboard.shadow"), two)


@pytest.fixture(scope="session")
def hopf_module(two, checker):
    return parse_module(read("hopf.module"), two, checker)


@pytest.fixture(scope="session")
def z5_modules(two, checker):
    return {k: parse_module(read(f"{k}.module"), two, checker)
            for k in ("hopf", "orientation", "alt", "table")}


@pytest.fixture(scope="session")
def three():
    return parse_birack(read("three.birack"))


@pytest.fixture(scope="session")
def twisted3():
    return parse_birack(read("three-twisted.birack"))


@pytest.fixture(scope="session")
def twisted_module(twisted3):
    s = parse_shadow(read("trivial3.shadow"), twisted3)
    return parse_module(read("twisted.module"), twisted3, s)


ACCEPTANCE = []  # (criterion, passed, detail), filled by test_acceptance


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {k}: {detail}")
