from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

from scobcheck.matrix import Matrix
from scobcheck.words import Word

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "scobcheck" / "fixtures"
KNOT_FIXTURES = ["trefoil_right.json", "trefoil_left.json", "figure_eight.json", "unknot.json"]

ALPHABET = ("a", "b", "c")


def letters(alphabet=ALPHABET, max_size=30):
    return st.lists(st.tuples(st.sampled_from(alphabet), st.sampled_from((1, -1))), max_size=max_size)


def words(alphabet=ALPHABET, max_size=30):
    return letters(alphabet, max_size).map(Word)


def int_matrices(max_rows=5, max_cols=5, lo=-9, hi=9):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(lo, hi), min_size=c, max_size=c),
                               min_size=r, max_size=r).map(lambda rows: Matrix(rows, cols=c))))


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


# -- acceptance summary: one PASS/FAIL line per criterion ------------------------

_ACCEPTANCE: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.get_closest_marker("acceptance") is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        doc = (item.obj.__doc__ or item.name).strip().splitlines()[0]
        _ACCEPTANCE.append(("PASS" if rep.passed else "FAIL", doc))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for status, doc in _ACCEPTANCE:
        terminalreporter.write_line(f"{status}  {doc}")
    passed = sum(s == "PASS" for s, _ in _ACCEPTANCE)
    terminalreporter.write_line(f"{passed}/{len(_ACCEPTANCE)} criteria pass")
