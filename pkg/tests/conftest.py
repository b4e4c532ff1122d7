import json
from pathlib import Path

import pytest

from stackypoly import document
from stackypoly.scalar import RealAlgebraicField

FIXTURES = Path(__file__).parent / "fixtures"

# filled in by the acceptance tests, reported at the end of the run
ACCEPTANCE: dict = {}


def load_fixture(name: str):
    return document.load(FIXTURES / f"{name}.json")


def load_derivation(name: str) -> dict:
    return json.loads((FIXTURES / f"{name}.derivation.json").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def sqrt2_field():
    return RealAlgebraicField([-2, 0, 1], [1, 2])


@pytest.fixture
def triangle():
    return load_fixture("triangle")


@pytest.fixture
def weighted_triangle():
    return load_fixture("weighted_triangle")


@pytest.fixture
def ex94():
    return load_fixture("ex94")


@pytest.fixture
def ex94_generic():
    return load_fixture("ex94_generic")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {title}  [{detail}]")
