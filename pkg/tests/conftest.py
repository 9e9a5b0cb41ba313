import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracle  # noqa: E402
from sdtring.catalog import builtin_catalog, catalog_by_name  # noqa: E402

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def oracle_ring(expr: str, corner=None):
    return oracle.from_expr(expr, corner)


@pytest.fixture(scope="session")
def catalog():
    return builtin_catalog()


@pytest.fixture(scope="session")
def catalog_rings(catalog):
    return {entry.name: entry.build() for entry in catalog}


@pytest.fixture(scope="session")
def small_entries(catalog):
    """Catalog entries cheap enough for per-element cross-checks."""
    return [e for e in catalog if e.build().order <= 729]


@pytest.fixture
def record_criterion():
    def record(number: int, ok: bool, text: str):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {text}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def entry(name: str):
    return catalog_by_name()[name]
