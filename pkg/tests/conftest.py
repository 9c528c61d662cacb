import pytest

from wordavoid import F_MORPHISM, G_MORPHISM, Template, ancestor_closure
from wordavoid.templates import parent_derivations

_acceptance_lines = []


@pytest.fixture(scope="session")
def f():
    return F_MORPHISM


@pytest.fixture(scope="session")
def g():
    return G_MORPHISM


@pytest.fixture(scope="session")
def t0():
    return Template.zero(4)


@pytest.fixture(scope="session")
def g_parents(g, t0):
    return parent_derivations(g, t0)


@pytest.fixture(scope="session")
def closure(f, g_parents):
    return ancestor_closure(f, g_parents)


@pytest.fixture
def acceptance():
    """Record one PASS/FAIL line per acceptance criterion, then assert."""
    def record(number, description, ok, detail=""):
        line = f"[criterion {number:>2}] {'PASS' if ok else 'FAIL'}  {description}"
        if detail:
            line += f"  ({detail})"
        _acceptance_lines.append(line)
        print(line)
        assert ok, line
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines):
            terminalreporter.write_line(line)
