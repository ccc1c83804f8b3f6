"""Shared fixtures: a handful of small polytopes with known invariants."""

import pytest

from polynorm import build_polytope, reeve_simplex

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def criterion_report():
    """Record one PASS/FAIL line per acceptance criterion.

    Lines also land in the terminal summary, so the verdicts stay visible
    even when pytest captures the per-test output.
    """

    def record(line: str) -> None:
        _acceptance_lines.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture
def unit_square():
    return build_polytope([(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture
def unit_cube():
    return build_polytope([(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)])


@pytest.fixture
def t2():
    # Reeve simplex with q=2; only lattice points are the four vertices
    return reeve_simplex(2)


@pytest.fixture
def delta3():
    return build_polytope([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])


@pytest.fixture
def big_triangle():
    # 3 * (standard 2-simplex): has (1, 1) in its interior, so d = 0
    return build_polytope([(0, 0), (3, 0), (0, 3)])


@pytest.fixture
def skew_triangle():
    # conv{(0,0),(1,2),(2,1)}: four lattice points, the classic example whose
    # degree-3 fiber at (3,3,3) splits into the vertex triple and the
    # tripled centroid with no quadratic move between them
    return build_polytope([(0, 0), (1, 2), (2, 1)])
