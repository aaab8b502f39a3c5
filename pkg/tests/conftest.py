import pytest

from bicellular.map_core import PlantedBicellularMap


@pytest.fixture
def order_fixture():
    """Genus-0 map with m = 2: edges (0 3)(4 7)(1 5)(2 6)."""
    return PlantedBicellularMap([3, 5, 6, 0, 7, 1, 2, 4], 4)


@pytest.fixture
def minimal_map():
    """Two plants joined by a single edge."""
    return PlantedBicellularMap([2, 4, 0, 5, 1, 3], 3)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
