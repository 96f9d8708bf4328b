import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from bezknot.bezier import scale_for_subdivision, subdivide_levels  # noqa: E402
from bezknot.data import K0, K1  # noqa: E402
from bezknot.topology import PLKnot  # noqa: E402

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def scaled_curves():
    """K0 and K1 on the 2**29 lattice used by the published tables."""
    return {name: scale_for_subdivision(cp, 4)[0] for name, cp in (("K0", K0), ("K1", K1))}


@pytest.fixture(scope="session")
def level4(scaled_curves):
    return {name: subdivide_levels(cp, 4) for name, cp in scaled_curves.items()}


@pytest.fixture(scope="session")
def refinements(level4):
    return {name: PLKnot(f.refinement()) for name, f in level4.items()}


@pytest.fixture(scope="session")
def breakpoint_polygons(level4):
    """16-gons through the curve points C(k/16)."""
    return {name: PLKnot(f.breakpoints()) for name, f in level4.items()}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: (int("".join(c for c in k if c.isdigit())), k)):
        terminalreporter.write_line(results[key])
