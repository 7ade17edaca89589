import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from artifact.augmentation import augment
from artifact.diagram import parse_pd
from artifact.polyhedral import boundary_complex, decompose
from artifact.tangles import (H, V, alternating_closure, denominator, double_twist, pretzel,
                              rational, summed)

FIXTURE_DIR = Path(__file__).parent / "fixtures"

TREFOIL = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"
FIG8 = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]"

# prime, twist-reduced, at least two twist regions
GOOD = {
    "fig8": lambda: double_twist(2, 2),
    "knot_5_2": lambda: double_twist(3, 2),
    "knot_6_1": lambda: double_twist(4, 2),
    "dt67": lambda: double_twist(6, 7),
    "pretzel333": lambda: pretzel(3, 3, 3),
    "pretzel223": lambda: pretzel(2, 2, 3),
    "rational222": lambda: rational(2, 2, 2),
}
# connected sum of two twist knots joined through a nugatory 2-crossing region
CONNECT_SUM = lambda: alternating_closure([(V, 3), (H, 2), (V, 3)], summed, denominator)  # noqa: E731
CONNECT_SUM_33 = lambda: alternating_closure([(V, 3), (V, 3)], summed, denominator)  # noqa: E731
# a flype position: two H2 blocks separated by V3
NOT_TWIST_REDUCED = lambda: alternating_closure([(H, 2), (V, 3), (H, 2), (V, 2)], summed)  # noqa: E731


@lru_cache(maxsize=None)
def diagram(name):
    if name in GOOD:
        return GOOD[name]()
    return {"connect_sum": CONNECT_SUM, "connect_sum_33": CONNECT_SUM_33,
            "not_twist_reduced": NOT_TWIST_REDUCED,
            "trefoil": lambda: parse_pd(TREFOIL)}[name]()


@lru_cache(maxsize=None)
def decomposition(name):
    return decompose(augment(diagram(name)), require_valid=False)


@lru_cache(maxsize=None)
def complex_of(name):
    return boundary_complex(decomposition(name).polyhedra[0])


@pytest.fixture
def fig8():
    return parse_pd(FIG8)


@pytest.fixture
def octa():
    return complex_of("fig8")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
