import random

import mpmath
import pytest
from flint import fmpq

from lobell.algfield import make_tower

def _k12():
    t = make_tower(24)
    return make_tower(24, [2, 3 + 2 * t.cos_pi(1, 6)])


# towers shared by the arithmetic tests
TOWER_BUILDERS = {
    "Q(sqrt2,sqrt3)": lambda: make_tower(1, [2, 3]),
    "Q(cos 2pi/7)": lambda: make_tower(7),
    "Q(cos 2pi/24)": lambda: make_tower(24),
    "K_12": _k12,
}


def build_tower(name):
    return TOWER_BUILDERS[name]()


@pytest.fixture(scope="session", params=sorted(TOWER_BUILDERS))
def tower(request):
    return build_tower(request.param)


def random_element(tower, rng: random.Random, span: int = 9, allow_zero: bool = True):
    while True:
        coords = [fmpq(rng.randint(-span, span), rng.randint(1, 4)) for _ in range(tower.dimension)]
        a = tower.from_coords(coords)
        if allow_zero or not a.is_zero():
            return a


@pytest.fixture(autouse=True)
def _restore_mpmath_precision():
    # several oracles raise mp.dps; keep that from leaking between tests
    dps = mpmath.mp.dps
    yield
    mpmath.mp.dps = dps


# -- acceptance summary ------------------------------------------------------

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
