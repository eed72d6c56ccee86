import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))


def random_rational(rng, bound=100):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_curve_pair(rng, bound=100):
    while True:
        a, b = random_rational(rng, bound), random_rational(rng, bound)
        if a not in (0, 1) and b not in (0, 1) and a != b:
            return a, b


def random_point(rng, diagonal=False, bound=100):
    """Six constraint-satisfying rationals (a1, b1, a2, b2, a3, b3) by rejection sampling."""
    if diagonal:
        a, b = random_curve_pair(rng, bound)
        return (a, b) * 3
    return tuple(x for _ in range(3) for x in random_curve_pair(rng, bound))


@pytest.fixture
def rng():
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in mod.RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
