import math

import numpy as np
import pytest


def alpha1_max_closed_form(alpha2):
    """Upper edge of the admissible region, by completing the square in P'.

    With w = z - 1/2, P' = 1 + 2 a1 w + a2 (3 w^2 - 1/4). End points bind
    for a2 <= 1 (a1 <= 1 + a2/2); the interior vertex binds for a2 >= 1
    (a1^2 <= 3 a2 (1 - a2/4)).
    """
    if alpha2 < -2 or alpha2 > 4:
        return math.nan
    if alpha2 <= 1:
        return 1 + alpha2 / 2
    return math.sqrt(3 * alpha2 * (1 - alpha2 / 4))


def random_valid_params(rng, n, shrink=1.0):
    out = []
    while len(out) < n:
        a2 = rng.uniform(-2, 4)
        bound = alpha1_max_closed_form(a2)
        out.append((shrink * rng.uniform(-bound, bound), a2))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(1729)


ACCEPTANCE = []


@pytest.fixture
def record():
    """Log one pass/fail line for an acceptance criterion, then assert it."""

    def _record(name, ok, detail=""):
        ACCEPTANCE.append((name, bool(ok), detail))
        print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
        assert ok, f"{name}: {detail}"

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
