import os
import random

import pytest

from wiring.diagram import Diagram, parse_diagram

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}

KELLY_MOSER = parse_diagram("l=7: (3,5)(1,3)(5,6)(3,5)(5,7)(2,3)(3,5)(1,3)(5,6)")
NODAL3 = Diagram(3, ((2, 3), (1, 2), (2, 3)))
SEED = int(os.environ.get("WIRING_TEST_SEED", "20240101"))


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE_RESULTS[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def rng():
    return random.Random(SEED)
