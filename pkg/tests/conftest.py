from fractions import Fraction as Q

import pytest

from polarpoints.polycore import MPoly
from polarpoints.sysbuild import InputSystem

R2 = ("x1", "x2")
R3 = ("x1", "x2", "x3")


def mp(expr: str, ring=R2) -> MPoly:
    """Build an MPoly from a Python expression over the ring's names."""
    env = {name: MPoly.var(ring, k) for k, name in enumerate(ring)}
    env["Q"] = Q
    out = eval(expr, env)
    return out if isinstance(out, MPoly) else MPoly.constant(ring, out)


FIXTURES = {
    "circle": (["x1**2 + x2**2 - 1"], R2, 1),
    "hyperbola": (["x1*x2 - 1"], R2, 2),
    "sphere": (["x1**2 + x2**2 + x3**2 - 1"], R3, 1),
}


def system(name: str) -> InputSystem:
    polys, ring, _ = FIXTURES[name]
    return InputSystem.from_polys([mp(e, ring) for e in polys])


@pytest.fixture
def circle():
    return system("circle")


@pytest.fixture
def hyperbola():
    return system("hyperbola")


@pytest.fixture
def sphere():
    return system("sphere")


# acceptance lines, printed once at the end of the run
ACCEPTANCE = []


def record(criterion: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
    ACCEPTANCE.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
