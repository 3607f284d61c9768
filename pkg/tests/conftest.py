import random
from pathlib import Path

import pytest
from hypothesis import strategies as st

from multigerm import BranchGerm, MultiGerm, Polynomial, VariableRing

GERMS = Path(__file__).resolve().parent.parent / "germs"


def bigerm():
    T = VariableRing(("T", "X", "Y", "Z"))
    S1 = VariableRing(("t", "x", "y"))
    S2 = VariableRing(("t'", "x'", "y'"))
    b1 = BranchGerm(S1, T, [S1(s) for s in ("t", "x", "y^3 + t*y", "x*y + y^5")], "f1")
    b2 = BranchGerm(S2, T, [S2(s) for s in ("t'", "x'", "y'", "t'")], "f2")
    return MultiGerm(T, [b1, b2])


def three_lines():
    P = VariableRing(("X", "Y"))
    branches = []
    for v, coords, name in (("u", ("u", "0"), "a"), ("v", ("0", "v"), "b"), ("w", ("w", "w"), "c")):
        S = VariableRing((v,))
        branches.append(BranchGerm(S, P, [S(c) for c in coords], name))
    return MultiGerm(P, branches)


def three_planes():
    P = VariableRing(("X", "Y", "Z"))
    S = VariableRing(("u", "v"))
    coords = (("0", "u", "v"), ("u", "0", "v"), ("u", "v", "0"))
    return MultiGerm(P, [BranchGerm(S, P, [S(c) for c in cs], n) for cs, n in zip(coords, "abc")])


@pytest.fixture(scope="session")
def big():
    return bigerm()


@pytest.fixture(scope="session")
def lines():
    return three_lines()


@pytest.fixture(scope="session")
def planes():
    return three_planes()


R3 = VariableRing(("x", "y", "z"))


@st.composite
def polys(draw, ring=R3, max_terms=4, max_deg=3, coeffs=st.integers(-5, 5)):
    n = ring.nvars
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        if sum(e) <= max_deg:
            terms[e] = draw(coeffs)
    return Polynomial(ring, terms)


def random_poly(rng: random.Random, ring=R3, max_terms=4, max_deg=3, height=5):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        e = tuple(rng.randint(0, max_deg) for _ in range(ring.nvars))
        if sum(e) <= max_deg:
            terms[e] = rng.randint(-height, height)
    return Polynomial(ring, terms)


def pytest_terminal_summary(terminalreporter):
    """Repeat the acceptance lines, also for criteria that crashed before reporting."""
    import re
    import sys

    mod = sys.modules.get("test_acceptance")
    results = dict(getattr(mod, "RESULTS", {}))
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            m = re.search(r"test_criterion_(\d+)_", getattr(rep, "nodeid", ""))
            if m and (rep.when == "call" or outcome == "error"):
                n = int(m.group(1))
                results.setdefault(n, f"criterion {n}: " + ("PASS" if outcome == "passed" else "FAIL (crashed)"))
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
