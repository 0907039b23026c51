from fractions import Fraction

import pytest
from hypothesis import settings
from hypothesis import strategies as st

from gcv.polyring import MPoly, parse_poly

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def P(text: str, names: str = "x,y") -> MPoly:
    return parse_poly(text, names.split(","))


@st.composite
def mpolys(draw, nvars=2, max_degree=3, max_terms=5, coeff=50):
    """Random dense-ish integer polynomial with bounded total degree."""
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        e = draw(st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars))
        if sum(e) > max_degree:
            continue
        terms[tuple(e)] = draw(st.integers(-coeff, coeff))
    return MPoly(nvars, {m: c for m, c in terms.items() if c})


@st.composite
def points(draw, nvars=2):
    return tuple(Fraction(draw(st.integers(-20, 20)), draw(st.integers(1, 7))) for _ in range(nvars))


@pytest.fixture
def xy():
    return ["x", "y"]


def pytest_terminal_summary(terminalreporter):
    verdicts: dict[int, tuple[bool, str]] = {}
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if rep.when == "call" and "criterion" in props:
                ok, _ = verdicts.get(props["criterion"], (True, ""))
                verdicts[props["criterion"]] = (ok and outcome == "passed", props["summary"])
    if verdicts:
        terminalreporter.section("acceptance criteria")
        for k in sorted(verdicts):
            ok, text = verdicts[k]
            terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {text}")
