import os
import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from monores import Monomial, MonomialIdeal, minimalize  # noqa: E402

ROOT = Path(__file__).resolve().parents[1]
EXAMPLE_IDEAL = ROOT / "data" / "example_ideal.txt"

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def ideal(n, *rows):
    return minimalize([Monomial(tuple(r)) for r in rows], n=n)


def powers(n, D):
    return MonomialIdeal.from_rows(n, [tuple(D if j == i else 0 for j in range(n))
                                       for i in range(n)])


@st.composite
def small_ideals(draw, max_n=4, max_exp=3, max_gens=6):
    """Proper monomial ideals, not necessarily equigenerated."""
    n = draw(st.integers(1, max_n))
    vec = st.tuples(*[st.integers(0, max_exp)] * n).filter(any)
    rows = draw(st.lists(vec, max_size=max_gens))
    return ideal(n, *rows)


@st.composite
def equigenerated_ideals(draw, max_n=4, max_D=4, max_gens=7):
    from monores.monomial import monomial_array
    n = draw(st.integers(1, max_n))
    D = draw(st.integers(1, max_D))
    pool = [tuple(r) for r in monomial_array(n, D).tolist()]
    rows = draw(st.lists(st.sampled_from(pool), max_size=max_gens, unique=True))
    return MonomialIdeal.from_rows(n, rows)


# --------------------------------------------------------------- acceptance report
# Tests marked ``criterion(k)`` are tallied and summarized as one line per criterion.

_CRITERIA: dict[int, list[str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    outcome.get_result().criteria = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_runtest_logreport(report):
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        for k in getattr(report, "criteria", ()):
            _CRITERIA.setdefault(k, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        outcomes = _CRITERIA[k]
        bad = sum(o != "passed" for o in outcomes)
        detail = f"{len(outcomes)} checks" if not bad else f"{bad} of {len(outcomes)} checks failed"
        terminalreporter.write_line(f"criterion {k}: {'FAIL' if bad else 'PASS'} ({detail})")
