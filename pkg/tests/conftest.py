import random

import pytest
from hypothesis import strategies as st

from spacecode.source_model import normalize


def random_dist(rng, n, k):
    # mix of shapes so that both p1 branches and near-ties show up
    shape = rng.choice(("flat", "skewed", "spiky"))
    if shape == "flat":
        w = [rng.uniform(0.5, 1.0) for _ in range(n)]
    elif shape == "skewed":
        w = [rng.expovariate(1.0) ** 3 + 1e-6 for _ in range(n)]
    else:
        w = [rng.random() + 1e-6 for _ in range(n)]
        w[0] += n * rng.uniform(0, 3)
    return normalize(w, k)


@pytest.fixture
def rng():
    return random.Random(20240601)


weights = st.lists(st.floats(min_value=1e-3, max_value=1.0), min_size=1, max_size=40)
alphabets = st.sampled_from([2, 3, 4, 16])


@st.composite
def distributions(draw, max_n=40, ks=(2, 3, 4, 16)):
    w = draw(st.lists(st.floats(min_value=1e-3, max_value=1.0), min_size=1, max_size=max_n))
    k = draw(st.sampled_from(ks))
    return normalize(w, k)


# acceptance criteria are marked @pytest.mark.acceptance(number, title); the
# terminal summary prints one PASS/FAIL line for each
_acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _acceptance[number] = (title, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, passed = _acceptance[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  [{number:2d}] {title}")
