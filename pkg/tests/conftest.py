import random

import pytest
from hypothesis import strategies as st

from hookdet.matrix import PolyMatrix
from hookdet.poly import Polynomial, VarId, monomial

# small variable universe so that random polynomials share variables
VARS = [VarId(i, j, k) for i in (1, 2) for j in (1, 2) for k in (1, 2, 3)]

monomials = st.dictionaries(st.sampled_from(VARS), st.integers(1, 3), max_size=3)
polys = st.dictionaries(monomials.map(monomial), st.integers(-20, 20), max_size=5).map(Polynomial)
assignments = st.fixed_dictionaries({v: st.integers(-50, 50) for v in VARS})


def random_poly(rng: random.Random, terms: int = 3, levels: int = 3) -> Polynomial:
    p = Polynomial.const(rng.randint(-3, 3))
    for _ in range(rng.randint(0, terms)):
        t = Polynomial.const(rng.choice([-3, -2, -1, 1, 2, 3]))
        for _ in range(rng.randint(1, 2)):
            t = t * Polynomial.var(1, rng.randint(1, 2), rng.randint(1, levels))
        p = p + t
    return p


def random_matrix(rng: random.Random, n: int) -> PolyMatrix:
    return PolyMatrix.from_function(n, lambda r, c: random_poly(rng))


# --- acceptance criteria summary ------------------------------------------
# tests carry @pytest.mark.criterion(n, "title"); one line per criterion is
# printed at the end of the session.

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "failed": [], "ran": 0})
    if rep.when == "call":
        entry["ran"] += 1
    if rep.failed:
        entry["failed"].append(item.callspec.id if hasattr(item, "callspec") else item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        e = _CRITERIA[n]
        status = "FAIL" if e["failed"] else "PASS"
        line = f"criterion {n}: {status}  {e['title']}"
        if e["failed"]:
            line += f"  (failed: {', '.join(e['failed'])})"
        tr.write_line(line)
