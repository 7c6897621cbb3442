from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from homwitt.laurent import LaurentPoly
from homwitt.scalars import DEFAULT_PARAMS

settings.register_profile(
    "homwitt", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("homwitt")

P = DEFAULT_PARAMS
q = P.gen("q")


def poly_in_q(coeffs):
    out = P.zero()
    for i, c in enumerate(coeffs):
        out = out + c * q**i
    return out


ints = st.integers(-4, 4)


@st.composite
def scalars(draw, allow_zero=True):
    """Random rational functions in q built from small integer polynomials."""
    num = poly_in_q(draw(st.lists(ints, min_size=1, max_size=4)))
    den = poly_in_q(draw(st.lists(ints, min_size=1, max_size=3)))
    if not den:
        den = P.one()
    s = num / den
    if not allow_zero and not s:
        s = P.one() + q
    return s


nonzero_scalars = scalars(allow_zero=False)


@st.composite
def laurents(draw, nvars=1, max_terms=3, radius=3, allow_zero=True):
    exps = st.tuples(*[st.integers(-radius, radius)] * nvars)
    terms = draw(st.dictionaries(exps, scalars(), max_size=max_terms))
    f = LaurentPoly(terms, nvars, P)
    if not allow_zero and f.is_zero:
        f = LaurentPoly.monomial((1,) * nvars, 1, nvars, P)
    return f


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def frac_q_number(n, x):
    """{n} at q = x with plain Fraction arithmetic."""
    x = Fraction(x)
    if x == 1:
        return Fraction(n)
    return (x**n - 1) / (x - 1)


# -- acceptance summary ------------------------------------------------------

import pytest  # noqa: E402

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion check")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (rep.when != "call" and not rep.failed):
        return
    number, title = marker.args
    entry = _CRITERIA.setdefault(number, {"title": title, "failed": []})
    if rep.failed:
        entry["failed"].append(getattr(item, "callspec", None) and item.callspec.id or item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "FAIL" if entry["failed"] else "PASS"
        line = f"criterion {number:>2}: {status}  {entry['title']}"
        if entry["failed"]:
            line += f"  (failing: {', '.join(entry['failed'])})"
        terminalreporter.write_line(line)
