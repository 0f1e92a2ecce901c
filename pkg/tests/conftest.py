import sys

from hypothesis import settings, strategies as st

from clusterscat.series import TruncatedSeries

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

coeffs = st.one_of(st.integers(-5, 5), st.fractions(min_value=-3, max_value=3, max_denominator=4))


@st.composite
def series(draw, n=2, order=4, unit=False):
    exps = st.tuples(*[st.integers(0, order)] * n).filter(lambda e: sum(e) <= order)
    terms = draw(st.dictionaries(exps, coeffs, max_size=6))
    if unit:
        terms[(0,) * n] = 1
    return TruncatedSeries(n, order, terms)


rank2_pairs = st.sampled_from([(0, 0), (-1, 1), (-2, 1), (-1, 2), (-3, 1), (-1, 3), (-2, 2), (-4, 1), (-1, 4)])
finite_pairs = st.sampled_from([(0, 0), (-1, 1), (-2, 1), (-1, 2), (-3, 1), (-1, 3)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = mod.report_lines() if mod else []
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
