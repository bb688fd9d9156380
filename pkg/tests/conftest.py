from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def rationals(draw, bound=12, max_den=6):
    num = draw(st.integers(-bound, bound))
    den = draw(st.integers(1, max_den))
    return Fraction(num, den)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
