from hypothesis import strategies as st

from palrhythm.core import Rhythm

ACCEPTANCE_RESULTS: dict[str, str] = {}


@st.composite
def rhythms(draw, max_n=40):
    n = draw(st.integers(min_value=1, max_value=max_n))
    onsets = draw(st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1))
    return Rhythm(n, tuple(sorted(onsets)))


@st.composite
def rhythms_with_rest(draw, max_n=40):
    r = draw(rhythms(max_n=max_n))
    if r.p == r.n:
        r = Rhythm(r.n + 1, r.onsets)
    return r


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE_RESULTS, key=lambda s: int(s.split()[0][1:])):
        terminalreporter.write_line(f"{ACCEPTANCE_RESULTS[name]:4}  {name}")
