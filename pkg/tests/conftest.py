import pytest
from hypothesis import strategies as st

from wordmaps.words import Word, commutator, theorem_word

letters = st.tuples(st.sampled_from([1, 2]), st.integers(-4, 4).filter(bool))


def words(max_blocks=12):
    return st.lists(letters, max_size=max_blocks).map(Word.of)


C = commutator(Word.gen(1, -2), Word.gen(2, -1))

PANEL = {
    "x1": Word.gen(1),
    "x1^2": Word.gen(1, 2),
    "c": C,
    "w1": theorem_word(1),
    "w2": theorem_word(2),
}


@pytest.fixture
def panel():
    return dict(PANEL)


_criteria = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = getattr(report, "criterion", None)
    if number is not None:
        elapsed = dict(report.user_properties).get("elapsed")
        _criteria.append((number, report.outcome, report.nodeid, elapsed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        rep.criterion = mark.args[0]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, outcome, nodeid, elapsed in sorted(_criteria, key=lambda r: (r[0], r[2])):
        status = "PASS" if outcome == "passed" else "FAIL"
        timing = f" ({elapsed:.2f}s)" if elapsed is not None else ""
        terminalreporter.write_line(f"criterion {number:>2}: {status}  {nodeid.split('::')[-1]}{timing}")
