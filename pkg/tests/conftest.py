import pytest

RESULTS = {}


@pytest.fixture
def record_criterion():
    def record(res):
        RESULTS[res.number] = res
    return record


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        res = RESULTS[k]
        terminalreporter.write_line(res.line())
        for name, want, got in res.rows:
            if want != got:
                terminalreporter.write_line(f"    {name}: expected {want}, computed {got}")
        for note in res.notes:
            terminalreporter.write_line(f"    {note}")
