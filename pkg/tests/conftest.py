import pytest

_RESULTS = {}


@pytest.fixture
def record(request):
    """Attach a one-line measurement to the acceptance summary."""

    def _record(text):
        request.node.user_properties.append(("detail", text))

    return _record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.get_closest_marker("acceptance") is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        details = [v for k, v in item.user_properties if k == "detail"]
        _RESULTS[item.nodeid] = (doc, rep.outcome, details)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for doc, outcome, details in _RESULTS.values():
        mark = "PASS" if outcome == "passed" else "FAIL"
        line = f"{mark}  {doc}"
        if details:
            line += "  |  " + "; ".join(details)
        tr.write_line(line)
