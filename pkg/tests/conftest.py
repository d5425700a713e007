from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=150, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_RESULTS: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_a"):
        return
    import test_acceptance

    key = name.removeprefix("test_").split("_", 1)[0].upper()
    detail = test_acceptance.DETAILS.get(key, "")
    _RESULTS[key] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_RESULTS, key=lambda k: int(k[1:])):
        status, detail = _RESULTS[key]
        terminalreporter.write_line(f"{key:<4} {status}  {detail}")
