import pytest


def pytest_addoption(parser):
    parser.addoption("--long-run", action="store_true", default=False,
                     help="also run the slow checks (minutes to hours)")


def pytest_configure(config):
    config.addinivalue_line("markers", "long_run: slow check, needs --long-run")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--long-run"):
        return
    skip = pytest.mark.skip(reason="needs --long-run")
    for item in items:
        if "long_run" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
