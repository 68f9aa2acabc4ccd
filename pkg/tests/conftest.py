import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from marksmith.catalogue import alternating, klein4, symmetric  # noqa: E402
from marksmith.groups import direct_product  # noqa: E402


@pytest.fixture(scope="session")
def S3():
    return symmetric(3)


@pytest.fixture(scope="session")
def A5():
    return alternating(5)


@pytest.fixture(scope="session")
def V4():
    return klein4()


@pytest.fixture(scope="session")
def S3xS3(S3):
    return direct_product(S3, S3)[0]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.report_line(n))
