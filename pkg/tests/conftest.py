import random
import time

import pytest
from hypothesis import settings

DEFAULT_SEED = 20240101

settings.register_profile("repro", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("repro")


def pytest_addoption(parser):
    parser.addoption(
        "--seed", type=int, default=DEFAULT_SEED, help="seed for randomized samples"
    )


def pytest_report_header(config):
    return f"sebthom test seed: {config.getoption('--seed')}"


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed):
    return random.Random(seed)


# -- acceptance summary: one line per criterion -------------------------------

_criteria = {}


@pytest.fixture
def criterion(request):
    """Tag a test as an acceptance criterion: ``criterion("AC1", "title")``."""

    def tag(key, title):
        request.node.user_properties.append(("criterion", (key, title)))

    return tag


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    key, title = props["criterion"]
    entry = _criteria.setdefault(key, {"title": title, "passed": True, "seconds": 0.0})
    entry["seconds"] += report.duration
    if report.failed:
        entry["passed"] = False


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    seed = terminalreporter.config.getoption("--seed")
    terminalreporter.write_line(f"seed {seed}")
    for key in sorted(_criteria, key=lambda k: int(k[2:])):
        entry = _criteria[key]
        status = "PASS" if entry["passed"] else "FAIL"
        terminalreporter.write_line(
            f"{status}  {key}  {entry['title']}  ({entry['seconds']:.1f}s)"
        )
