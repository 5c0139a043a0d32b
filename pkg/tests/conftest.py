import os

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="run the long exhaustive checks (S_7, D_5 KL)")


def slow_enabled(config) -> bool:
    return config.getoption("--slow") or os.environ.get("KLH_SLOW") == "1"


def pytest_collection_modifyitems(config, items):
    if slow_enabled(config):
        return
    skip = pytest.mark.skip(reason="needs --slow or KLH_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def slow(request):
    return slow_enabled(request.config)
