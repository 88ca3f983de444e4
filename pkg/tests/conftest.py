import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--seed", type=int, default=0, help="seed for the sampled bracket checks"
    )


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")
