"""
Shared fixtures and the --runslow switch
"""
import pytest

from data.fixtures import law_pd, three_efficient


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='run long statistical reproductions')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def client():
    """Create test client"""
    from api.app import app, limiter
    app.config['TESTING'] = True
    app.config['SECRET_KEY'] = 'test-secret-key'
    limiter.enabled = False
    with app.test_client() as client:
        yield client


@pytest.fixture
def example_pd():
    return law_pd()


@pytest.fixture
def example_three():
    return three_efficient()
