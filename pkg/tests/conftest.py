import pytest

import helpers


@pytest.fixture
def toy():
    return helpers.toy()


@pytest.fixture
def toy_minus():
    return helpers.toy_minus_triangle()


@pytest.fixture
def toy_graph():
    return helpers.toy_graph()
