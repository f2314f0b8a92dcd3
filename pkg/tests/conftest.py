import copy
import json

import pytest

from skewgroupoid.instance import fixture_path, instance_from_dict, load_fixture


def fixture_dict(name):
    return json.loads(fixture_path(name).read_text())


@pytest.fixture(scope="session")
def e57_dict():
    return fixture_dict("e57")


@pytest.fixture
def e57_data(e57_dict):
    """A private copy that a test may corrupt."""
    return copy.deepcopy(e57_dict)


@pytest.fixture(scope="session")
def e57():
    return load_fixture("e57").build()


@pytest.fixture(scope="session")
def e57_shrunk():
    return load_fixture("e57_shrunk").build()


def build_dict(data):
    return instance_from_dict(data).build()
