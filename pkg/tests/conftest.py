import os

import pytest

from superpattern_tools.parsers.claims import parse_claims_file
from superpattern_tools.parsers.model import parse_model_file

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(*parts: str) -> str:
    return os.path.join(FIXTURES, *parts)


def read_fixture(*parts: str) -> str:
    with open(fixture_path(*parts), "r", encoding="utf-8") as fl:
        return fl.read()


@pytest.fixture
def koa():
    return parse_claims_file(fixture_path("koa.claims")).claims[0]


@pytest.fixture
def corpus():
    return parse_claims_file(fixture_path("corpus.claims"))


@pytest.fixture
def three_person_model():
    return parse_model_file(fixture_path("three_person.model"))


@pytest.fixture
def two_world_model():
    return parse_model_file(fixture_path("two_world.model"))
