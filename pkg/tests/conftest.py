import dataclasses

import pytest

from h2supply.data import bundle_path
from h2supply.scenario import load_scenario


@pytest.fixture(scope="session")
def corsica():
    return load_scenario(bundle_path("corsica"))


@pytest.fixture(scope="session")
def tiny():
    return load_scenario(bundle_path("desk_tiny"))


@pytest.fixture(scope="session")
def reference():
    return load_scenario(bundle_path("desk_reference"))


def with_options(s, **kw):
    return dataclasses.replace(s, options=dataclasses.replace(s.options, **kw))


def with_tech(s, **kw):
    return dataclasses.replace(s, tech=dataclasses.replace(s.tech, **kw))
