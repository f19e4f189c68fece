"""Shared workspaces for the bundled scenarios.

Workspaces are session scoped because cochain equality is tied to atlas
object identity; every test that compares cochains on, say, the circle
scenario must use the same loaded copy.  Nothing in the test suite mutates
a workspace.
"""

import pytest

from orbspark.document import load_document
from orbspark.fixtures import BUILDERS


@pytest.fixture(scope="session")
def scenarios():
    return {name: load_document(fn()) for name, fn in BUILDERS.items()}


@pytest.fixture(scope="session")
def s1(scenarios):
    return scenarios["s1-arcs"]


@pytest.fixture(scope="session")
def mirror(scenarios):
    return scenarios["mirror-interval"]


@pytest.fixture(scope="session")
def cone(scenarios):
    return scenarios["cone-z4"]


@pytest.fixture(scope="session")
def chain(scenarios):
    return scenarios["chain"]
