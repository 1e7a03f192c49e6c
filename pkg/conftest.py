import os

import pytest

from kronholm.families import rp2_twisted
from kronholm.modules import FreeModule

ROOT = os.path.dirname(os.path.abspath(__file__))


@pytest.fixture
def corpus_path():
    def _path(name):
        return os.path.join(ROOT, "corpus", name)
    return _path


@pytest.fixture
def data_path():
    def _path(name):
        return os.path.join(ROOT, "tests", "data", name)
    return _path


@pytest.fixture
def rp2_spec():
    return rp2_twisted()


@pytest.fixture
def ramp5_basis():
    """The five-generator ramp below the cell (11,11)."""
    return FreeModule.of(("w1", (3, 2)), ("w2", (5, 1)), ("w3", (6, 1)), ("w4", (8, 2)), ("w5", (9, 0)))
