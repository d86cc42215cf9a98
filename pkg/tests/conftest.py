from pathlib import Path

import pytest

from mpres.field import set_field
from mpres.filtration import parse

DATA = Path(__file__).parent / "data"


def load(name: str):
    return parse((DATA / name).read_text())


@pytest.fixture
def cz():
    return load("cz.mfil")


@pytest.fixture
def edge():
    return load("edge.mfil")


@pytest.fixture
def single():
    return load("single.mfil")


@pytest.fixture(autouse=True)
def rational_field():
    set_field("rational")
    yield
    set_field("rational")
