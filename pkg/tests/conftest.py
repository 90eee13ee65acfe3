import pytest

from tlfrontier.scltl import ObservationSet


@pytest.fixture
def abc() -> ObservationSet:
    return ObservationSet(["a", "b", "c"])
