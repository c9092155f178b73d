import pytest
from hypothesis import HealthCheck, settings

from cutdiagrams import corpus
from cutdiagrams.core import CutDiagram, Skeleton

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], max_examples=40
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def hopf():
    return corpus.load("hopf")


@pytest.fixture(scope="session")
def trefoil():
    return corpus.load("trefoil")


@pytest.fixture(scope="session")
def whitehead():
    return corpus.load("whitehead")


@pytest.fixture(scope="session")
def borromean():
    return corpus.load("borromean")


@pytest.fixture(scope="session")
def unlink2():
    return CutDiagram.empty(Skeleton(("circle", "circle")), "unlink2")


@pytest.fixture(scope="session")
def kink():
    return CutDiagram.build(["circle"], [[(1, (1, 0))]], "kink")
