import pytest

from constraint_minors.catalog import catalog
from constraint_minors.graph import build


def two_four_cycles(x=()):
    """Cycles s-a-t-b-s and s-c-t-d-s sharing s=0, t=1 (a, b, c, d = 2, 3, 4, 5).

    Labels: 0 sa, 1 at, 2 tb, 3 bs, 4 sc, 5 ct, 6 td, 7 ds.
    """
    return build(6, [(0, 2), (2, 1), (1, 3), (3, 0), (0, 4), (4, 1), (1, 5), (5, 0)], x)


# triangle 345 with ears 4-0-5, 5-1-3, 3-2-4 and one X edge per ear: unrealizable,
# yet series-parallel, so none of the six 3-connected obstructions is a minor
EARS_EDGES = [(0, 4), (0, 5), (1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (3, 5), (4, 5)]
EARS_X = [0, 2, 4]


@pytest.fixture(scope="session")
def cat():
    return catalog()


@pytest.fixture
def ears():
    return build(6, EARS_EDGES, EARS_X)
