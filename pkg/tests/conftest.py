import random

import pytest

from boxpleat.polycube import DIRECTIONS, Polycube, step

CORPUS_SEED = 20261016
CORPUS_SIZE = 54


def random_polycube(rng: random.Random, n: int) -> Polycube:
    """Grow a polycube by attaching cubes to random exposed faces."""
    cells = {(0, 0, 0)}
    while len(cells) < n:
        c = rng.choice(sorted(cells))
        cells.add(step(c, rng.choice(DIRECTIONS)))
    return Polycube.of(cells)


def make_corpus(seed: int = CORPUS_SEED, size: int = CORPUS_SIZE) -> list[Polycube]:
    rng = random.Random(seed)
    # every size 1..6 appears several times
    return [random_polycube(rng, 1 + k % 6) for k in range(size)]


@pytest.fixture(scope="session")
def corpus():
    return make_corpus()


@pytest.fixture
def domino():
    return Polycube.of([(0, 0, 0), (1, 0, 0)])


@pytest.fixture
def tromino_l():
    return Polycube.of([(0, 0, 0), (1, 0, 0), (1, 1, 0)])
