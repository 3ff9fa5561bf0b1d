import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from psts.classify import REPRESENTATIVE_TRIPLES, triple_from_tokens
from psts.constructions import stp_triple


@pytest.fixture(scope="session")
def representative_configs():
    """The seventeen class representatives, keyed by token triple."""
    return {
        tokens: stp_triple(*triple_from_tokens(tokens))
        for tokens in REPRESENTATIVE_TRIPLES
    }


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)


def shuffled_identity(rng, n):
    image = list(range(n))
    rng.shuffle(image)
    return image
