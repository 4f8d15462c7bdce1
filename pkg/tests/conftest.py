import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from quiverflag import catalog  # noqa: E402
from quiverflag.quiver import make_spec  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "data"


def random_strict_spec(rng: random.Random, max_rho=4, max_s=6, toric=False):
    """A strict spec with s_i <= max_s; ranks are 1 when ``toric``."""
    rho = rng.randint(1, max_rho)
    dims = [1]
    arrows = []
    for v in range(1, rho + 1):
        target = rng.randint(2, max_s)
        s = 0
        incoming = []
        while True:
            choices = [t for t in range(v) if s + dims[t] <= target]
            if not choices:
                break
            t = rng.choice(choices)
            incoming.append((t, v))
            s += dims[t]
            if s >= 2 and rng.random() < 0.3:
                break
        if s < 2:
            incoming.append((0, v))
            s += 1
        arrows.extend(incoming)
        dims.append(1 if toric else rng.randint(1, s - 1))
    return make_spec(rho + 1, arrows, dims)


@pytest.fixture
def p2p1():
    return catalog.p2_bundle_over_p1()


@pytest.fixture
def tower():
    return catalog.p2_bundle_tower()


@pytest.fixture
def gr_bundle():
    return catalog.grassmann_bundle_122()


@pytest.fixture
def gr42():
    return catalog.kronecker(4, 2)


@pytest.fixture
def fl421():
    return catalog.flag(4, (2, 1))
