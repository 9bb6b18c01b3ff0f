import random

import pytest

from streamfec.construction import StreamParams, validate_and_derive, build_code


@pytest.fixture(scope="session")
def ex1():
    """The (W=10, T=9, B=5, N=3) code: k=7, n=12, M=1, delta=2, GF(7^9)."""
    return build_code(validate_and_derive(StreamParams(10, 9, 5, 3)))


@pytest.fixture(scope="session")
def ex2():
    """The (W=11, T=10, B=4, N=2) code: k=9, n=13, M=2, delta=0, GF(5^9)."""
    return build_code(validate_and_derive(StreamParams(11, 10, 4, 2)))


def random_block(g, rng: random.Random):
    ext = g.field()
    return [ext.random_element(rng) for _ in range(g.derived.k)]
