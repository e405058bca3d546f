import numpy as np
import pytest

from fqchain.gf import field, field_from_order

SUPPORTED_Q = (2, 3, 4, 5, 7, 8, 9, 11)


@pytest.fixture(scope="session")
def all_fields():
    return [field_from_order(q) for q in SUPPORTED_Q]


@pytest.fixture(scope="session")
def f2():
    return field(2)


@pytest.fixture(scope="session")
def f3():
    return field(3)


@pytest.fixture(scope="session")
def f4():
    return field(2, 2)


@pytest.fixture(scope="session")
def f5():
    return field(5)


def make_rng(*key):
    return np.random.default_rng(np.random.SeedSequence(entropy=key))


@pytest.fixture()
def rng(request):
    # a per-test deterministic generator keyed on the test name
    return make_rng(sum(map(ord, request.node.name)))
