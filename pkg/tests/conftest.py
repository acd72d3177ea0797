import os

import pytest

from slnc.lnc import load_code
from slnc.network import load_network

DATA = os.path.join(os.path.dirname(__file__), "data")


def data_path(name: str) -> str:
    return os.path.join(DATA, name)


@pytest.fixture(scope="session")
def fig2():
    return load_network(data_path("fig2.net"))


@pytest.fixture(scope="session")
def fig2_q11():
    return load_network(data_path("fig2_q11.net"))


@pytest.fixture(scope="session")
def fig2_q3():
    return load_network(data_path("fig2_q3.net"))


@pytest.fixture(scope="session")
def c3(fig2):
    return load_code(data_path("fig2_c3.slnc"), fig2)


@pytest.fixture(scope="session")
def c2(c3):
    return c3.truncate(2)


@pytest.fixture(scope="session")
def spec_w1r1(fig2):
    return load_code(data_path("fig2_w1r1.slnc"), fig2)
