import random

import pytest

from ainfty.corpus import generate
from ainfty.dg import Complex, build_dg_category
from ainfty.hpt import hodge_sdr, transfer

SEED = 2026
SIZE = 25


@pytest.fixture(scope="session")
def corpus():
    return generate(SEED, SIZE)


@pytest.fixture(scope="session")
def m3_instance(corpus):
    return next(inst for inst in corpus if inst.has_m3)


def xyz_complexes():
    X = Complex("X", {0: 1, 1: 1}, {0: [[1]]})
    Y = Complex("Y", {0: 1})
    Z = Complex("Z", {-1: 1, 0: 2, 1: 1}, {-1: [[1], [0]], 0: [[0, 1]]})
    return [X, Y, Z]


@pytest.fixture(scope="session")
def xyz():
    return build_dg_category(xyz_complexes())


@pytest.fixture(scope="session")
def xyz_transfer(xyz):
    s = hodge_sdr(xyz)
    D, F = transfer(s, 5)
    return s, D, F


@pytest.fixture
def rng():
    return random.Random(7)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
