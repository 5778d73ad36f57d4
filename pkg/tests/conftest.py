import random
from fractions import Fraction

import pytest

from nilorbit.algebra import build_n_m
from nilorbit.coadjoint import Functional
from nilorbit.superalgebra import build_glmn_plus, build_super_heisenberg

ACCEPTANCE_LINES: list[str] = []


def rand_q(rng, lo=-9, hi=9):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 9))


def rand_vec(rng, n, lo=-9, hi=9):
    return tuple(rand_q(rng, lo, hi) for _ in range(n))


def rand_functional(alg, rng, even_only=False):
    return Functional(alg, tuple(Fraction(0) if even_only and alg.parity[i] else rand_q(rng)
                                 for i in range(alg.dim)))


def even_vec(alg, rng):
    return tuple(Fraction(0) if alg.parity[i] else rand_q(rng) for i in range(alg.dim))


@pytest.fixture
def rng():
    return random.Random(20261018)


@pytest.fixture(scope="session")
def n3():
    return build_n_m(3)


@pytest.fixture(scope="session")
def n4():
    return build_n_m(4)


@pytest.fixture(scope="session")
def sh():
    return build_super_heisenberg()


@pytest.fixture(scope="session")
def gl32():
    return build_glmn_plus(3, 2)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
