import random
from fractions import Fraction
from pathlib import Path

import pytest

from krspec.spaces import GeneratorParams, gen_dyck, gen_rp, gen_torus

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir():
    return FIXTURES


@pytest.fixture(scope="session")
def dyck():
    return gen_dyck()


@pytest.fixture(scope="session")
def dyck_metric():
    return gen_dyck(GeneratorParams(mode="metric"))


@pytest.fixture(scope="session")
def rp():
    return {n: gen_rp(n) for n in (1, 2, 3)}


@pytest.fixture(scope="session")
def torus():
    return gen_torus()


def random_values(c, rng: random.Random, lo=-20, hi=20, den=4):
    """Rational vertex values on a small grid, so ties occur."""
    return {v: Fraction(rng.randint(lo, hi), den) for v in c.values}
