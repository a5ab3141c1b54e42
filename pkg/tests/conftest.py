import csv
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))  # make `oracles` importable

from beurling.arith import moebius_sieve

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture(scope="session")
def table_small():
    return moebius_sieve(10_000)


@pytest.fixture(scope="session")
def table_100k():
    return moebius_sieve(100_000)


@pytest.fixture(scope="session")
def table_1m():
    return moebius_sieve(1_000_000)


@pytest.fixture(scope="session")
def zero_ordinates():
    """Ordinates of the first 100 nontrivial zeta zeros (vendored fixture),
    used only to keep direct-division cross-checks away from zeros."""
    path = os.path.join(DATA_DIR, "zeta_zeros.csv")
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    return np.array([float(r["ordinate"]) for r in rows])


@pytest.fixture()
def rng():
    return np.random.default_rng(20260810)
