"""Shared fixtures for dendrokit tests."""
import random
from pathlib import Path

import pytest

from dendrokit import dset
from dendrokit.smc import cyclic_group, from_commutative_monoid, max_monoid, picard_sign_example
from dendrokit.suites import SuiteBounds
from dendrokit.tree import parse_tree

DATA_DIR = Path(__file__).parent.parent / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240601)


@pytest.fixture
def figure_tree():
    """e[c[a,b],d]: a 2-corolla grafted on the first leaf of another 2-corolla."""
    return parse_tree("e[c[a,b],d]")


@pytest.fixture
def z2():
    return from_commutative_monoid(cyclic_group(2), name="z2")


@pytest.fixture
def max2():
    return from_commutative_monoid(max_monoid(2), name="max2")


@pytest.fixture
def z2_nerve(z2):
    return dset.nerve(z2)


@pytest.fixture
def max2_nerve(max2):
    return dset.nerve(max2)


@pytest.fixture
def sign_nerve():
    return dset.nerve(picard_sign_example())


@pytest.fixture
def small_bounds() -> SuiteBounds:
    return SuiteBounds(
        max_vertices=2,
        max_arity=2,
        max_edges=4,
        horn_vertices=3,
        monoid_order=3,
        kan_monoid_order=2,
        simplicial_samples=8,
        attach_samples=6,
        quotient_samples=5,
        fibrant_vertices=1,
        fibrant_arity=2,
    )
