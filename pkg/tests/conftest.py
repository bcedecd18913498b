import itertools
import random

import pytest

from amencert.groups import FiniteGroup, cyclic_group, free_abelian_group, free_group


def symmetric_table(n):
    """Multiplication table of the symmetric group on n points."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[k]] for k in range(n))] for q in perms]
        for p in perms
    ]
    return table, perms, index


def s3_group():
    table, perms, index = symmetric_table(3)
    gens = (index[(1, 0, 2)], index[(1, 2, 0)])  # a transposition and a 3-cycle
    return FiniteGroup(table, generators=gens)


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture
def f2():
    return free_group(2)


@pytest.fixture
def z2():
    return free_abelian_group(2)


@pytest.fixture
def z3():
    return cyclic_group(3)


@pytest.fixture
def s3():
    return s3_group()


@pytest.fixture
def all_groups(f2, z2, z3):
    return [f2, z2, z3]
