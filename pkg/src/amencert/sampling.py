"""Seeded random instances for property checks.

Used by the test suite and by the CLI selftest; everything is driven by a
caller-supplied `random.Random` so runs are reproducible.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .complexes import KIND_L1, KIND_LINF, BoundedCochain, EquivariantChain, UfChain
from .functions import BoundedFn, Constant, Finite, FinSuppFn, bounded_const_plus_finite
from .groups import Element, FiniteGroup, FreeAbelianGroup, FreeGroup, GroupSpec


def random_element(rng: random.Random, group: GroupSpec, max_len: int = 3) -> Element:
    if isinstance(group, FreeGroup):
        word: list[int] = []
        for _ in range(rng.randint(0, max_len)):
            choices = [s for s in range(-group.rank, group.rank + 1) if s and (not word or s != -word[-1])]
            word.append(rng.choice(choices))
        return tuple(word)
    if isinstance(group, FreeAbelianGroup):
        return tuple(rng.randint(-max_len, max_len) for _ in range(group.rank))
    assert isinstance(group, FiniteGroup)
    return rng.randrange(group.order)


def random_fraction(rng: random.Random, allow_zero: bool = False) -> Fraction:
    num = rng.randint(-3, 3)
    if not allow_zero and num == 0:
        num = 1
    return Fraction(num, rng.randint(1, 3))


def random_finsupp(
    rng: random.Random, group: GroupSpec, max_terms: int = 3, max_len: int = 3, zero_sum: bool = False
) -> FinSuppFn:
    terms = [(random_element(rng, group, max_len), random_fraction(rng)) for _ in range(rng.randint(1, max_terms))]
    f = FinSuppFn(group, terms)
    if zero_sum:
        f = f - f.coeff_sum() * FinSuppFn(group, {group.identity: 1})
    return f


def random_boundedfn(rng: random.Random, group: GroupSpec, max_len: int = 3) -> BoundedFn:
    shape = rng.randrange(3)
    if shape == 0:
        return Constant(group, random_fraction(rng, allow_zero=True))
    if shape == 1:
        return Finite(random_finsupp(rng, group, max_len=max_len))
    return bounded_const_plus_finite(
        group, random_fraction(rng), random_finsupp(rng, group, max_len=max_len)
    )


def random_tuple(rng: random.Random, group: GroupSpec, length: int, max_len: int = 2) -> tuple:
    return tuple(random_element(rng, group, max_len) for _ in range(length))


def random_l1_chain(
    rng: random.Random, group: GroupSpec, degree: int, max_entries: int = 3, max_len: int = 2
) -> EquivariantChain:
    entries = {}
    for _ in range(rng.randint(1, max_entries)):
        entries[random_tuple(rng, group, degree, max_len)] = random_finsupp(rng, group, max_len=max_len)
    return EquivariantChain(group, degree, KIND_L1, entries)


def random_linf_chain(
    rng: random.Random, group: GroupSpec, degree: int, max_entries: int = 3, max_len: int = 2
) -> EquivariantChain:
    entries = {}
    for _ in range(rng.randint(1, max_entries)):
        entries[random_tuple(rng, group, degree, max_len)] = random_boundedfn(rng, group, max_len)
    return EquivariantChain(group, degree, KIND_LINF, entries)


def random_cochain(
    rng: random.Random, group: GroupSpec, degree: int, max_entries: int = 3, max_len: int = 2
) -> BoundedCochain:
    entries = {}
    for _ in range(rng.randint(1, max_entries)):
        entries[random_tuple(rng, group, degree, max_len)] = random_finsupp(rng, group, max_len=max_len)
    return BoundedCochain.from_map(group, degree, entries)


def random_uf_chain(
    rng: random.Random, group: GroupSpec, degree: int, max_entries: int = 3, max_len: int = 2
) -> UfChain:
    coeffs = {}
    for _ in range(rng.randint(1, max_entries)):
        coeffs[random_tuple(rng, group, degree + 1, max_len)] = random_fraction(rng)
    return UfChain(group, degree, coeffs)
