"""Shared converters between the package's bitmask world and the oracles'
frozenset world, plus a cached enumeration of the small spaces."""

import pytest

from finlat import enumerate_topologies
from finlat.bitset import bits, mask_of


def family_of(space):
    return frozenset(frozenset(bits(u)) for u in space.opens)


def mask_from(subset):
    return mask_of(sorted(subset))


def set_from(mask):
    return frozenset(bits(mask))


_SPACES = {}


def spaces_upto(k):
    out = []
    for n in range(1, k + 1):
        if n not in _SPACES:
            _SPACES[n] = tuple(enumerate_topologies(n))
        out.extend(_SPACES[n])
    return out


@pytest.fixture(scope="session")
def small_spaces():
    return spaces_upto(3)
