"""Small helpers for subsets-of-points encoded as int bitmasks."""

from functools import lru_cache


def bit(i):
    return 1 << i


def full_mask(n):
    return (1 << n) - 1


def bits(mask):
    """Iterate set bit positions in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(points):
    m = 0
    for p in points:
        m |= 1 << p
    return m


def mask_to_list(mask):
    return list(bits(mask))


@lru_cache(maxsize=32)
def subsets_by_size(n):
    """All masks over n points, ordered by (popcount, value).

    The ordering makes quantifier counterexamples minimal and stable.
    """
    if n > 20:
        raise ValueError("subset enumeration capped at 20 points")
    return tuple(sorted(range(1 << n), key=lambda m: (m.bit_count(), m)))


def popcount_key(mask):
    return (mask.bit_count(), mask)
