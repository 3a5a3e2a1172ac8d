"""Bitmask helpers for subsets of {1, ..., d}.

Point p corresponds to bit p-1.  All subset families in the package are kept
in the canonical order (popcount, then point tuple), which coincides with
"by size, then lexicographic".
"""

from itertools import combinations

MAX_GROUND = 64


def bit(p):
    return 1 << (p - 1)


def mask_of(points):
    m = 0
    for p in points:
        m |= 1 << (p - 1)
    return m


def points_of(mask):
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def full_mask(d):
    return (1 << d) - 1


def canon_key(mask):
    """Sort key giving the (size, lexicographic) order on subsets."""
    return (mask.bit_count(), points_of(mask))


def submasks_of_size(mask, k):
    """All k-element submasks of mask, in lexicographic point order."""
    for combo in combinations(points_of(mask), k):
        m = 0
        for p in combo:
            m |= 1 << (p - 1)
        yield m


def masks_of_size(d, k):
    """All k-element subsets of [d] as masks, in lexicographic order."""
    return submasks_of_size(full_mask(d), k)
