"""Koszul signs: swapping homogeneous a and b costs (-1)^{|a||b|}."""
from __future__ import annotations

from typing import Sequence


def koszul_sign(degrees: Sequence[int], order: Sequence[int]) -> int:
    """Sign of rearranging factors with these degrees into positions ``order``.

    ``order[k]`` is the original index of the factor that ends up k-th.
    """
    odd = [degrees[i] & 1 for i in order]
    s = 0
    n = len(order)
    for a in range(n):
        if not odd[a]:
            continue
        ia = order[a]
        for b in range(a + 1, n):
            if odd[b] and order[b] < ia:
                s ^= 1
    return -1 if s else 1


def sort_sign(items: Sequence, degrees: Sequence[int], key=None):
    """Stable sort of factors; returns (sign, order)."""
    idx = sorted(range(len(items)), key=(lambda i: items[i]) if key is None else (lambda i: key(items[i])))
    return koszul_sign(degrees, idx), idx


def reversal_sign(degrees: Sequence[int]) -> int:
    return koszul_sign(degrees, list(range(len(degrees) - 1, -1, -1)))
