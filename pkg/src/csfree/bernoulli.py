"""Bernoulli numbers by exact inversion of the series (e^x - 1)/x.

The inversion is the single mechanism shared with the rest of the series
machinery; computed values are memoized, and the cache only ever grows.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial

_lock = threading.Lock()
_cache: list[Fraction] = [Fraction(1)]  # B_0


def _extend(n: int) -> None:
    with _lock:
        have = len(_cache)
        if n < have:
            return
        # h = x/(e^x - 1): invert g_k = 1/(k+1)! term by term
        h = [_cache[k] / factorial(k) for k in range(have)]
        for k in range(have, n + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                hk = h[k - j]
                if hk:
                    acc += Fraction(1, factorial(j + 1)) * hk
            h.append(-acc)
            _cache.append(h[k] * factorial(k))


def bernoulli(n: int) -> Fraction:
    """The n-th Bernoulli number (B_1 = -1/2 convention)."""
    if n < 0:
        raise ValueError("Bernoulli index must be >= 0")
    if n >= len(_cache):
        _extend(n)
    return _cache[n]


def modified_bernoulli(k: int) -> Fraction:
    """B_k / (k * k!) for even positive k."""
    if k <= 0 or k % 2:
        raise ValueError(f"modified Bernoulli number needs even positive index, got {k}")
    return bernoulli(k) / (k * factorial(k))
