"""Exact integer root extraction."""

from __future__ import annotations

import math

from ..errors import DomainError


def introot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by Newton iteration."""
    if n < 0:
        raise DomainError("introot of negative integer")
    if k == 1 or n in (0, 1):
        return n
    if k == 2:
        return math.isqrt(n)
    if n.bit_length() <= k:
        # n < 2**k means the root is 1 (n >= 2 here)
        return 1
    x = 1 << (-(-n.bit_length() // k))
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def exact_root(n: int, k: int):
    """The exact integer k-th root of n >= 0, or None."""
    r = introot(n, k)
    return r if r**k == n else None
