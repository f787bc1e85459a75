"""Integer and rational primitives shared by every other module.

Scalars are :class:`fractions.Fraction` throughout; it is arbitrary precision
and always stored in lowest terms with a positive denominator.  Multi-indices
are plain tuples of non-negative ints and index sets are strictly increasing
tuples of 0-based axes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations
from typing import Union

Rational = Fraction
Scalar = Union[int, Fraction]
MultiIndex = tuple[int, ...]
IndexSet = tuple[int, ...]


def binom(a: int, b: int) -> int:
    """Binomial coefficient that vanishes whenever ``a < b`` or ``b < 0``.

    This is the convention every dimension count in the package relies on;
    in particular ``binom(-1, 0) == 0`` and ``binom(r - 1, -1) == 0``.
    """
    if b < 0 or a < b:
        return 0
    return math.comb(a, b)


def enumerate_multi_indices(n: int, r: int) -> list[MultiIndex]:
    """All exponent tuples of length ``n`` summing to ``r``.

    Ordered lexicographically with the leading exponent largest first, so
    ``(2, 2)`` gives ``[(2, 0), (1, 1), (0, 2)]``.  ``n == 0`` is accepted
    and yields ``[()]`` for ``r == 0`` (polynomials on a point).
    """
    if r < 0 or n < 0:
        return []
    if n == 0:
        return [()] if r == 0 else []
    if n == 1:
        return [(r,)]
    out: list[MultiIndex] = []
    for head in range(r, -1, -1):
        for tail in enumerate_multi_indices(n - 1, r - head):
            out.append((head, *tail))
    return out


def enumerate_index_sets(n: int, k: int) -> list[IndexSet]:
    """All ``k``-subsets of ``{0, ..., n-1}`` in lexicographic order."""
    if k < 0 or k > n:
        return []
    return list(combinations(range(n), k))


def as_rational(x: Scalar | str) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # Floats would silently carry binary rounding into exact results.
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)
