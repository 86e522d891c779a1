"""Closed-form crossing counts, all in exact integer arithmetic.

Verification elsewhere in the package compares geometric counts against
these values by integer equality, never by tolerance.
"""

from __future__ import annotations


def hill_number(n: int) -> int:
    """The Hill number H(n) = (1/4) floor(n/2) floor((n-1)/2) floor((n-2)/2)
    floor((n-3)/2), the conjectured crossing number of the complete graph.

    The product of the four floors is always divisible by 4, so the result
    is exact.  Requires n >= 3.
    """
    n = _check_int(n, "n")
    if n < 3:
        raise ValueError(f"hill_number requires n >= 3, got {n}")
    prod = (n // 2) * ((n - 1) // 2) * ((n - 2) // 2) * ((n - 3) // 2)
    q, r = divmod(prod, 4)
    assert r == 0
    return q


def per_vertex_target(n: int) -> int:
    """Crossings the edges at any one vertex participate in, for an
    antipodal drawing of the complete graph on n vertices:
    (n-2)^2 (n-4) / 16.  Requires even n >= 6.
    """
    n = _check_int(n, "n")
    if n % 2 != 0 or n < 6:
        raise ValueError(f"per_vertex_target requires even n >= 6, got {n}")
    q, r = divmod((n - 2) ** 2 * (n - 4), 16)
    assert r == 0
    return q


def partial_matching_target(n: int, t: int) -> int:
    """Crossing count attained when t of the k = n/2 matching half-circles
    are left out of a strength-0 antipodal drawing:
    H(n) - t (k-1)(k-2) / 2.  Requires even n, 0 <= t <= k.
    """
    n = _check_int(n, "n")
    t = _check_int(t, "t")
    if n % 2 != 0 or n < 6:
        raise ValueError(f"partial_matching_target requires even n >= 6, got {n}")
    k = n // 2
    if not 0 <= t <= k:
        raise ValueError(f"t must be in [0, {k}], got {t}")
    q, r = divmod(t * (k - 1) * (k - 2), 2)
    assert r == 0
    return hill_number(n) - q


def _check_int(value, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} must be an integer, got {value!r}")
    return value
