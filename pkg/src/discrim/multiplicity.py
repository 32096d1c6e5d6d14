"""Multiplicities w(m, j) of L_{|m|-2j} inside L_{m_1} (x) ... (x) L_{m_n}.

Two independent routes are provided: folding Clebsch-Gordan one factor at a
time (:func:`w_via_tensor`) and a recursion peeling off the smallest highest
weight (:func:`w_via_recursion`).
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Sequence


def _check(m: Sequence[int]) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if any(x < 0 for x in m):
        raise ValueError(f"highest weights must be nonnegative, got {m}")
    return m


def max_level(m: Sequence[int]) -> int:
    """Largest r with |m| - 2r >= 0."""
    return sum(m) // 2


@lru_cache(maxsize=None)
def _tensor_decomposition(m: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    parts = Counter({0: 1})
    for b in m:
        nxt: Counter = Counter()
        for a, count in parts.items():
            lo, hi = min(a, b), max(a, b)
            for i in range(lo + 1):
                nxt[hi + lo - 2 * i] += count
        parts = nxt
    return tuple(sorted(parts.items(), reverse=True))


def tensor_decomposition(m: Sequence[int]) -> dict[int, int]:
    """Map highest weight -> multiplicity for the tensor product L^{(x) m}."""
    return dict(_tensor_decomposition(_check(m)))


def w_via_tensor(m: Sequence[int], j: int) -> int:
    m = _check(m)
    top = sum(m) - 2 * j
    if j < 0 or top < 0:
        return 0
    return dict(_tensor_decomposition(m)).get(top, 0)


@lru_cache(maxsize=None)
def _w_sorted(m: tuple[int, ...], j: int) -> int:
    n = len(m)
    if j < 0 or j > sum(m) // 2:
        return 0
    if n == 0:
        return 1 if j == 0 else 0
    if n == 1:
        return 1 if j == 0 else 0
    if n == 2:
        return 1 if 0 <= j <= min(m) else 0
    m1, rest = m[0], m[1:]
    r1 = sum(rest) // 2
    if j < m1:
        lo, hi = 0, j
    elif j <= r1:
        lo, hi = j - m1, j
    else:
        lo, hi = j - m1, sum(rest) - j
    return sum(_w_sorted(rest, i) for i in range(lo, hi + 1))


def w_via_recursion(m: Sequence[int], j: int) -> int:
    """w(m, j) through the three-case recursion on the smallest entry of m."""
    return _w_sorted(tuple(sorted(_check(m))), int(j))


def w(m: Sequence[int], j: int) -> int:
    """Authoritative multiplicity (recursion route)."""
    return w_via_recursion(m, j)


def decomposition_vector(m: Sequence[int], method: str = "recursion") -> dict[int, int]:
    """All w(m, j) for 0 <= j <= max_level(m), keyed by j."""
    fn = {"recursion": w_via_recursion, "tensor": w_via_tensor}[method]
    return {j: fn(m, j) for j in range(max_level(m) + 1)}


def dimension_sum(m: Sequence[int]) -> int:
    return sum(c * (sum(m) - 2 * j + 1) for j, c in decomposition_vector(m).items())


def vanishing_check(m: Sequence[int], k: int) -> bool:
    """w(m, |m|-k+1) == 0 when 0 <= |m|-k+1 < k and some m_i >= k."""
    m = _check(m)
    j = sum(m) - k + 1
    if not (0 <= j < k):
        raise ValueError(f"need 0 <= |m|-k+1 < k, got |m|-k+1={j} for k={k}")
    if not any(x >= k for x in m):
        raise ValueError(f"need some m_i >= k={k}, got m={m}")
    return w_via_recursion(m, j) == 0
