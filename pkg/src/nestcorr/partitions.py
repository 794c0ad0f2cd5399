"""Partitions, strict partitions, boxed plane partitions and MacMahon's box formula.

Partitions are plain tuples.  Their length is significant, so (2, 1) and
(2, 1, 0) are different values.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import LengthMismatch, NotStrict, ValidationError
from .qcore import QPoly, exact_div

__all__ = [
    "staircase",
    "to_strict",
    "to_weak",
    "convert_partition",
    "hat_partition",
    "hat_strict",
    "weight",
    "iter_partitions_in_box",
    "iter_plane_partitions",
    "plane_partition_volume",
    "zq_brute",
    "zq_product",
    "macmahon_count",
]


def staircase(N):
    """(N-1, ..., 1, 0)."""
    return tuple(range(N - 1, -1, -1))


def weight(parts):
    return sum(parts)


def _check_weak(lam):
    if any(p < 0 for p in lam):
        raise ValidationError(f"negative part in {lam}")
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)):
        raise ValidationError(f"{lam} is not weakly decreasing")


def _check_strict(mu):
    if any(p < 0 for p in mu):
        raise ValidationError(f"negative part in {mu}")
    if any(mu[i] <= mu[i + 1] for i in range(len(mu) - 1)):
        raise NotStrict(f"{mu} is not strictly decreasing")


def to_strict(lam, N=None):
    """mu = lam + delta_N."""
    lam = tuple(lam)
    if N is not None and len(lam) != N:
        raise LengthMismatch(f"partition {lam} does not have length {N}")
    _check_weak(lam)
    n = len(lam)
    return tuple(p + n - 1 - i for i, p in enumerate(lam))


def to_weak(mu, N=None):
    """lam = mu - delta_N."""
    mu = tuple(mu)
    if N is not None and len(mu) != N:
        raise LengthMismatch(f"strict partition {mu} does not have length {N}")
    _check_strict(mu)
    n = len(mu)
    return tuple(p - (n - 1 - i) for i, p in enumerate(mu))


def convert_partition(parts, direction, N):
    """Convert between a partition and its strict partition.

    ``direction`` is ``"to_strict"`` or ``"to_weak"``.
    """
    if direction == "to_strict":
        return to_strict(parts, N)
    if direction == "to_weak":
        return to_weak(parts, N)
    raise ValidationError(f"unknown direction {direction!r}")


def hat_partition(lam, k):
    """Pad a partition of length N-k with k zeros."""
    lam = tuple(lam)
    _check_weak(lam)
    return lam + (0,) * k


def hat_strict(lam, k):
    """Strict partition (lam + delta_{N-k} + k, delta_k) for lam of length N-k.

    Equal to ``to_strict(hat_partition(lam, k))``.
    """
    lam = tuple(lam)
    _check_weak(lam)
    a = len(lam)
    head = tuple(p + a - 1 - i + k for i, p in enumerate(lam))
    return head + staircase(k)


def iter_partitions_in_box(N, top, n=0):
    """Every lam with top >= lam_1 >= ... >= lam_N >= n, lexicographically decreasing."""
    if top < n or n < 0 or N < 0:
        raise ValidationError("need top >= n >= 0 and N >= 0")

    def rec(prefix, hi, left):
        if left == 0:
            yield tuple(prefix)
            return
        for v in range(hi, n - 1, -1):
            prefix.append(v)
            yield from rec(prefix, v, left - 1)
            prefix.pop()

    yield from rec([], top, N)


@lru_cache(maxsize=None)
def _rows(N, K):
    """All weakly decreasing rows of length N with entries <= K, lex increasing."""
    out = []

    # entries decrease along the row, so build from the left with an
    # upper bound; ascending choices give lexicographic order
    def rec_left(prefix, hi):
        if len(prefix) == N:
            out.append(tuple(prefix))
            return
        for v in range(0, hi + 1):
            prefix.append(v)
            rec_left(prefix, v)
            prefix.pop()

    rec_left([], K)
    return tuple(out)


@lru_cache(maxsize=None)
def _below(N, K):
    """For each row, the rows that may sit under it (componentwise <=)."""
    rows = _rows(N, K)
    return {r: tuple(s for s in rows if all(a <= b for a, b in zip(s, r))) for r in rows}


def iter_plane_partitions(L, N, K):
    """Every plane partition in the L x N x K box as a tuple of L rows.

    Rows are zero-padded to length N.  Order is lexicographic on the
    row-major list of parts.
    """
    if min(L, N, K) < 0:
        raise ValidationError("box sides must be non-negative")
    if L == 0 or N == 0:
        yield tuple(() if N == 0 else (0,) * N for _ in range(L))
        return
    rows = _rows(N, K)
    below = _below(N, K)

    def rec(prefix, allowed):
        if len(prefix) == L:
            yield tuple(prefix)
            return
        for r in allowed:
            prefix.append(r)
            yield from rec(prefix, below[r])
            prefix.pop()

    yield from rec([], rows)


def plane_partition_volume(pi):
    return sum(sum(row) for row in pi)


def zq_brute(L, N, K):
    """Sum of q^|pi| over the box, by listing every plane partition."""
    counts = {}
    for pi in iter_plane_partitions(L, N, K):
        v = plane_partition_volume(pi)
        counts[v] = counts.get(v, 0) + 1
    return QPoly.from_dict(counts)


@lru_cache(maxsize=None)
def _one_minus_q(a):
    # 1 - q^a
    return QPoly.const(1) - QPoly.monomial(a)


@lru_cache(maxsize=None)
def zq_product(L, N, K):
    """prod_{j<=L, k<=N} (1 - q^(K+j+k-1)) / (1 - q^(j+k-1))."""
    if min(L, N, K) < 0:
        raise ValidationError("box sides must be non-negative")
    num = QPoly.const(1)
    den = QPoly.const(1)
    for j in range(1, L + 1):
        for k in range(1, N + 1):
            num = num * _one_minus_q(K + j + k - 1)
            den = den * _one_minus_q(j + k - 1)
    return exact_div(num, den)


@lru_cache(maxsize=None)
def macmahon_count(L, N, K):
    """prod (K+j+k-1)/(j+k-1): number of plane partitions in the box."""
    if min(L, N, K) < 0:
        raise ValidationError("box sides must be non-negative")
    acc = Fraction(1)
    for j in range(1, L + 1):
        for k in range(1, N + 1):
            acc *= Fraction(K + j + k - 1, j + k - 1)
    assert acc.denominator == 1
    return acc.numerator
