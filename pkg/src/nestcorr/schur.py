"""Schur functions: bialternant, tableau enumeration, skew rectangle complements
and principal specializations.

Evaluation points are tuples of exact scalars (int, Fraction, QPoly).
Float and complex points are accepted as well and go through numpy.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from numbers import Integral

import numpy as np

from . import checks
from .errors import (
    LengthMismatch,
    RepeatedPoint,
    ValidationError,
    ZeroArgument,
    ZeroLimitInvalid,
)
from .qcore import QPoly, det

__all__ = [
    "is_inexact",
    "vandermonde",
    "bialternant",
    "schur_eval",
    "iter_ssyt",
    "iter_skew_ssyt",
    "schur_tableau_oracle",
    "schur_tableau_eval",
    "ssyt_count_formula",
    "skew_schur_eval",
    "q_points",
    "principal_specialization",
]


def is_inexact(values):
    return any(isinstance(v, (float, complex, np.floating, np.complexfloating)) for v in values)


def _power(x, e):
    if e < 0 and isinstance(x, Integral):
        return Fraction(1, int(x) ** (-e))
    return x**e


def _ratio(num, den):
    if isinstance(num, Integral) and isinstance(den, Integral):
        return Fraction(int(num), int(den)) if int(num) % int(den) else int(num) // int(den)
    return num / den


def vandermonde(x):
    """det(x_j^(N-k)) = prod_{i<j} (x_i - x_j), with x in the given order."""
    x = tuple(x)
    acc = 1
    for i in range(len(x)):
        for j in range(i + 1, len(x)):
            acc = acc * (x[i] - x[j])
    return acc


def _alternant(exponents, x):
    rows = [[_power(xj, e) for e in exponents] for xj in x]
    if is_inexact(x):
        return complex(np.linalg.det(np.array(rows, dtype=complex))) if rows else 1.0
    return det(rows)


def bialternant(lam, x):
    """det(x_j^(lam_k + N - k)) / det(x_j^(N - k)), no special cases."""
    N = len(x)
    exps = [p + N - 1 - k for k, p in enumerate(lam)]
    num = _alternant(exps, x)
    den = vandermonde(x)
    if den == 0:
        raise RepeatedPoint(f"repeated evaluation points {x}")
    return _ratio(num, den)


def _has_repeats(x):
    seen = []
    for v in x:
        if any(v == w for w in seen):
            return True
        seen.append(v)
    return False


def schur_eval(lam, x, strict=False):
    """S_lam(x) for a partition of the same length as x.

    Zero entries in x are removed together with the same number of
    trailing zero parts of lam; that is the exact zero limit.  Repeated
    points make the bialternant 0/0: they raise RepeatedPoint when
    ``strict`` is set and are otherwise evaluated from the tableau sum.
    """
    lam = tuple(lam)
    x = tuple(x)
    if len(lam) != len(x):
        raise LengthMismatch(f"partition length {len(lam)} != {len(x)} points")
    zeros = [i for i, v in enumerate(x) if v == 0]
    if zeros:
        k = len(zeros)
        if any(p != 0 for p in lam[len(lam) - k:]):
            raise ZeroLimitInvalid(
                f"{k} zero points need {k} trailing zero parts, got {lam}"
            )
        rest = tuple(v for v in x if v != 0)
        return schur_eval(lam[: len(lam) - k], rest, strict=strict)
    if not x:
        return 1
    if _has_repeats(x):
        if strict:
            raise RepeatedPoint(f"repeated evaluation points {x}")
        return schur_tableau_eval(lam, x)
    return bialternant(lam, x)


def iter_ssyt(shape, N, low=1):
    """Semistandard tableaux of ``shape`` with entries in [low, N].

    Each tableau is a tuple of rows; empty rows are kept so row i of the
    tableau is always row i of the shape.
    """
    shape = tuple(p for p in shape)
    yield from iter_skew_ssyt(shape, (0,) * len(shape), N, low)


def iter_skew_ssyt(outer, inner, N, low=1):
    """Semistandard fillings of the skew shape outer/inner with entries in [low, N].

    Row r covers columns inner[r] .. outer[r]-1.  Rows weakly increase,
    columns strictly increase.
    """
    outer = tuple(outer)
    inner = tuple(inner)
    if len(outer) != len(inner):
        raise LengthMismatch("outer and inner shapes differ in length")
    if any(i > o for i, o in zip(inner, outer)):
        raise ValidationError(f"{inner} does not fit inside {outer}")
    rows = len(outer)
    cells = [(r, c) for r in range(rows) for c in range(inner[r], outer[r])]
    grid = [dict() for _ in range(rows)]

    def rec(idx):
        if idx == len(cells):
            yield tuple(tuple(grid[r][c] for c in range(inner[r], outer[r])) for r in range(rows))
            return
        r, c = cells[idx]
        lo = low
        if c > inner[r]:
            lo = max(lo, grid[r][c - 1])
        if r > 0 and c in grid[r - 1]:
            lo = max(lo, grid[r - 1][c] + 1)
        for v in range(lo, N + 1):
            grid[r][c] = v
            yield from rec(idx + 1)
        grid[r].pop(c, None)

    yield from rec(0)


def content(tableau, N):
    """(c_1, ..., c_N): how many times each entry occurs."""
    c = [0] * N
    for row in tableau:
        for v in row:
            c[v - 1] += 1
    return tuple(c)


def schur_tableau_oracle(lam, N, contents=False):
    """Enumerate SSYT of shape lam with entries in [N].

    Returns ``(multiset, count)``; the multiset maps a content vector
    (c_1..c_N) to its multiplicity and is None unless requested.
    """
    lam = tuple(p for p in lam if p > 0)
    if len(lam) > N:
        return (Counter() if contents else None), 0
    counter = Counter()
    total = 0
    for t in iter_ssyt(lam, N):
        total += 1
        if contents:
            counter[content(t, N)] += 1
    return (counter if contents else None), total


def schur_tableau_eval(lam, x):
    """S_lam(x) as the sum over tableaux of prod x_j^(c_j)."""
    x = tuple(x)
    multiset, _ = schur_tableau_oracle(lam, len(x), contents=True)
    total = 0
    for c, mult in sorted(multiset.items()):
        term = mult
        for xj, cj in zip(x, c):
            if cj:
                term = term * xj**cj
        total = total + term
    return total


def ssyt_count_formula(lam, N):
    """prod_{j<k} (lam_j - j - lam_k + k) / (k - j): the value S_lam(1^N)."""
    lam = tuple(lam) + (0,) * (N - len(lam))
    if len(lam) > N:
        return 0
    acc = Fraction(1)
    for j in range(N):
        for k in range(j + 1, N):
            acc *= Fraction(lam[j] - j - lam[k] + k, k - j)
    assert acc.denominator == 1
    return acc.numerator


def _inverse(v):
    if isinstance(v, QPoly):
        return v**-1
    if isinstance(v, Integral):
        return Fraction(1, int(v))
    return 1 / v


def skew_schur_eval(lam, Mcal, y, check=None):
    """Schur function of the complement of lam in the N x Mcal rectangle.

    The exponent of y_alpha in column beta is Mcal - lam_{N-beta+1} + N - beta,
    i.e. lam is read backwards.
    """
    lam = tuple(lam)
    y = tuple(y)
    N = len(y)
    if len(lam) != N:
        raise LengthMismatch(f"partition length {len(lam)} != {N} points")
    if any(p > Mcal for p in lam):
        raise ValidationError(f"{lam} does not fit under height {Mcal}")
    if any(v == 0 for v in y):
        raise ZeroArgument("skew Schur evaluation needs nonzero points")
    if N == 0:
        return 1
    exps = [Mcal - lam[N - 1 - b] + N - 1 - b for b in range(N)]
    num = _alternant(exps, y)
    den = _alternant(list(range(N - 1, -1, -1)), y)
    if den == 0:
        raise RepeatedPoint(f"repeated evaluation points {y}")
    value = _ratio(num, den)
    if checks.enabled(check) and not is_inexact(y):
        inv = tuple(_inverse(v) for v in y)
        other = schur_eval(lam, inv)
        for v in y:
            other = other * v**Mcal
        checks.require_equal("skew Schur vs S_lam(1/y) prod y^M", value, other)
    return value


_MODES = {
    "q_N": lambda N: [QPoly.monomial(j) for j in range(1, N + 1)],
    "q_N/q": lambda N: [QPoly.monomial(j) for j in range(0, N)],
    "1/q_N": lambda N: [QPoly.monomial(-j) for j in range(1, N + 1)],
}


def q_points(start, stop):
    """(q^start, ..., q^(stop-1)) as QPoly monomials."""
    return tuple(QPoly.monomial(j) for j in range(start, stop))


def principal_specialization(lam, N, mode):
    """S_lam at (q, ..., q^N), (1, ..., q^(N-1)) or (1/q, ..., 1/q^N).

    ``mode`` is one of ``"q_N"``, ``"q_N/q"``, ``"1/q_N"``.
    """
    lam = tuple(lam)
    if len(lam) > N:
        raise LengthMismatch(f"partition {lam} longer than {N}")
    if mode not in _MODES:
        raise ValidationError(f"unknown specialization {mode!r}")
    lam = lam + (0,) * (N - len(lam))
    return QPoly.coerce(schur_eval(lam, _MODES[mode](N)))
