"""Exact Laurent polynomials in q and the q-analogues built on them.

A QPoly stores ``min_degree`` and a dense tuple of Python ints.  Every
value is canonical (no zero at either end, zero is ``((), 0)``) so
equality and hashing are structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Integral

from .errors import DivisionByZero, NonDivisible

__all__ = [
    "QPoly",
    "Q",
    "exact_div",
    "q_int",
    "q_int_factorial",
    "q_binomial",
    "q_binomial_det",
    "det",
]


class QPoly:
    __slots__ = ("min_degree", "coeffs", "_hash")

    def __init__(self, coeffs=(), min_degree=0):
        coeffs = [int(c) for c in coeffs]
        lo, hi = 0, len(coeffs)
        while lo < hi and coeffs[lo] == 0:
            lo += 1
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.coeffs = ()
            self.min_degree = 0
        else:
            self.coeffs = tuple(coeffs[lo:hi])
            self.min_degree = int(min_degree) + lo
        self._hash = None

    # construction helpers

    @classmethod
    def monomial(cls, degree, coeff=1):
        return cls((coeff,), degree)

    @classmethod
    def const(cls, c):
        return cls((c,), 0)

    @classmethod
    def from_dict(cls, terms):
        terms = {k: v for k, v in terms.items() if v}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(k, 0) for k in range(lo, hi + 1)], lo)

    @classmethod
    def coerce(cls, other):
        if isinstance(other, QPoly):
            return other
        if isinstance(other, Integral):
            return cls.const(int(other))
        if isinstance(other, Fraction) and other.denominator == 1:
            return cls.const(other.numerator)
        return NotImplemented

    # basic queries

    @property
    def max_degree(self):
        if not self.coeffs:
            return 0
        return self.min_degree + len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_monomial(self):
        return len(self.coeffs) == 1

    def coeff(self, k):
        i = k - self.min_degree
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self):
        """Yield ``(degree, coefficient)`` for the nonzero coefficients."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.min_degree + i, c

    def truncate(self, max_degree):
        """Drop every term of degree above ``max_degree``."""
        if not self.coeffs or self.max_degree <= max_degree:
            return self
        keep = max_degree - self.min_degree + 1
        if keep <= 0:
            return QPoly()
        return QPoly(self.coeffs[:keep], self.min_degree)

    def shift(self, k):
        """Multiply by q**k."""
        if not self.coeffs:
            return self
        return QPoly(self.coeffs, self.min_degree + k)

    def __call__(self, value):
        """Evaluate at ``value`` (int, Fraction, float or complex)."""
        if not self.coeffs:
            return 0
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        if self.min_degree >= 0:
            return acc * value**self.min_degree
        if isinstance(value, Integral):
            value = Fraction(value)
        return acc / value ** (-self.min_degree)

    # arithmetic

    def __neg__(self):
        return QPoly([-c for c in self.coeffs], self.min_degree)

    def __pos__(self):
        return self

    def __add__(self, other):
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.min_degree, other.min_degree)
        hi = max(self.max_degree, other.max_degree)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.min_degree - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.min_degree - lo + i] += c
        return QPoly(out, lo)

    __radd__ = __add__

    def __sub__(self, other):
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly()
        if len(a) < len(b):
            a, b = b, a
        out = [0] * (len(a) + len(b) - 1)
        for j, y in enumerate(b):
            if y:
                for i, x in enumerate(a):
                    out[i + j] += x * y
        return QPoly(out, self.min_degree + other.min_degree)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, Integral):
            return NotImplemented
        e = int(e)
        if e < 0:
            if not self.is_monomial() or abs(self.coeffs[0]) != 1:
                raise NonDivisible("negative power of a non-unit QPoly")
            c = self.coeffs[0] ** (-e)
            return QPoly((c,), self.min_degree * e)
        result = QPoly.const(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, Integral):
            other = int(other)
            if other == 0:
                raise DivisionByZero("division of QPoly by 0")
            out = []
            for c in self.coeffs:
                qd, r = divmod(c, other)
                if r:
                    raise NonDivisible(f"coefficient {c} not divisible by {other}")
                out.append(qd)
            return QPoly(out, self.min_degree)
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return exact_div(self, other)

    def __rtruediv__(self, other):
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return exact_div(other, self)

    __floordiv__ = __truediv__

    # comparison and hashing

    def __eq__(self, other):
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.min_degree == other.min_degree and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            if len(self.coeffs) == 1 and self.min_degree == 0:
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.min_degree, self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    # serialization

    def to_json(self):
        return {"min_degree": self.min_degree, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj):
        return cls([int(c) for c in obj["coeffs"]], int(obj["min_degree"]))

    def __repr__(self):
        return f"QPoly({list(self.coeffs)!r}, {self.min_degree})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in self.terms():
            if k == 0:
                body = str(abs(c))
            else:
                mono = "q" if k == 1 else f"q^{k}"
                body = mono if abs(c) == 1 else f"{abs(c)} {mono}"
            sign = "-" if c < 0 else "+"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(f"{sign} {body}")
        return " ".join(parts)


Q = QPoly.monomial(1)


def exact_div(num, den):
    """Divide two QPolys, insisting on a zero remainder."""
    num = QPoly.coerce(num)
    den = QPoly.coerce(den)
    if not den.coeffs:
        raise DivisionByZero("exact_div by the zero polynomial")
    if not num.coeffs:
        return QPoly()
    if den.is_monomial():
        return QPoly(num.coeffs, num.min_degree - den.min_degree) / den.coeffs[0]
    # long division on the ordinary polynomials, highest degree first
    rem = list(num.coeffs)
    d = den.coeffs
    dl = len(d)
    lead = d[-1]
    nq = len(rem) - dl + 1
    if nq <= 0:
        raise NonDivisible(f"({num}) / ({den})")
    quot = [0] * nq
    for i in range(nq - 1, -1, -1):
        c = rem[i + dl - 1]
        if c == 0:
            continue
        qc, r = divmod(c, lead)
        if r:
            raise NonDivisible(f"({num}) / ({den})")
        quot[i] = qc
        for j in range(dl):
            rem[i + j] -= qc * d[j]
    if any(rem):
        raise NonDivisible(f"({num}) / ({den})")
    return QPoly(quot, num.min_degree - den.min_degree)


def _exact_quotient(a, b):
    if isinstance(a, Integral) and isinstance(b, Integral):
        qd, r = divmod(int(a), int(b))
        if r:
            raise NonDivisible(f"{a} / {b}")
        return qd
    return a / b


def det(matrix):
    """Determinant of a square matrix of exact scalars.

    Fraction-free (Bareiss) elimination: every division is exact, so the
    same routine works for ints, Fractions and QPolys.  Floating entries
    are accepted too, though numpy is the better tool for those.
    """
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    if any(len(row) != n for row in a):
        raise ValueError("det needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = _exact_quotient(row_i[j] * pivot - aik * row_k[j], prev)
        prev = pivot
    result = a[n - 1][n - 1]
    return -result if sign < 0 else result


@lru_cache(maxsize=None)
def q_int(n):
    """The q-number [n] = 1 + q + ... + q^(n-1) (zero for n <= 0)."""
    if n <= 0:
        return QPoly()
    return QPoly([1] * n)


@lru_cache(maxsize=None)
def _q_fact(n):
    if n == 0:
        return QPoly.const(1)
    return _q_fact(n - 1) * q_int(n)


def q_int_factorial(n):
    """Return ``([n], [n]!)``."""
    if n < 0:
        raise ValueError("q_int_factorial needs n >= 0")
    return q_int(n), _q_fact(n)


@lru_cache(maxsize=None)
def q_binomial(n, r):
    """Gaussian binomial [n choose r], zero outside 0 <= r <= n."""
    if n < 0 or r < 0 or r > n:
        return QPoly()
    return exact_div(_q_fact(n), _q_fact(r) * _q_fact(n - r))


def q_binomial_det(a, b):
    """det of the matrix with entry (i, j) = [a_j choose b_i]."""
    a, b = tuple(a), tuple(b)
    if len(a) != len(b):
        raise ValueError("a and b must have equal length")
    return det([[q_binomial(aj, bi) for aj in a] for bi in b])
