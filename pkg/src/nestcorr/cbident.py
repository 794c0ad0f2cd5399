"""Cauchy-Binet type sums of Schur products and their determinant forms.

P_{L/n}(x, y) is the sum of S_lam(x) S_lam(y) over L >= lam_1 >= ... >= lam_N >= n.
The restricted sum drops the points of x listed in an index set and pads
lam with zeros on the y side.  Both have a determinant form; the
q-specializations give plane-partition and watermelon generating
functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from numbers import Integral

import numpy as np

from . import checks
from .errors import IdentityMismatch, RepeatedPoint, ValidationError
from .partitions import hat_partition, iter_partitions_in_box, macmahon_count, zq_product
from .qcore import QPoly, det, q_binomial, q_binomial_det, q_int
from .schur import is_inexact, q_points, schur_eval, vandermonde

__all__ = [
    "CBSpec",
    "geometric_entry",
    "cb_pair_sum",
    "cb_pair_det",
    "restricted_pair_det",
    "q_restricted_sum",
    "q_restricted_det",
    "theorem2_forms",
    "theorem2_eval",
    "complete_homogeneous",
    "schur_jacobi_trudi",
    "gessel_viennot_count",
    "watermelon_det_forms",
    "watermelon_det",
    "corollary_schur_det",
    "normtrace_limit",
]

SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class CBSpec:
    """Parameters of one Cauchy-Binet instance.

    ``index_set`` holds 1-based positions of x that are dropped; its
    length is the deviation k.  With k > 0 the lower bound n must be 0.
    """

    N: int
    L: int
    x: tuple
    y: tuple
    n: int = 0
    index_set: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        object.__setattr__(self, "index_set", tuple(self.index_set))
        if not 0 <= self.n <= self.L:
            raise ValidationError("need 0 <= n <= L")
        if len(self.x) != self.N or len(self.y) != self.N:
            raise ValidationError("x and y must both have N entries")
        idx = self.index_set
        if any(a >= b for a, b in zip(idx, idx[1:])) or any(not 1 <= i <= self.N for i in idx):
            raise ValidationError(f"index set {idx} must increase inside [1, {self.N}]")
        if idx and self.n:
            raise ValidationError("the restricted sum has no lower bound n")

    @property
    def k(self):
        return len(self.index_set)

    def xbar(self):
        drop = set(self.index_set)
        return tuple(v for i, v in enumerate(self.x, start=1) if i not in drop)


def geometric_entry(u, p):
    """(1 - u^p) / (1 - u), with the value p at u = 1."""
    if isinstance(u, (float, complex, np.floating, np.complexfloating)):
        if abs(u - 1) < SINGULAR_TOL:
            return complex(p)
        return (1 - u**p) / (1 - u)
    if u == 1:
        return p
    return (1 - u**p) / (1 - u)


def _prod(values):
    acc = 1
    for v in values:
        acc = acc * v
    return acc


def _det(rows):
    if rows and is_inexact([v for r in rows for v in r]):
        return complex(np.linalg.det(np.array(rows, dtype=complex)))
    return det(rows)


def _divide(num, den):
    if den == 0:
        raise RepeatedPoint("vanishing Vandermonde determinant")
    if isinstance(num, Integral) and isinstance(den, Integral):
        from fractions import Fraction

        return Fraction(int(num), int(den))
    return num / den


def cb_pair_sum(spec):
    """Direct summation of Schur products."""
    if spec.k == 0:
        total = 0
        for lam in iter_partitions_in_box(spec.N, spec.L, spec.n):
            total = total + schur_eval(lam, spec.x) * schur_eval(lam, spec.y)
        return total
    xbar = spec.xbar()
    total = 0
    for lam in iter_partitions_in_box(len(xbar), spec.L, 0):
        total = total + schur_eval(lam, xbar) * schur_eval(hat_partition(lam, spec.k), spec.y)
    return total


def cb_pair_det(spec):
    """Determinant side of the Cauchy-Binet identity.

    Unrestricted: prod (x_l y_l)^n det T / (V(x) V(y)) with
    T_ij = (1 - (x_i y_j)^(N+L-n)) / (1 - x_i y_j).

    Restricted: rows of T at positions in the index set are replaced by
    y_j^(k-l) (l-th dropped index), the other rows use exponent N+L, and
    the result carries the sign (-1)^(|i| + kN - k(k-1)/2) and the factor
    1 / (prod of the kept x)^k.
    """
    N, L, n, k = spec.N, spec.L, spec.n, spec.k
    x, y = spec.x, spec.y
    if k == 0:
        p = N + L - n
        T = [[geometric_entry(xi * yj, p) for yj in y] for xi in x]
        pref = _prod(xl * yl for xl, yl in zip(x, y)) ** n if n else 1
        return _divide(pref * _det(T), vandermonde(x) * vandermonde(y))
    position = {i: l for l, i in enumerate(spec.index_set, start=1)}
    rows = []
    for i in range(1, N + 1):
        if i in position:
            rows.append([yj ** (k - position[i]) for yj in y])
        else:
            rows.append([geometric_entry(x[i - 1] * yj, N + L) for yj in y])
    xbar = spec.xbar()
    exponent = sum(spec.index_set) + k * N - k * (k - 1) // 2
    sign = -1 if exponent % 2 else 1
    den = _prod(xbar) ** k * vandermonde(xbar) * vandermonde(y)
    return _divide(sign * _det(rows), den)


def restricted_pair_det(xbar, y, L):
    """P_L(xbar, y) = sum S_lam(xbar) S_{lam padded}(y) for len(xbar) <= len(y).

    The dropped positions are taken to be the last ones, which makes the
    sign trivial.  The x entries at dropped positions never enter.
    """
    xbar, y = tuple(xbar), tuple(y)
    N = len(y)
    k = N - len(xbar)
    if k < 0:
        raise ValidationError("xbar cannot be longer than y")
    filler = (1,) * k
    spec = CBSpec(N, L, xbar + filler, y, 0, tuple(range(N - k + 1, N + 1)))
    return cb_pair_det(spec)


def _q_x_points(N):
    # x = q_N / q
    return q_points(0, N)


def q_restricted_sum(N, L, index_set):
    """Restricted sum at x = (1, q, ..., q^(N-1)) minus the indexed points, y = (q, ..., q^N)."""
    spec = CBSpec(N, L, _q_x_points(N), q_points(1, N + 1), 0, tuple(index_set))
    return QPoly.coerce(cb_pair_sum(spec))


def q_restricted_det(N, L, index_set):
    """The q-parameterized restricted determinant with its sign and q-power."""
    index_set = tuple(index_set)
    k = len(index_set)
    position = {i: l for l, i in enumerate(index_set, start=1)}
    rows = []
    for i in range(1, N + 1):
        if i in position:
            rows.append([QPoly.monomial(j * (k - position[i])) for j in range(1, N + 1)])
        else:
            rows.append(
                [q_int((L + N) * (j + i - 1)) / q_int(j + i - 1) for j in range(1, N + 1)]
            )
    drop = set(index_set)
    xbar = tuple(QPoly.monomial(i - 1) for i in range(1, N + 1) if i not in drop)
    y = q_points(1, N + 1)
    power = k * (k - sum(index_set)) + k * N * (N - 1) // 2
    exponent = sum(index_set) + k * N - k * (k - 1) // 2
    value = det(rows).shift(-power) / (vandermonde(xbar) * vandermonde(y))
    return -value if exponent % 2 else value


def theorem2_forms(N, k, L):
    """The three closed forms of P_L((1, ..., q^(N-k-1)), (q, ..., q^N))."""
    if not 0 <= k <= N:
        raise ValidationError("need 0 <= k <= N")
    # determinant with the last k points dropped
    rows = []
    for i in range(1, N + 1):
        if i > N - k:
            rows.append([QPoly.monomial(j * (N - i)) for j in range(1, N + 1)])
        else:
            rows.append(
                [q_int((L + N) * (j + i - 1)) / q_int(j + i - 1) for j in range(1, N + 1)]
            )
    xbar = q_points(0, N - k)
    y = q_points(1, N + 1)
    shift = k * (N - k - 1) * (N - k) // 2
    det_form = det(rows).shift(-shift) / (vandermonde(y) * vandermonde(xbar))

    a = tuple(range(2 * N - k, 2 * N - k + L))
    b = tuple(range(N - k, N - k + L))
    binom_form = QPoly.coerce(q_binomial_det(a, b)).shift(-N * (L - 1) * L // 2)

    prod_num = QPoly.const(1)
    prod_den = QPoly.const(1)
    for l in range(1, L + 1):
        for j in range(1, N - k + 1):
            prod_num = prod_num * q_int(j + l + N - 1)
            prod_den = prod_den * q_int(j + l - 1)
    product_form = prod_num / prod_den
    return {"determinant": det_form, "q_binomial": binom_form, "product": product_form}


def _shifted_square_forms(N, L, n):
    size = L - n
    d = q_binomial_det(
        tuple(2 * N + i - 1 for i in range(1, size + 1)),
        tuple(N + j - 1 for j in range(1, size + 1)),
    )
    left = QPoly.coerce(d).shift(n * N * N + N * size * (1 - size) // 2)
    right = zq_product(N, N, size).shift(n * N * N)
    return left, right


def theorem2_eval(N, k, L, check_sum=False):
    """Check the three closed forms against each other and return Z_q(N-k, N, L).

    At k = 0 the shifted sums with every lower bound n <= L are checked
    as well, and the q = 1 value against the product count.  With
    ``check_sum`` the restricted Schur sum itself is also compared.
    """
    forms = theorem2_forms(N, k, L)
    target = zq_product(N - k, N, L)
    for name, value in forms.items():
        if value != target:
            raise IdentityMismatch(f"theorem II {name} form", value, target)
    if k == 0:
        for n in range(L + 1):
            left, right = _shifted_square_forms(N, L, n)
            if left != right:
                raise IdentityMismatch(f"shifted square box n={n}", left, right)
        count = target(1)
        if count != macmahon_count(N, N, L):
            raise IdentityMismatch("box count", count, macmahon_count(N, N, L))
    if check_sum:
        index_set = tuple(range(N - k + 1, N + 1))
        s = q_restricted_sum(N, L, index_set)
        if s != target:
            raise IdentityMismatch("theorem II sum", s, target)
    return target


def complete_homogeneous(r, x):
    """h_r(x), zero for r < 0."""
    if r < 0:
        return 0
    h = [1] + [0] * r
    for v in x:
        for d in range(1, r + 1):
            h[d] = h[d] + v * h[d - 1]
    return h[r]


def schur_jacobi_trudi(lam, x):
    """S_lam(x) = det(h_{lam_i - i + j}(x))."""
    lam = tuple(p for p in lam if p > 0)
    n = len(lam)
    if n > len(x):
        return 0
    return det([[complete_homogeneous(lam[i] - i + j, x) for j in range(n)] for i in range(n)])


def gessel_viennot_count(N, L, Mcal):
    """det(binom(L+M+N-i, M+N-j)) over 1 <= i, j <= N."""
    from math import comb

    return det(
        [
            [comb(L + Mcal + N - i, Mcal + N - j) if Mcal + N - j >= 0 else 0 for j in range(1, N + 1)]
            for i in range(1, N + 1)
        ]
    )


def _q_binom_or_zero(n, r):
    if n < 0:
        return QPoly()
    return q_binomial(n, r)


def watermelon_det_forms(N, L, Mcal):
    """Closed forms of the watermelon generating function with deviation N - L.

    ``q_binomial_det``: the q-binomial determinant with the q^(j-1)(M+j-i) weights.
    ``jacobi_trudi``: q^(-M N (N-1)/2) det(h_{M-i+j}) with h from q-binomials.
    ``jacobi_trudi_pascal``: the Pascal-transformed determinant for S_M at q_{2N-k}/q,
    with the same prefactor.
    ``product``: the box product Z_q(N, L, M).
    """
    if not 0 <= L <= N or Mcal < 0:
        raise ValidationError("need 0 <= L <= N and M >= 0")
    pref = -Mcal * N * (N - 1) // 2
    qb = det(
        [
            [
                QPoly.monomial((j - 1) * (Mcal + j - i)) * _q_binom_or_zero(L + Mcal + N - i, Mcal + N - j)
                for j in range(1, N + 1)
            ]
            for i in range(1, N + 1)
        ]
    )
    jt = det(
        [
            [
                _q_binom_or_zero(N + L + Mcal - i + j - 1, Mcal - i + j) if Mcal - i + j >= 0 else QPoly()
                for j in range(1, N + 1)
            ]
            for i in range(1, N + 1)
        ]
    )
    pascal = det(
        [
            [
                QPoly.monomial((j - 1) * (Mcal + j - i)) * _q_binom_or_zero(Mcal + N + L - i, N + L - j)
                for j in range(1, N + 1)
            ]
            for i in range(1, N + 1)
        ]
    )
    return {
        "q_binomial_det": QPoly.coerce(qb).shift(pref),
        "jacobi_trudi": QPoly.coerce(jt).shift(pref),
        "jacobi_trudi_pascal": QPoly.coerce(pascal).shift(pref),
        "product": zq_product(N, L, Mcal),
    }


def watermelon_det(N, L, Mcal):
    """W_q(N, L, M) from the q-binomial determinant, checked against the box product.

    The Jacobi-Trudi determinant is checked too.  The q = 1 value is
    checked against the binomial determinant and MacMahon's count.
    """
    forms = watermelon_det_forms(N, L, Mcal)
    value = forms["q_binomial_det"]
    for name in ("product", "jacobi_trudi"):
        if forms[name] != value:
            raise IdentityMismatch(f"watermelon {name}", forms[name], value)
    count = value(1)
    gv = gessel_viennot_count(N, L, Mcal)
    if not count == gv == macmahon_count(N, L, Mcal):
        raise IdentityMismatch("watermelon count", count, gv)
    return value


def corollary_schur_det(N, L, Mcal, delta, vandermonde_points="literal"):
    """Determinant form of S_M(q_N, q^(delta+N+1), ..., q^(delta+N+L)), M = (Mcal^N, 0^L).

    ``vandermonde_points="literal"`` divides by V(q_N/q) V(q_{N;k}) as
    printed; ``"derived"`` divides by V(q_N) V(q_{N;k}/q), the pairing
    that follows from the restricted Cauchy-Binet determinant.  The two
    differ by the monomial q^(k(N+L-1)/2).
    """
    k = N - L
    if delta not in (0, k):
        raise ValidationError("delta must be 0 or N-L")
    rows = []
    for i in range(1, N + 1):
        if i <= N - k:
            rows.append(
                [
                    q_int((Mcal + N) * (delta + j + i - 1)) / q_int(delta + j + i - 1)
                    for j in range(1, N + 1)
                ]
            )
        else:
            rows.append([QPoly.monomial(j * (N - i)) for j in range(1, N + 1)])
    power = Mcal * N * (N + 1) // 2 - L * (N - L) * (2 * delta + L - 1) // 2
    x_nk = q_points(1 + delta, 1 + delta + L)
    if vandermonde_points == "literal":
        den = vandermonde(q_points(0, N)) * vandermonde(x_nk)
    elif vandermonde_points == "derived":
        den = vandermonde(q_points(1, N + 1)) * vandermonde(q_points(delta, delta + L))
    else:
        raise ValidationError(f"unknown Vandermonde pairing {vandermonde_points!r}")
    return det(rows).shift(power) / den


def _inverse_one_minus(a, max_degree):
    # 1 / (1 - q^a) truncated
    return QPoly([1 if d % a == 0 else 0 for d in range(max_degree + 1)])


def normtrace_limit(N, L, k, max_degree, literal_prefactor=False):
    """prod_{i<=L, j<=N} 1 / (1 - q^(k+i+j-1)) expanded up to ``max_degree``.

    This is the large-M limit of the watermelon generating function with
    deviation delta = k.  With ``literal_prefactor`` the product is
    multiplied by q^((N-L)(N+L-1)/2) as printed next to the theorem; that
    monomial is not part of the limit (the empty watermelon has volume 0).
    """
    if k != N - L:
        raise ValidationError("k must equal N - L")
    acc = QPoly.const(1)
    for i in range(1, L + 1):
        for j in range(1, N + 1):
            acc = (acc * _inverse_one_minus(k + i + j - 1, max_degree)).truncate(max_degree)
    if literal_prefactor:
        acc = acc.shift((N - L) * (N + L - 1) // 2).truncate(max_degree)
    return acc
