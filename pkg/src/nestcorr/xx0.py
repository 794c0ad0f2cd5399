"""The XX0 chain on M+1 sites: propagators, transition amplitudes, Bethe
ground states, form-factors, persistence of a domain wall and the
dynamical auto-correlation function.

Time is Euclidean: everything is an average of exp(-t H).  In the N-spin
sector H = N - A/2 where A is the hard-core hopping matrix built from
Delta.  Exact (Fraction/QPoly) evaluation is used for form-factors; the
dynamics runs in complex double precision.

Mode phases carry the twist of the N-particle sector,
exp(i (M+1) phi) = (-1)^(N-1), so that determinants of one-particle
propagators count walkers that wind around the ring correctly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import checks
from .cbident import cb_pair_det, cb_pair_sum, CBSpec, restricted_pair_det
from .errors import Collision, ModeEnumerationTooLarge, SizeMismatch, ValidationError
from .partitions import iter_partitions_in_box, macmahon_count, staircase, zq_product
from .paths import hopping_weights, random_turns_matrix
from .qcore import QPoly
from .schur import q_points, schur_eval, vandermonde

__all__ = [
    "ChainConfig",
    "Amplitude",
    "BetheData",
    "DEFAULT_BUDGET",
    "mode_phases",
    "hopping_propagator",
    "propagator_matrix",
    "amplitude",
    "amplitude_spectral",
    "amplitude_series",
    "two_time_amplitude",
    "two_time_gluing",
    "bethe_ground",
    "projector_formfactor",
    "projector_formfactor_q",
    "domainwall_formfactor",
    "domainwall_formfactor_q",
    "persistence",
    "persistence_spectrum",
    "autocorrelation",
    "sector_hamiltonian",
    "dense_persistence",
    "dense_autocorrelation",
]

DEFAULT_BUDGET = 2_000_000
SINGULAR_TOL = 1e-12
EPS = np.finfo(float).eps


@dataclass(frozen=True)
class ChainConfig:
    M: int
    N: int

    def __post_init__(self):
        if self.M < 1:
            raise ValidationError("the chain needs M >= 1")
        if not 0 <= self.N <= self.M + 1:
            raise ValidationError(f"need 0 <= N <= M+1, got N={self.N}, M={self.M}")

    @property
    def Mcal(self):
        return self.M - self.N + 1


@dataclass(frozen=True)
class Amplitude:
    value: complex
    abs_err: float
    notes: tuple = field(default=())

    def __complex__(self):
        return complex(self.value)


@dataclass(frozen=True)
class BetheData:
    theta: tuple
    energy: float
    norm_sq: float


def _notes(M):
    # at M <= 2 the neighbour and wrap terms of Delta overlap
    return ("degenerate-geometry",) if M <= 2 else ()


def mode_phases(M, N=1):
    """phi_s = 2 pi/(M+1) (s - M/2 + eps/2), s = 0..M, eps = (M+N-1) mod 2.

    These solve exp(i (M+1) phi) = (-1)^(N-1).  For M + N odd eps = 0.
    """
    eps = (M + N - 1) % 2
    s = np.arange(M + 1)
    return 2 * np.pi / (M + 1) * (s - M / 2 + eps / 2)


def propagator_matrix(M, t, N=1):
    """The (M+1) x (M+1) matrix G(j, l | t) from the mode sum."""
    phi = mode_phases(M, N)
    sites = np.arange(M + 1)
    phase = np.exp(1j * np.outer(sites, phi))
    weight = np.exp(t * np.cos(phi))
    return (phase * weight) @ phase.conj().T / (M + 1)


def hopping_propagator(j, l, t, M, N=1):
    """G(j, l | t) = 1/(M+1) sum_s exp(i phi_s (j - l) + t cos phi_s).

    With N = 1 this is (exp(t Delta / 2))_{jl} for the literal Delta,
    including M = 1 where Delta_01 = 2 and G(0, 0 | t) = cosh t.  A
    complex t gives the unitary propagator.
    """
    if not (0 <= j <= M and 0 <= l <= M):
        raise ValidationError("sites must lie in [0, M]")
    phi = mode_phases(M, N)
    terms = np.exp(1j * phi * (j - l) + t * np.cos(phi))
    value = complex(terms.sum() / (M + 1))
    return Amplitude(value, float(np.abs(terms).sum() / (M + 1) * (M + 1) * EPS), _notes(M))


def _sites(state, M, name):
    state = tuple(int(s) for s in state)
    if len(set(state)) != len(state):
        raise Collision(f"{name} has a repeated site: {state}")
    if any(not 0 <= s <= M for s in state):
        raise ValidationError(f"{name} has a site outside [0, {M}]")
    return tuple(sorted(state, reverse=True))


def _pair(j, l, M):
    j = _sites(j, M, "j")
    l = _sites(l, M, "l")
    if len(j) != len(l):
        raise SizeMismatch(f"{len(j)} vs {len(l)} particles")
    return j, l


def _det_with_err(mat):
    mat = np.asarray(mat, dtype=complex)
    n = mat.shape[0]
    if n == 0:
        return 1.0 + 0j, 0.0
    value = complex(np.linalg.det(mat))
    bound = float(np.prod(np.abs(mat).sum(axis=1)))
    return value, (n + 1) * EPS * bound


def amplitude(j, l, t, M, check=None):
    """<j| exp(-t H) |l> = exp(-t N) det G(j_r, l_s | t).

    In debug mode it is recomputed from the mode-subset spectral sum and
    from the random-turns series; both must agree to 1e-9.
    """
    j, l = _pair(j, l, M)
    N = len(j)
    G = propagator_matrix(M, t, N)
    d, err = _det_with_err(G[np.ix_(j, l)])
    scale = np.exp(-t * N)
    result = Amplitude(complex(scale * d), float(abs(scale) * err), _notes(M))
    if checks.enabled(check):
        checks.require_close("amplitude vs spectral sum", result.value, amplitude_spectral(j, l, t, M).value, 1e-9)
        if np.isreal(t) and abs(t) <= 2:
            checks.require_close("amplitude vs series", result.value, amplitude_series(j, l, t, M).value, 1e-9)
    return result


def _subset_phases(M, N, budget):
    count = math.comb(M + 1, N)
    if count > budget:
        raise ModeEnumerationTooLarge(f"C({M + 1}, {N}) = {count} mode subsets exceed the budget {budget}")
    phi = mode_phases(M, N)
    idx = np.array(list(itertools.combinations(range(M, -1, -1), N)), dtype=int).reshape(count, N)
    return phi[idx]


def _batched_vandermonde(z):
    # prod_{i<j} (z_i - z_j) along the last axis
    out = np.ones(z.shape[:-1], dtype=complex)
    n = z.shape[-1]
    for a in range(n):
        for b in range(a + 1, n):
            out = out * (z[..., a] - z[..., b])
    return out


def _batched_schur(lam, z):
    # bialternant over a batch of points; z has shape (S, N)
    N = z.shape[-1]
    mu = np.array([p + N - 1 - i for i, p in enumerate(lam)])
    alt = np.linalg.det(z[:, :, None] ** mu[None, None, :]) if N else np.ones(len(z))
    return alt / _batched_vandermonde(z)


def amplitude_spectral(j, l, t, M, budget=DEFAULT_BUDGET):
    """1/(M+1)^N sum over mode subsets of exp(-t E) |V|^2 S_lamL(e^{i phi}) S_lamR(e^{-i phi})."""
    j, l = _pair(j, l, M)
    N = len(j)
    if N == 0:
        return Amplitude(1.0 + 0j, 0.0, _notes(M))
    phi = _subset_phases(M, N, budget)
    z = np.exp(1j * phi)
    energy = N - np.cos(phi).sum(axis=1)
    delta = staircase(N)
    lam_l = [a - b for a, b in zip(j, delta)]
    lam_r = [a - b for a, b in zip(l, delta)]
    terms = np.exp(-t * energy) * np.abs(_batched_vandermonde(z)) ** 2
    terms = terms * _batched_schur(lam_l, z) * _batched_schur(lam_r, z.conj())
    value = complex(terms.sum() / (M + 1) ** N)
    return Amplitude(value, float(np.abs(terms).sum() / (M + 1) ** N * len(terms) * EPS * 10), _notes(M))


def amplitude_series(j, l, t, M, tol=1e-17):
    """exp(-t N) sum_K (t/2)^K / K! <j|(-H)^K|l>, with the counts from the sector matrix.

    Truncated once (N t)^K / K! drops below ``tol``; |<j|(-H)^K|l>| <= (2N)^K.
    """
    j, l = _pair(j, l, M)
    N = len(j)
    total = 0.0
    K = 0
    bound = 1.0
    while True:
        coeff = (t / 2) ** K / math.factorial(K)
        total += coeff * random_turns_matrix(l, j, K, M)
        if K > abs(t) * N and bound < tol:
            break
        K += 1
        bound = (abs(t) * N) ** K / math.factorial(K)
    return Amplitude(complex(np.exp(-t * N) * total), float(tol + EPS * abs(total)), _notes(M))


def two_time_amplitude(j, l, t1, t2, m, M, check=None):
    """<j| exp(-t1 H) Pi_m exp(-t2 H) |l> as det of sum_{k>=m} G(j_r, k|t1) G(k, l_s|t2).

    Pi_m forbids particles on sites 0..m-1.  Debug mode checks the
    Cauchy-Binet expansion over intermediate states.
    """
    j, l = _pair(j, l, M)
    if not 0 <= m <= M:
        raise ValidationError("need 0 <= m <= M")
    N = len(j)
    G1 = propagator_matrix(M, t1, N)
    G2 = propagator_matrix(M, t2, N)
    kernel = G1[:, m:] @ G2[m:, :]
    d, err = _det_with_err(kernel[np.ix_(j, l)])
    scale = np.exp(-(t1 + t2) * N)
    result = Amplitude(complex(scale * d), float(abs(scale) * err), _notes(M))
    if checks.enabled(check):
        checks.require_close("two-time amplitude vs gluing", result.value, two_time_gluing(j, l, t1, t2, m, M).value, 1e-9)
    return result


def two_time_gluing(j, l, t1, t2, m, M):
    """sum over rho + staircase with parts >= m of G(j; rho|t1) G(rho; l|t2)."""
    j, l = _pair(j, l, M)
    N = len(j)
    G1 = propagator_matrix(M, t1, N)
    G2 = propagator_matrix(M, t2, N)
    total = 0j
    if M - m + 1 >= N:
        for lam in iter_partitions_in_box(N, M - m - N + 1, 0):
            mid = [p + s + m for p, s in zip(lam, staircase(N))]
            total += np.linalg.det(G1[np.ix_(j, mid)]) * np.linalg.det(G2[np.ix_(mid, l)]) if N else 1
    return Amplitude(complex(np.exp(-(t1 + t2) * N) * total), 0.0, _notes(M))


# -- Bethe ground state ----------------------------------------------------------


def bethe_ground(cfg, n=0):
    """Ground-state phases of N - n particles, theta_j = 2 pi/(M+1) ((N-n+1)/2 - j).

    The energy is the cosine sum, checked against
    N' - sin(pi N'/(M+1)) / sin(pi/(M+1)) with N' = N - n.
    """
    if not 0 <= n <= cfg.N:
        raise ValidationError("need 0 <= n <= N")
    M = cfg.M
    P = cfg.N - n
    theta = tuple(2 * math.pi / (M + 1) * ((P + 1) / 2 - jj) for jj in range(1, P + 1))
    for th in theta:
        residual = abs(complex(math.cos((M + 1) * th), math.sin((M + 1) * th)) - (-1) ** (P - 1))
        checks.require_close("Bethe equation residual", residual, 0.0, 1e-12)
    energy = P - sum(math.cos(th) for th in theta)
    closed = P - math.sin(math.pi * P / (M + 1)) / math.sin(math.pi / (M + 1))
    checks.require_close("ground energy closed form", energy, closed, 1e-12)
    z = np.exp(1j * np.array(theta))
    norm_sq = (M + 1) ** P / abs(complex(vandermonde(tuple(z)))) ** 2 if P else 1.0
    return BetheData(theta, energy, float(norm_sq))


# -- form-factors -----------------------------------------------------------------


def _inv_sq(v):
    return tuple(1 / (x * x) for x in v)


def _sq(u):
    return tuple(x * x for x in u)


def projector_formfactor(v, u, m, Mcal, check=None):
    """<Psi(v)| Pi_m |Psi(u)> = P_{Mcal/m}(v^-2, u^2), by the determinant.

    Debug mode compares with the direct Schur sum.
    """
    v, u = tuple(v), tuple(u)
    if len(v) != len(u):
        raise SizeMismatch("v and u need the same length")
    spec = CBSpec(len(v), Mcal, _inv_sq(v), _sq(u), m)
    value = cb_pair_det(spec)
    if checks.enabled(check):
        other = cb_pair_sum(spec)
        if isinstance(value, complex) or isinstance(other, complex):
            checks.require_close("projector form-factor", value, other, 1e-9)
        else:
            checks.require_equal("projector form-factor", value, other)
    return value


def projector_formfactor_q(N, Mcal, m):
    """The form-factor at v^-2 = q_N, u^2 = q_N / q, checked to equal q^(m N^2) Z_q(N, N, Mcal - m)."""
    if not 0 <= m <= Mcal:
        raise ValidationError("need 0 <= m <= Mcal")
    spec = CBSpec(N, Mcal, q_points(1, N + 1), q_points(0, N), m)
    value = QPoly.coerce(cb_pair_det(spec))
    checks.require_equal("projector form-factor vs box", value, zq_product(N, N, Mcal - m).shift(m * N * N))
    checks.require_equal("projector count", value(1), macmahon_count(N, N, Mcal - m))
    return value


def _prod(values):
    acc = 1
    for x in values:
        acc = acc * x
    return acc


def domainwall_formfactor(v, u, n, Mcal, side="annihilate", check=None):
    """Form-factors of the domain wall operators.

    ``side="annihilate"``: <Psi(v_{N-n})| F_n^+ |Psi(u_N)>
    = prod v^(-2n) sum_{lam in Mcal^(N-n)} S_lam(v^-2) S_(lam,0^n)(u^2).
    ``side="create"``: <Psi(v_N)| F_n |Psi(u_{N-n})>
    = prod u^(2n) sum S_(lam,0^n)(v^-2) S_lam(u^2).
    The sum is evaluated by the restricted determinant.
    """
    v, u = tuple(v), tuple(u)
    if side == "annihilate":
        short, long_, pref = _inv_sq(v), _sq(u), _prod(_inv_sq(v)) ** n
    elif side == "create":
        short, long_, pref = _sq(u), _inv_sq(v), _prod(_sq(u)) ** n
    else:
        raise ValidationError(f"unknown side {side!r}")
    if len(long_) - len(short) != n:
        raise SizeMismatch(f"expected tuples of sizes N and N-{n}")
    value = pref * restricted_pair_det(short, long_, Mcal)
    if checks.enabled(check):
        direct = 0
        for lam in iter_partitions_in_box(len(short), Mcal, 0):
            direct = direct + schur_eval(lam, short) * schur_eval(lam + (0,) * n, long_)
        direct = pref * direct
        if isinstance(value, complex):
            checks.require_close("domain wall form-factor", value, direct, 1e-9)
        else:
            checks.require_equal("domain wall form-factor", value, direct)
    return value


def domainwall_formfactor_q(N, n, Mcal):
    """<Psi(v_N)| F_n |Psi(u_{N-n})> at v^-2 = q_N, u^2 = q_{N-n} / q.

    Equals a monomial times Z_q(N-n, N, Mcal); at q = 1 it is A(N-n, N, Mcal).
    """
    short = q_points(0, N - n)
    long_ = q_points(1, N + 1)
    value = QPoly.coerce(restricted_pair_det(short, long_, Mcal) * _prod(short) ** n)
    box = zq_product(N - n, N, Mcal)
    shift = value.min_degree - box.min_degree
    checks.require_equal("domain wall form-factor vs box", value, box.shift(shift))
    checks.require_equal("domain wall count", value(1), macmahon_count(N - n, N, Mcal))
    return value


# -- persistence and auto-correlation ---------------------------------------------


def _geometric(u, p):
    near = np.abs(u - 1) < SINGULAR_TOL
    safe = np.where(near, 0.5, u)
    return np.where(near, p, (1 - safe**p) / (1 - safe))


def _restricted_P(xbar, y, L):
    """sum_{lam in L^(len xbar)} S_lam(xbar) S_(lam, 0^k)(y) for a batch of y of shape (S, N)."""
    S, N = y.shape
    P = len(xbar)
    k = N - P
    xbar = np.asarray(xbar, dtype=complex)
    rows = np.empty((S, N, N), dtype=complex)
    if P:
        rows[:, :P, :] = _geometric(xbar[None, :, None] * y[:, None, :], N + L)
    for pos in range(k):
        rows[:, P + pos, :] = y ** (k - 1 - pos)
    den = np.prod(xbar) ** k * complex(vandermonde(tuple(xbar)) if P else 1) * _batched_vandermonde(y)
    return np.linalg.det(rows) / den


@dataclass(frozen=True)
class PersistenceSpectrum:
    """F(t) = prefactor * sum_phi weight_phi exp(-t E_phi)."""

    energies: np.ndarray
    weights: np.ndarray
    prefactor: float
    max_imag: float

    def value(self, t):
        t = np.asarray(t, dtype=float)
        out = self.prefactor * (np.exp(-np.multiply.outer(t, self.energies)) @ self.weights)
        return out.real if np.ndim(out) else float(np.real(out))


@lru_cache(maxsize=64)
def _persistence_spectrum(M, N, n, budget):
    cfg = ChainConfig(M, N)
    data = bethe_ground(cfg, n)
    phi = _subset_phases(M, N, budget)
    z = np.exp(1j * phi)
    theta = np.exp(1j * np.array(data.theta))
    # <Psi|F^+|phi> and <phi|F|Psi> as separate restricted sums
    left = _restricted_P(theta.conj(), z, cfg.Mcal)
    right = _restricted_P(theta, z.conj(), cfg.Mcal)
    weights = np.abs(_batched_vandermonde(z)) ** 2 * left * right
    energies = N - np.cos(phi).sum(axis=1)
    pref = 1.0 / (data.norm_sq * (M + 1) ** N)
    return PersistenceSpectrum(energies, weights.real.copy(), pref, float(np.abs(weights.imag).max(initial=0.0)))


def persistence_spectrum(cfg, n, budget=DEFAULT_BUDGET):
    """Mode energies and weights of the persistence of a domain wall of length n.

    The prefactor is |V(e^{i theta})|^2 / (M+1)^(2N-n): one power of
    (M+1)^N from the completeness of the N-particle modes and (M+1)^(N-n)
    from the norm of the N-n particle ground state.
    """
    if not 0 <= n <= cfg.N:
        raise ValidationError("need 0 <= n <= N")
    return _persistence_spectrum(cfg.M, cfg.N, n, budget)


def persistence(cfg, n, t, budget=DEFAULT_BUDGET):
    """<Psi| F_n^+ exp(-t H) F_n |Psi> / <Psi|Psi> over the N-n particle ground state.

    At n = 0 this is exp(-t E_ground), which is 1 only at t = 0 or N = 1.
    """
    spec = persistence_spectrum(cfg, n, budget)
    if spec.max_imag > 1e-10 * max(1.0, float(np.abs(spec.weights).max(initial=0.0))):
        raise ValidationError(f"persistence weights not real: {spec.max_imag}")
    return spec.value(t)


def _pair_P(x, y, L, m):
    """P_{L/m}(x_a, y_b) for batches x (A, N), y (B, N); result (A, B)."""
    A, N = x.shape
    B = y.shape[0]
    u = x[:, None, :, None] * y[None, :, None, :]
    T = _geometric(u, N + L - m)
    pref = (np.prod(x, axis=1)[:, None] * np.prod(y, axis=1)[None, :]) ** m
    den = _batched_vandermonde(x)[:, None] * _batched_vandermonde(y)[None, :]
    return pref * np.linalg.det(T) / den


def autocorrelation(cfg, n, m, t1, t2, budget=DEFAULT_BUDGET):
    """<Psi| F_n^+ exp(-t1 H) Pi_m exp(-t2 H) F_n |Psi> / <Psi|Psi>.

    Double sum over mode subsets; the projector enters through
    P_{Mcal/m}(e^{-i phi}, e^{i phi'}).  The prefactor is
    |V(e^{i theta})|^2 / (M+1)^(3N-n).
    """
    if not 0 <= n <= cfg.N:
        raise ValidationError("need 0 <= n <= N")
    if not 0 <= m <= cfg.M:
        raise ValidationError("need 0 <= m <= M")
    M, N = cfg.M, cfg.N
    count = math.comb(M + 1, N)
    if count * count > budget:
        raise ModeEnumerationTooLarge(f"{count}^2 mode pairs exceed the budget {budget}")
    data = bethe_ground(cfg, n)
    phi = _subset_phases(M, N, budget)
    z = np.exp(1j * phi)
    theta = np.exp(1j * np.array(data.theta))
    left = _restricted_P(theta.conj(), z, cfg.Mcal)
    right = _restricted_P(theta, z.conj(), cfg.Mcal)
    vsq = np.abs(_batched_vandermonde(z)) ** 2
    energies = N - np.cos(phi).sum(axis=1)
    if m <= M - N + 1:
        middle = _pair_P(z.conj(), z, cfg.Mcal, m)
    else:
        middle = np.zeros((count, count), dtype=complex)
    a = np.exp(-t1 * energies) * vsq * left
    b = np.exp(-t2 * energies) * vsq * right
    total = a @ middle @ b
    pref = 1.0 / data.norm_sq / (M + 1) ** (2 * N)
    value = pref * total
    if abs(value.imag) > 1e-10 * max(1.0, abs(value)):
        raise ValidationError(f"auto-correlation not real: {value}")
    return float(value.real)


# -- dense sector oracle --------------------------------------------------------


def _sector(M, N):
    return [tuple(sorted(c, reverse=True)) for c in itertools.combinations(range(M + 1), N)]


def sector_hamiltonian(M, N):
    """H = N - A/2 on the N-spin sector, A the hard-core hopping matrix."""
    basis = _sector(M, N)
    index = {b: i for i, b in enumerate(basis)}
    D = hopping_weights(M)
    A = np.zeros((len(basis), len(basis)))
    for col, conf in enumerate(basis):
        occ = set(conf)
        for src in conf:
            for dst in range(M + 1):
                if dst not in occ and D[dst][src]:
                    new = tuple(sorted((occ - {src}) | {dst}, reverse=True))
                    A[index[new], col] += D[dst][src]
    return basis, N * np.eye(len(basis)) - A / 2


def _domain_wall_state(cfg, n):
    # F_n |Psi(theta)> in the N-particle basis, and <Psi|Psi> by direct summation
    data = bethe_ground(cfg, n)
    z = tuple(np.exp(1j * np.array(data.theta)))
    basis = _sector(cfg.M, cfg.N)
    P = cfg.N - n
    vec = np.zeros(len(basis), dtype=complex)
    norm_sq = 0.0
    for nu in itertools.combinations(range(cfg.M, -1, -1), P):
        lam = tuple(a - b for a, b in zip(nu, staircase(P)))
        amp = complex(schur_eval(lam, z)) if P else 1.0
        norm_sq += abs(amp) ** 2
        if all(s >= n for s in nu):
            vec[basis.index(tuple(nu) + tuple(range(n - 1, -1, -1)))] = amp
    return basis, vec, norm_sq


def dense_persistence(cfg, n, t):
    """Test oracle: build the sector, exponentiate with scipy, contract."""
    from scipy.linalg import expm

    _, H = sector_hamiltonian(cfg.M, cfg.N)
    _, vec, norm_sq = _domain_wall_state(cfg, n)
    return complex(vec.conj() @ expm(-t * H) @ vec / norm_sq)


def dense_autocorrelation(cfg, n, m, t1, t2):
    from scipy.linalg import expm

    basis, H = sector_hamiltonian(cfg.M, cfg.N)
    _, vec, norm_sq = _domain_wall_state(cfg, n)
    proj = np.diag([1.0 if min(b, default=m) >= m else 0.0 for b in basis])
    return complex(vec.conj() @ expm(-t1 * H) @ proj @ expm(-t2 * H) @ vec / norm_sq)
