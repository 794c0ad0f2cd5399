"""Large-t power laws of the XX0 correlators and the Gaussian (Mehta) constant.

Each report pairs the predicted power law with a least-squares fit of
log|value| against log t on a log-spaced grid of the exact correlator.
For the two-time quantities t1 = t2 = t and the fit is against
log(t1 t2), so the exponent is per time variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import RegimeTooSmall, ValidationError
from .partitions import macmahon_count
from .schur import ssyt_count_formula
from .xx0 import ChainConfig, amplitude, autocorrelation, bethe_ground, persistence_spectrum, two_time_amplitude

__all__ = [
    "MehtaValue",
    "AsymptoteReport",
    "mehta_integral",
    "predicted_amplitude",
    "fit_power_law",
    "default_window",
    "leading_asymptote",
]

LOG_SPACE_ABOVE = 15


@dataclass(frozen=True)
class MehtaValue:
    value: float
    log_value: float
    estimate: float

    @property
    def difference(self):
        return self.log_value - self.estimate


def mehta_integral(N):
    """I_N = prod_{l<N} l! / sqrt(2 pi), with the large-N estimate (N^2/2) log N - 3N^2/4."""
    if N < 1:
        raise ValidationError("N must be at least 1")
    if N > LOG_SPACE_ABOVE:
        log_value = sum(math.lgamma(l + 1) for l in range(N)) - N * 0.5 * math.log(2 * math.pi)
        value = math.exp(log_value) if log_value < 700 else math.inf
    else:
        value = 1.0
        for l in range(N):
            value *= math.factorial(l) / math.sqrt(2 * math.pi)
        log_value = math.log(value)
    estimate = N * N / 2 * math.log(N) - 3 * N * N / 4
    return MehtaValue(value, log_value, estimate)


@dataclass(frozen=True)
class AsymptoteReport:
    kind: str
    predicted_value: float
    predicted_exponent: float
    fitted_exponent: float
    fitted_amplitude: float
    relative_amplitude_error: float
    fit_window: tuple
    notes: dict = field(default_factory=dict)

    def as_row(self):
        lo, hi = self.fit_window
        return {
            "kind": self.kind,
            "t_min": lo,
            "t_max": hi,
            "predicted_exponent": self.predicted_exponent,
            "fitted_exponent": self.fitted_exponent,
            "predicted_amplitude": self.predicted_value,
            "fitted_amplitude": self.fitted_amplitude,
            "amplitude_ratio": self.fitted_amplitude / self.predicted_value if self.predicted_value else math.nan,
        }


def default_window(M):
    return (10.0, min(0.5 * (M + 1), 80.0))


def fit_power_law(ts, values):
    """Slope and intercept of log|value| against log t; returns (exponent, amplitude) for value ~ a t^-p."""
    ts = np.asarray(ts, dtype=float)
    vals = np.abs(np.asarray(values))
    slope, intercept = np.polyfit(np.log(ts), np.log(vals), 1)
    return float(-slope), float(math.exp(intercept))


def _count(state):
    # S_lam(1^N) for lam = state - staircase
    N = len(state)
    s = sorted(state, reverse=True)
    return ssyt_count_formula([p - (N - 1 - i) for i, p in enumerate(s)], N)


def predicted_amplitude(kind, M, N, n=0, m=0, j=None, l=None):
    """Combinatorial prefactor of the leading power law.

    amplitude: S_lamL(1) S_lamR(1) I_N.
    persistence: A(N-n, N, M-N+1)^2 (2 pi/(M+1))^(N^2) I_N^3.
    two_time: S_lamL(1) S_lamR(1) A(N, N, M-m-N+1) I_N^2.
    autocorr: A(N, N, M-m-N+1) A(N-n, N, M-N+1)^2 (2 pi/(M+1))^(N^2) I_N^4.
    """
    I = mehta_integral(N).value
    gauss = (2 * math.pi / (M + 1)) ** (N * N)
    if kind == "amplitude":
        return _count(j) * _count(l) * I
    if kind == "persistence":
        return macmahon_count(N - n, N, M - N + 1) ** 2 * gauss * I**3
    if kind == "two_time":
        return _count(j) * _count(l) * macmahon_count(N, N, max(M - m - N + 1, 0)) * I**2
    if kind == "autocorr":
        return macmahon_count(N, N, max(M - m - N + 1, 0)) * macmahon_count(N - n, N, M - N + 1) ** 2 * gauss * I**4
    raise ValidationError(f"unknown kind {kind!r}")


def leading_asymptote(kind, M, N, n=0, m=0, j=None, l=None, window=None, points=40):
    """Fit the exact correlator on ``window`` and compare with the predicted power law.

    ``j`` and ``l`` default to the packed state (N-1, ..., 0).  The regime
    of the prediction is 1 << N << M; smaller sizes are reported in
    ``notes`` rather than rejected.
    """
    cfg = ChainConfig(M, N)
    window = tuple(window or default_window(M))
    lo, hi = window
    if not 0 < lo < hi:
        raise RegimeTooSmall(f"empty fit window {window}")
    ts = np.geomspace(lo, hi, points)
    j = tuple(j) if j is not None else tuple(range(N - 1, -1, -1))
    l = tuple(l) if l is not None else tuple(range(N - 1, -1, -1))
    notes = {}
    if not 1 < N < M / 4:
        notes["regime"] = "outside 1 << N << M"
    if hi > 0.5 * (M + 1):
        notes["recurrence"] = "window reaches the finite-ring revival scale"
    if kind == "amplitude":
        values = [amplitude(j, l, t, M).value for t in ts]
        scale = ts
    elif kind == "persistence":
        values = persistence_spectrum(cfg, n).value(ts)
        scale = ts
        data = bethe_ground(cfg, n)
        I = mehta_integral(N).value
        notes["exact_norm_amplitude"] = macmahon_count(N - n, N, M - N + 1) ** 2 * I / data.norm_sq
    elif kind == "two_time":
        values = [two_time_amplitude(j, l, t, t, m, M).value for t in ts]
        scale = ts * ts
    elif kind == "autocorr":
        values = [autocorrelation(cfg, n, m, t, t) for t in ts]
        scale = ts * ts
    else:
        raise ValidationError(f"unknown kind {kind!r}")
    exponent, amp = fit_power_law(scale, values)
    predicted = predicted_amplitude(kind, M, N, n, m, j, l)
    return AsymptoteReport(
        kind=kind,
        predicted_value=float(predicted),
        predicted_exponent=N * N / 2,
        fitted_exponent=exponent,
        fitted_amplitude=amp,
        relative_amplitude_error=abs(amp / predicted - 1) if predicted else math.inf,
        fit_window=window,
        notes=notes,
    )
