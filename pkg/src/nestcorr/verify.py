"""Named identity checks: each one recomputes a closed form along an
independent route (brute-force enumeration, a second determinant, a
dense matrix exponential) over a parameter sweep.

``run_check(name, params)`` returns a CheckResult.  Exact checks compare
integers, Fractions or QPoly values with ``==``; numerical checks use a
stated absolute tolerance.  Parameters that are set pin the sweep to
that value, the rest run over the default range (a reduced one with
``small``).
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import asymptotics, cbident, paths, xx0
from .errors import IdentityMismatch, ValidationError
from .partitions import macmahon_count, zq_brute, zq_product
from .qcore import QPoly
from .schur import q_points, schur_eval

__all__ = ["Params", "CheckResult", "CHECKS", "run_check", "run_all"]


@dataclass(frozen=True)
class Params:
    N: int = None
    L: int = None
    M: int = None
    K: int = None
    m: int = None
    n: int = None
    k: int = None
    seed: int = 0
    small: bool = False
    form: str = "derived"

    def span(self, name, full, small=None):
        """The pinned value or the default range."""
        value = getattr(self, name)
        if value is not None:
            return [value]
        return list(small if self.small and small is not None else full)


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)
    tolerance: float = None
    elapsed: float = 0.0

    @property
    def ok(self):
        return not self.failures

    @property
    def status(self):
        if not self.ok:
            return "MISMATCH"
        return "EXACT-MATCH" if self.tolerance is None else "MATCH"

    def to_dict(self):
        return {
            "name": self.name,
            "status": self.status,
            "cases": self.cases,
            "tolerance": self.tolerance,
            "failures": self.failures[:20],
            "elapsed_s": round(self.elapsed, 3),
        }

    def line(self):
        tol = "" if self.tolerance is None else f" tol={self.tolerance:g}"
        text = f"{self.name}: {self.status} ({self.cases} cases{tol}, {self.elapsed:.2f}s)"
        for f in self.failures[:5]:
            text += f"\n  {f['case']}: {f['left']} != {f['right']}"
        return text


class _Recorder:
    def __init__(self, result):
        self.result = result

    def exact(self, case, left, right):
        self.result.cases += 1
        if left != right:
            self._fail(case, left, right)

    def close(self, case, left, right, tol):
        self.result.cases += 1
        self.result.tolerance = max(self.result.tolerance or 0.0, tol)
        if not abs(left - right) <= tol:
            self._fail(case, left, right)

    def guard(self, case, fn):
        """Run ``fn``; an IdentityMismatch raised inside counts as a failed case."""
        self.result.cases += 1
        try:
            return fn()
        except IdentityMismatch as exc:
            self._fail(case, exc.left, exc.right, exc.name)
            return None

    def _fail(self, case, left, right, what=None):
        entry = {"case": case, "left": str(left), "right": str(right)}
        if what:
            entry["identity"] = what
        self.result.failures.append(entry)


def _points(rng, count):
    # distinct nonzero rationals
    seen = set()
    while len(seen) < count:
        seen.add(Fraction(rng.choice([-1, 1]) * rng.randint(1, 12), rng.randint(1, 9)))
    pts = sorted(seen)
    rng.shuffle(pts)
    return tuple(pts)


# -- combinatorics ---------------------------------------------------------------


def check_macmahon(p, rec):
    for L, N, K in itertools.product(p.span("L", range(5), range(3)), p.span("N", range(5), range(3)), p.span("M", range(5), range(3))):
        rec.exact(f"L={L} N={N} K={K}", zq_product(L, N, K), zq_brute(L, N, K))
    if p.L is p.N is p.M is None:
        rec.exact("A(2,2,2)", macmahon_count(2, 2, 2), zq_brute(2, 2, 2)(1))
        rec.exact("A(2,2,1)", macmahon_count(2, 2, 1), zq_brute(2, 2, 1)(1))


def check_cauchy_binet(p, rec):
    rng = random.Random(p.seed)
    reps = 2 if p.small else 5
    for N in p.span("N", range(1, 4), range(1, 3)):
        for L in p.span("L", range(4), range(3)):
            for n in p.span("n", range(L + 1)):
                if n > L:
                    continue
                for r in range(reps):
                    spec = cbident.CBSpec(N, L, _points(rng, N), _points(rng, N), n)
                    rec.exact(f"N={N} L={L} n={n} point={r}", cbident.cb_pair_sum(spec), cbident.cb_pair_det(spec))


def check_theorem1(p, rec):
    rng = random.Random(p.seed)
    reps = 1 if p.small else 2
    for N in p.span("N", range(1, 5), range(1, 4)):
        for k in p.span("k", range(1, 3)):
            if k > N:
                continue
            for L in p.span("L", range(3), range(2)):
                for idx in itertools.combinations(range(1, N + 1), k):
                    for r in range(reps):
                        spec = cbident.CBSpec(N, L, _points(rng, N), _points(rng, N), 0, idx)
                        rec.exact(f"N={N} L={L} i={idx} point={r}", cbident.cb_pair_sum(spec), cbident.cb_pair_det(spec))


def check_claim1(p, rec):
    for N in p.span("N", range(1, 5), range(1, 4)):
        for k in p.span("k", range(1, 3)):
            if k > N:
                continue
            for L in p.span("L", range(3), range(2)):
                for idx in itertools.combinations(range(1, N + 1), k):
                    rec.exact(f"N={N} L={L} i={idx}", cbident.q_restricted_sum(N, L, idx), cbident.q_restricted_det(N, L, idx))


def check_theorem2(p, rec):
    for N in p.span("N", range(1, 5), range(1, 4)):
        for k in p.span("k", range(3)):
            if k > N:
                continue
            for L in p.span("L", range(4), range(3)):
                forms = cbident.theorem2_forms(N, k, L)
                case = f"N={N} k={k} L={L}"
                rec.exact(case + " det=q-binomial", forms["determinant"], forms["q_binomial"])
                rec.exact(case + " q-binomial=product", forms["q_binomial"], forms["product"])
                if L <= 2:
                    idx = tuple(range(N - k + 1, N + 1))
                    rec.exact(case + " sum=product", cbident.q_restricted_sum(N, L, idx), forms["product"])


def check_theorem3(p, rec):
    for N in p.span("N", range(1, 5), range(1, 4)):
        for L in p.span("L", range(N + 1)):
            if L > N:
                continue
            for Mcal in p.span("M", range(5), range(4)):
                forms = cbident.watermelon_det_forms(N, L, Mcal)
                case = f"N={N} L={L} M={Mcal}"
                for name in ("q_binomial_det", "jacobi_trudi", "jacobi_trudi_pascal"):
                    rec.exact(f"{case} {name}", forms[name], forms["product"])
                rec.exact(f"{case} q=1", forms["q_binomial_det"](1), cbident.gessel_viennot_count(N, L, Mcal))


def check_corollary(p, rec):
    for N in p.span("N", range(1, 4), range(1, 3)):
        for L in p.span("L", range(N + 1)):
            if L > N:
                continue
            for Mcal in p.span("M", range(3)):
                for delta in sorted({0, N - L}):
                    target = QPoly.coerce(schur_eval((Mcal,) * N + (0,) * L, q_points(1, N + 1) + q_points(delta + N + 1, delta + N + L + 1)))
                    rec.exact(f"N={N} L={L} M={Mcal} delta={delta}", cbident.corollary_schur_det(N, L, Mcal, delta, p.form), target)


def check_theorem4(p, rec):
    Mcal = p.M if p.M is not None else 12
    for N in p.span("N", range(2, 4), range(2, 3)):
        for L in p.span("L", range(1, N)):
            if not 0 < L < N:
                continue
            k = N - L
            w = paths.watermelon_schur_form(N, L, Mcal, 0, k).truncate(6)
            limit = cbident.normtrace_limit(N, L, k, 6, literal_prefactor=p.form == "literal")
            rec.exact(f"N={N} L={L} M={Mcal} up to q^6", limit, w)


def _watermelon_forms(p, rec, deviation):
    for N in p.span("N", range(1, 4), range(1, 3)):
        Ls = [N] if not deviation else range(N)
        for L in p.span("L", Ls):
            if (L == N) == deviation or L > N:
                continue
            k = N - L
            for Mcal in p.span("M", range(4), range(3)):
                for n in p.span("n", range(Mcal + 1) if not deviation else [0]):
                    for delta in sorted({0, k}):
                        case = f"N={N} L={L} M={Mcal} n={n} delta={delta}"
                        brute = paths.path_gf("watermelon", N, Mcal, L, n, delta, check=False)
                        rec.exact(case + " P form", brute, paths.watermelon_p_form(N, L, Mcal, n, delta))
                        rec.exact(case + " Schur form", brute, paths.watermelon_schur_form(N, L, Mcal, n, delta, exponent=p.form))


def check_prop3(p, rec):
    _watermelon_forms(p, rec, deviation=False)


def check_prop4(p, rec):
    _watermelon_forms(p, rec, deviation=True)


def check_stars(p, rec):
    from .partitions import iter_partitions_in_box

    for N in p.span("N", range(1, 4), range(1, 3)):
        for k in p.span("k", range(N)):
            if k >= N:
                continue
            for lam in iter_partitions_in_box(N - k, 2 if p.small else 3, 0):
                for flavor in ("plain", "w", "wbar"):
                    rec.guard(f"N={N} k={k} lam={lam} {flavor}", lambda: paths.path_gf("star", N, lam=lam, k=k, flavor=flavor))
            for Mcal in p.span("M", range(3)):
                # with deviation k the last k rows of the skew tableau are full
                for lam in iter_partitions_in_box(N - k, Mcal, 0):
                    rec.guard(f"conj N={N} M={Mcal} lam={lam}", lambda: paths.path_gf("conj_star", N, Mcal, lam=lam, k=k))


# -- walkers -----------------------------------------------------------------------


def _sites(N, M):
    return [tuple(sorted(c, reverse=True)) for c in itertools.combinations(range(M + 1), N)]


def check_random_turns(p, rec):
    wrap = 1 if p.form == "literal" else None
    for N in p.span("N", range(1, 4), range(1, 3)):
        for M in p.span("M", range(1, 7), range(1, 5)):
            if N > M + 1:
                continue
            states = _sites(N, M)
            for K in p.span("K", range(7), range(5)):
                for l in states:
                    for j in states:
                        dp = paths.random_turns_dp(l, j, K, M)
                        case = f"N={N} M={M} K={K} l={l} j={j}"
                        rec.exact(case + " matrix", paths.random_turns_matrix(l, j, K, M), dp)
                        rec.exact(case + " kst", paths.random_turns_kst(l, j, K, M, wrap_sign=wrap), dp)


def check_bottleneck(p, rec):
    for N in p.span("N", range(1, 3)):
        for M in p.span("M", range(1, 6), range(1, 4)):
            if N > M + 1:
                continue
            states = _sites(N, M)
            for K1, K2 in itertools.product(p.span("K", range(4), range(3)), repeat=2):
                for m in p.span("m", range(M + 1)):
                    for l in states:
                        for j in states:
                            rec.exact(
                                f"N={N} M={M} K1={K1} K2={K2} m={m} l={l} j={j}",
                                paths.bottleneck_gluing(l, j, K1, K2, m, M),
                                paths.bottleneck_dp(l, j, K1, K2, m, M),
                            )


# -- spin chain --------------------------------------------------------------------


def _series_all(M, N, t):
    # exp(-t N) sum_K (t/2)^K A^K / K! over the whole sector, A the hopping count matrix
    basis, H = xx0.sector_hamiltonian(M, N)
    A = 2 * (N * np.eye(len(basis)) - H)
    term = np.eye(len(basis))
    total = term.copy()
    K = 0
    while True:
        K += 1
        term = term @ A * (t / 2 / K)
        total += term
        if K > abs(t) * N and np.abs(term).max() < 1e-18:
            break
    return basis, math.exp(-t * N) * total


def check_amplitude(p, rec):
    tol = 1e-9
    for N in p.span("N", range(1, 4), range(1, 3)):
        for M in p.span("M", range(1, 7), range(1, 5)):
            if N > M + 1:
                continue
            for t in (0.1, 0.5, 1.0):
                basis, series = _series_all(M, N, t)
                for a, j in enumerate(basis):
                    for b, l in enumerate(basis):
                        det_value = xx0.amplitude(j, l, t, M, check=False).value
                        case = f"N={N} M={M} t={t} j={j} l={l}"
                        rec.close(case + " spectral", det_value, xx0.amplitude_spectral(j, l, t, M).value, tol)
                        rec.close(case + " series", det_value, series[a, b], tol)
            # the integer-count series on one pair per size
            j = l = tuple(range(N - 1, -1, -1))
            rec.close(f"N={N} M={M} count series", xx0.amplitude(j, l, 0.5, M, check=False).value, xx0.amplitude_series(j, l, 0.5, M).value, tol)


def check_two_time(p, rec):
    tol = 1e-9
    for N in p.span("N", range(1, 4), range(1, 3)):
        for M in p.span("M", range(1, 6), range(1, 4)):
            if N > M + 1:
                continue
            states = _sites(N, M)
            for m in p.span("m", range(M + 1)):
                for j, l in itertools.product(states[:4], states[-4:]):
                    rec.close(
                        f"N={N} M={M} m={m} j={j} l={l}",
                        xx0.two_time_amplitude(j, l, 0.4, 0.7, m, M, check=False).value,
                        xx0.two_time_gluing(j, l, 0.4, 0.7, m, M).value,
                        tol,
                    )


def check_spin_chain(p, rec):
    for N in p.span("N", range(1, 6), range(1, 4)):
        for M in p.span("M", range(1, 21), range(1, 9)):
            if N > M + 1:
                continue
            cfg = xx0.ChainConfig(M, N)
            data = rec.guard(f"N={N} M={M} Bethe", lambda: xx0.bethe_ground(cfg, 0))
            if data is None:
                continue
            th = np.array(data.theta)
            res = np.abs(np.exp(1j * (M + 1) * th) - (-1) ** (N - 1)).max(initial=0.0)
            rec.close(f"N={N} M={M} Bethe residual", float(res), 0.0, 1e-12)
            closed = N - math.sin(math.pi * N / (M + 1)) / math.sin(math.pi / (M + 1))
            rec.close(f"N={N} M={M} energy", data.energy, closed, 1e-12)
            if math.comb(M + 1, N) ** 2 > 40_000:
                continue
            for t1, t2 in ((0.3, 0.5), (1.0, 2.0)):
                for n in range(N + 1):
                    gamma = xx0.autocorrelation(cfg, n, 0, t1, t2)
                    rec.close(f"N={N} M={M} n={n} Gamma(m=0)", gamma, xx0.persistence(cfg, n, t1 + t2), 1e-9)
                rec.close(f"N={N} M={M} F(n=0)", xx0.persistence(cfg, 0, t1 + t2), math.exp(-(t1 + t2) * data.energy), 1e-10)


def check_persistence(p, rec):
    for N in p.span("N", range(1, 4), range(1, 3)):
        for M in p.span("M", range(1, 7), range(1, 5)):
            if N > M + 1:
                continue
            cfg = xx0.ChainConfig(M, N)
            for n in p.span("n", range(N + 1)):
                if n > N:
                    continue
                for t in (0.0, 0.5, 2.0):
                    rec.close(f"N={N} M={M} n={n} t={t}", xx0.persistence(cfg, n, t), xx0.dense_persistence(cfg, n, t).real, 1e-9)
                for m in p.span("m", range(M + 1), range(0, M + 1, 2)):
                    rec.close(
                        f"N={N} M={M} n={n} m={m}",
                        xx0.autocorrelation(cfg, n, m, 0.4, 0.9),
                        xx0.dense_autocorrelation(cfg, n, m, 0.4, 0.9).real,
                        1e-9,
                    )


def check_formfactor(p, rec):
    for N in p.span("N", range(1, 4), range(1, 3)):
        for M in p.span("M", range(1, 6), range(1, 4)):
            Mcal = M - N + 1
            if Mcal < 0:
                continue
            for m in p.span("m", range(Mcal + 1)):
                if m > Mcal:
                    continue
                value = rec.guard(f"N={N} M={M} m={m} projector", lambda: xx0.projector_formfactor_q(N, Mcal, m))
                if value is not None:
                    rec.exact(f"N={N} M={M} m={m} projector", value, zq_product(N, N, Mcal - m).shift(m * N * N))
                    rec.exact(f"N={N} M={M} m={m} A(N,N,M-m)", value(1), macmahon_count(N, N, Mcal - m))
            for n in p.span("n", range(N + 1)):
                if n > N:
                    continue
                value = rec.guard(f"N={N} M={M} n={n} domain wall", lambda: xx0.domainwall_formfactor_q(N, n, Mcal))
                if value is not None:
                    rec.exact(f"N={N} M={M} n={n} A(N-n,N,M)", value(1), macmahon_count(N - n, N, Mcal))


def check_mehta(p, rec):
    top = p.N if p.N is not None else 20
    prev = asymptotics.mehta_integral(1)
    rec.close("I_1 = 1/sqrt(2 pi)", prev.value * math.sqrt(2 * math.pi), 1.0, 1e-12)
    for N in range(1, top):
        cur = asymptotics.mehta_integral(N + 1)
        expected = math.lgamma(N + 1) - 0.5 * math.log(2 * math.pi)
        rel = abs((cur.log_value - prev.log_value) - expected)
        rec.close(f"I_{N + 1}/I_{N}", rel, 0.0, 1e-12)
        prev = cur


CHECKS = {
    "macmahon": check_macmahon,
    "cauchy_binet": check_cauchy_binet,
    "theorem1": check_theorem1,
    "claim1": check_claim1,
    "theorem2": check_theorem2,
    "theorem3": check_theorem3,
    "corollary": check_corollary,
    "theorem4": check_theorem4,
    "prop3": check_prop3,
    "prop4": check_prop4,
    "stars": check_stars,
    "random_turns": check_random_turns,
    "bottleneck": check_bottleneck,
    "amplitude": check_amplitude,
    "two_time": check_two_time,
    "spin_chain": check_spin_chain,
    "persistence": check_persistence,
    "formfactor": check_formfactor,
    "mehta": check_mehta,
}

# checks whose alternate printed form can be selected with ``form="literal"``
LITERAL_FORMS = ("corollary", "theorem4", "prop3", "random_turns")


def run_check(name, params=None):
    params = params or Params()
    if name not in CHECKS:
        raise ValidationError(f"unknown check {name!r}; choose from {', '.join(CHECKS)}")
    if params.form not in ("derived", "literal"):
        raise ValidationError(f"unknown form {params.form!r}")
    result = CheckResult(name)
    start = time.perf_counter()
    CHECKS[name](params, _Recorder(result))
    result.elapsed = time.perf_counter() - start
    return result


def run_all(params=None):
    return [run_check(name, params) for name in CHECKS]
