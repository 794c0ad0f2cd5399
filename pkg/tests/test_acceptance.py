"""Acceptance criteria, one printed PASS/FAIL line each."""

import math
import re
import time

import pytest

from nestcorr import asymptotics, xx0
from nestcorr.draw import SceneSpec, render_svg
from nestcorr.partitions import macmahon_count
from nestcorr.paths import enumerate_stars, enumerate_watermelons
from nestcorr.verify import Params, run_check


def _report(capsys, number, title, passed, detail):
    with capsys.disabled():
        print(f"\nACCEPTANCE {number:2d} {'PASS' if passed else 'FAIL'}: {title} ({detail})")
    assert passed, detail


def _checks(*names):
    start = time.perf_counter()
    results = [run_check(name, Params()) for name in names]
    elapsed = time.perf_counter() - start
    ok = all(r.ok for r in results)
    detail = ", ".join(f"{r.name} {r.status} {r.cases} cases" for r in results)
    failures = [f for r in results for f in r.failures[:2]]
    if failures:
        detail += f"; first failures {failures}"
    return ok, elapsed, f"{detail}, {elapsed:.1f}s"


def test_01_macmahon(capsys):
    ok, elapsed, detail = _checks("macmahon")
    counts = macmahon_count(2, 2, 2) == 20 and macmahon_count(2, 2, 1) == 6
    _report(capsys, 1, "box product equals enumeration, L,N,K <= 4", ok and counts and elapsed <= 10, detail)


def test_02_cauchy_binet(capsys):
    ok, elapsed, detail = _checks("cauchy_binet")
    _report(capsys, 2, "Schur pair sum equals determinant at 5 rational points", ok and elapsed <= 30, detail)


def test_03_restricted_identity(capsys):
    ok, elapsed, detail = _checks("theorem1", "claim1")
    _report(capsys, 3, "restricted sum equals determinant, rational and q points", ok and elapsed <= 60, detail)


def test_04_three_closed_forms(capsys):
    ok, _, detail = _checks("theorem2")
    _report(capsys, 4, "three closed forms agree as Laurent polynomials", ok, detail)


def test_05_watermelon_determinant(capsys):
    ok, _, detail = _checks("theorem3")
    _report(capsys, 5, "watermelon determinant equals box product and binomial count", ok, detail)


def test_06_large_M_limit(capsys):
    ok, _, detail = _checks("theorem4")
    _report(capsys, 6, "large-M product matches W_q(N,L,12) to degree 6", ok, detail)


def test_07_watermelon_volumes(capsys):
    ok, _, detail = _checks("prop3", "prop4")
    _report(capsys, 7, "brute-force watermelon volumes equal P and Schur forms", ok, detail)


def test_08_random_turns(capsys):
    ok, _, detail = _checks("random_turns", "bottleneck")
    _report(capsys, 8, "DP, sector matrix and determinant sum agree; bottleneck factorizes", ok, detail)


def test_09_amplitude_triple(capsys):
    ok, _, detail = _checks("amplitude")
    _report(capsys, 9, "determinant, spectral sum and series agree to 1e-9", ok, detail)


def test_10_spin_chain_sanity(capsys):
    clauses = {}
    worst_f0 = 0.0
    worst_gamma = 0.0
    worst_residual = 0.0
    worst_energy = 0.0
    for N in range(1, 6):
        for M in range(max(N - 1, 1), 21):
            cfg = xx0.ChainConfig(M, N)
            data = xx0.bethe_ground(cfg)
            for th in data.theta:
                worst_residual = max(worst_residual, abs(complex(math.cos((M + 1) * th), math.sin((M + 1) * th)) - (-1) ** (N - 1)))
            closed = N - math.sin(math.pi * N / (M + 1)) / math.sin(math.pi / (M + 1))
            worst_energy = max(worst_energy, abs(data.energy - closed))
            if math.comb(M + 1, N) <= 120:
                for t in (0.5, 2.0):
                    worst_f0 = max(worst_f0, abs(xx0.persistence(cfg, 0, t) - 1))
                for n in range(N + 1):
                    g = xx0.autocorrelation(cfg, n, 0, 0.3, 0.9)
                    worst_gamma = max(worst_gamma, abs(g - xx0.persistence(cfg, n, 1.2)))
    clauses["F(n=0)=1"] = worst_f0 <= 1e-10
    clauses["Gamma(m=0)=F(t1+t2)"] = worst_gamma <= 1e-9
    clauses["Bethe residual"] = worst_residual <= 1e-12
    clauses["energy closed form"] = worst_energy <= 1e-12
    detail = (
        f"max|F(n=0)-1|={worst_f0:.3g}, max|Gamma-F|={worst_gamma:.2g}, "
        f"max residual={worst_residual:.2g}, max energy gap={worst_energy:.2g}; "
        f"failed clauses: {[k for k, v in clauses.items() if not v] or 'none'}"
    )
    _report(capsys, 10, "spin-chain sanity", all(clauses.values()), detail)


def test_11_formfactors(capsys):
    ok, _, detail = _checks("formfactor")
    _report(capsys, 11, "projector and domain wall form-factors match box counts", ok, detail)


def test_12_asymptotic_slopes(capsys):
    start = time.perf_counter()
    amp = asymptotics.leading_asymptote("amplitude", 60, 1, window=(20, 60))
    pers = asymptotics.leading_asymptote("persistence", 60, 2, n=2, window=(15, 40))
    pers0 = asymptotics.leading_asymptote("persistence", 60, 2, n=0, window=(15, 40))
    worst = 0.0
    for N in range(1, 30):
        a, b = asymptotics.mehta_integral(N), asymptotics.mehta_integral(N + 1)
        ratio = math.exp(b.log_value - a.log_value)
        expected = math.factorial(N) / math.sqrt(2 * math.pi)
        worst = max(worst, abs(ratio / expected - 1))
    elapsed = time.perf_counter() - start
    ok_amp = abs(amp.fitted_exponent - 0.5) <= 0.15 * 0.5
    ok_pers = abs(pers.fitted_exponent - 2) <= 0.2 * 2
    passed = ok_amp and ok_pers and worst <= 1e-12 and elapsed <= 300
    detail = (
        f"N=1 amplitude slope {amp.fitted_exponent:.3f}; N=2 persistence slope {pers.fitted_exponent:.3f} "
        f"at n=N (n=0 gives {pers0.fitted_exponent:.3f}, exponential decay); "
        f"Mehta recurrence rel err {worst:.1e}; {elapsed:.1f}s"
    )
    _report(capsys, 12, "power-law slopes and Mehta recurrence", passed, detail)


def test_13_rendering(capsys):
    nests = [n for n, _ in enumerate_watermelons(2, 2, 1)]
    first = [render_svg(SceneSpec(n)) for n in nests]
    second = [render_svg(SceneSpec(n)) for n in nests]
    boxes = {re.search(r'viewBox="([^"]*)"', s).group(1) for s in first}
    star = next(iter(enumerate_stars((6, 3, 3, 1), 4)))
    star_svg = render_svg(SceneSpec(star))
    polylines = re.findall(r'points="([^"]*)"', star_svg)
    seen, disjoint = set(), True
    for pts in polylines:
        verts = set(pts.split())
        disjoint &= not (seen & verts)
        seen |= verts
    passed = len(first) == 6 and len(set(first)) == 6 and first == second and len(boxes) == 1 and len(polylines) == 4 and disjoint
    detail = f"{len(first)} watermelons, {len(set(first))} distinct, byte-identical rerun {first == second}, star paths {len(polylines)}, vertex-disjoint {disjoint}"
    _report(capsys, 13, "rendering", passed, detail)
