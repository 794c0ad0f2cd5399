"""Write asymptotics reports: a TSV table and a log-log plot per fit."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .asymptotics import leading_asymptote

COLUMNS = (
    "kind",
    "t_min",
    "t_max",
    "predicted_exponent",
    "fitted_exponent",
    "predicted_amplitude",
    "fitted_amplitude",
    "amplitude_ratio",
)


def write_table(reports, target):
    target = Path(target)
    with target.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=COLUMNS, delimiter="\t", lineterminator="\n")
        writer.writeheader()
        for rep in reports:
            row = rep.as_row()
            writer.writerow({k: f"{v:.6g}" if isinstance(v, float) else v for k, v in row.items()})
    return target


def plot_fit(report, ts, values, target):
    """log-log plot of the exact values with the fitted and predicted lines."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(ts, np.abs(values), "o", ms=3, label="exact")
    ax.loglog(ts, report.fitted_amplitude * ts ** (-report.fitted_exponent), "-", label=f"fit t^-{report.fitted_exponent:.3f}")
    if report.predicted_value:
        ax.loglog(ts, report.predicted_value * ts ** (-report.predicted_exponent), "--", label="predicted")
    ax.set_xlabel("t")
    ax.set_title(report.kind)
    ax.legend()
    fig.tight_layout()
    fig.savefig(target, metadata={"Software": None})
    plt.close(fig)
    return Path(target)


def write_report(kind, M, N, out_dir, n=0, m=0, window=None, points=40):
    """Run the fit and write ``<kind>.tsv`` and ``<kind>.png`` into ``out_dir``."""
    from . import xx0

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    report = leading_asymptote(kind, M, N, n=n, m=m, window=window, points=points)
    lo, hi = report.fit_window
    ts = np.geomspace(lo, hi, points)
    packed = tuple(range(N - 1, -1, -1))
    cfg = xx0.ChainConfig(M, N)
    if kind == "amplitude":
        values = np.array([xx0.amplitude(packed, packed, t, M).value for t in ts])
    elif kind == "persistence":
        values = xx0.persistence_spectrum(cfg, n).value(ts)
    elif kind == "two_time":
        values = np.array([xx0.two_time_amplitude(packed, packed, t, t, m, M).value for t in ts])
        ts = ts * ts
    else:
        values = np.array([xx0.autocorrelation(cfg, n, m, t, t) for t in ts])
        ts = ts * ts
    table = write_table([report], out_dir / f"{kind}.tsv")
    figure = plot_fit(report, ts, values, out_dir / f"{kind}.png")
    return report, table, figure
