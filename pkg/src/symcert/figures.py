"""Figure rendering for report commands (PNG files next to the output).

These are illustrations for humans, rendered from the already-computed
report data; the certified arithmetic lives entirely in the reports.
Float conversions here are fine because nothing downstream consumes
the pixels.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .certify import AnalyticReport, TheoremReport
from .primes import GapCheckResult, Sieve

_KIND_ORDER = ["harmonic", "smallness", "prime", "direct"]
_KIND_COLORS = {
    "harmonic": "#4878cf",
    "smallness": "#6acc65",
    "prime": "#d65f5f",
    "direct": "#956cb4",
}


def _save(fig, outdir: str, name: str) -> str:
    path = os.path.join(outdir, name)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path


def render_theorem_figures(report: TheoremReport, outdir: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    paths = []

    fig, ax = plt.subplots(figsize=(5, 3.4))
    counts = [report.method_counts.get(k, 0) for k in _KIND_ORDER]
    ax.bar(_KIND_ORDER, counts, color=[_KIND_COLORS[k] for k in _KIND_ORDER])
    ax.set_ylabel("certificates")
    ax.set_title(f"method histogram, n in [{report.n_lo}, {report.n_hi}]")
    for i, c in enumerate(counts):
        ax.annotate(str(c), (i, c), ha="center", va="bottom", fontsize=8)
    paths.append(_save(fig, outdir, "theorem_method_histogram.png"))

    fig, ax = plt.subplots(figsize=(7, 3.6))
    ns = [row[0] for row in report.per_n]
    bottom = [0] * len(ns)
    for idx, kind in enumerate(_KIND_ORDER, start=1):
        vals = [row[idx] for row in report.per_n]
        ax.bar(ns, vals, bottom=bottom, width=1.0,
               color=_KIND_COLORS[kind], label=kind)
        bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_xlabel("n")
    ax.set_ylabel("certificates per n")
    ax.set_title("certificate methods by n")
    ax.legend(fontsize=8)
    paths.append(_save(fig, outdir, "theorem_methods_by_n.png"))
    return paths


def render_gap_figures(result: GapCheckResult, s: Sieve, outdir: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    idxs = list(range(result.i_lo, result.i_hi + 1))
    ratios = []
    for i in idxs:
        p_i, p_next = s.primes[i - 1], s.primes[i]
        ratios.append((result.k * p_next) / ((result.k + 4) * p_i))
    fig, ax = plt.subplots(figsize=(7, 3.6))
    ax.plot(idxs, ratios, lw=0.7, color="#4878cf")
    ax.axhline(1.0, color="#d65f5f", lw=1, ls="--", label="failure line")
    ax.set_xlabel("prime index i")
    ax.set_ylabel(f"{result.k}*p(i+1) / {result.k + 4}*p(i)")
    ax.set_title(f"gap check k={result.k}: ratio must stay below 1")
    ax.legend(fontsize=8)
    return [_save(fig, outdir, f"gapcheck_k{result.k}_ratio.png")]


def render_analytic_figures(report: AnalyticReport, outdir: str) -> list[str]:
    os.makedirs(outdir, exist_ok=True)
    paths = []

    fig, axes = plt.subplots(1, 2, figsize=(8.5, 3.4))
    for ax, grid, label in (
        (axes[0], report.f_prime_grid, "f'(x)"),
        (axes[1], report.g_prime_grid, "x*g'(x)"),
    ):
        xs = [float(c.at) for c in grid]
        mid = [(float(c.lo) + float(c.hi)) / 2 for c in grid]
        ax.plot(xs, mid, marker=".", lw=0.8, color="#4878cf")
        ax.set_xscale("log")
        ax.axhline(0, color="#d65f5f", lw=1, ls="--")
        ax.set_xlabel("x")
        ax.set_title(f"{label} on the grid (certified positive)")
    paths.append(_save(fig, outdir, "analytic_derivative_signs.png"))

    fig, ax = plt.subplots(figsize=(5.5, 3.4))
    samples = [report.dominance_fails_below, report.dominance_at_rounded_t,
               report.dominance_just_above, *report.dominance_samples]
    ts = [float(s.t) for s in samples]
    margins = [float(s.rhs_lo) - float(s.lhs_hi) for s in samples]
    colors = ["#6acc65" if s.holds else "#d65f5f" for s in samples]
    ax.scatter(ts, margins, c=colors, s=24)
    ax.set_xscale("log")
    ax.set_yscale("symlog")
    ax.axhline(0, color="gray", lw=1, ls="--")
    ax.set_xlabel("t")
    ax.set_ylabel("rhs_lo - lhs_hi")
    ax.set_title("inequality margin at sample points")
    paths.append(_save(fig, outdir, "analytic_dominance_margin.png"))
    return paths
