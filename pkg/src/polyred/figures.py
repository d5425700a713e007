"""Figure jobs: series of experiments written as CSV and drawn as SVG.

Each job lists its series (model family, degrees, K, trials, sigma, and
whether points are sampled or enumerated) and the analytic curve drawn
dashed under the data.  Desk defaults finish in minutes on one core;
``paper_scale=True`` switches to the full-scale trial counts.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from polyred import analytic, exhaustive, mcengine
from polyred.models import Family, ModelSpec

COLUMNS = [
    "figure_id", "series", "degree", "K", "trials", "reducible_count", "linear_count",
    "const_zero_count", "p_hat", "ci_halfwidth", "ratio", "analytic_overlay",
]


class FigureId(str, enum.Enum):
    CHELA_LOW_K = "fig1-chela-lowK"
    Z1_LOW = "fig2-z1-low"
    PM1 = "fig3-pm1"
    Z1_HIGH = "fig4-z1-high"
    PM1_LARGE = "fig5-pm1-large"
    ZERO_K = "fig6-zeroK"
    KUBA = "fig7-kuba"
    BINOMIAL = "fig8-binomial"
    MATRIX = "fig9-matrix"


@dataclass(frozen=True)
class Series:
    name: str
    family: Family
    degrees: tuple[int, ...]
    trials: int
    sigma: float = 5.0
    support: int | None = None
    exact: bool = False

    def spec(self, d: int) -> ModelSpec:
        return ModelSpec(self.family, d, self.support)


@dataclass(frozen=True)
class FigureJob:
    figure_id: FigureId
    title: str
    series: tuple[Series, ...]
    ratio: bool
    overlay: str | None
    log_y: bool = False
    ylabel: str = ""
    meta: dict = field(default_factory=dict)


def _overlay(label: str | None) -> Callable[[Series, int], float | None]:
    def value(s: Series, d: int) -> float | None:
        if label is None:
            return None
        if label == "z1-main":
            return analytic.z1_main_term(d)
        if label == "pm1-main":
            return analytic.pm1_main_term(d) if d % 2 else None
        if label == "chela":
            return analytic.chela_constant(d).approx if d >= 3 else None
        if label == "matrix-bound":
            return analytic.matrix_singularity_lower_bound(d).approx if d >= 2 else None
        if label == "one":
            return 1.0
        raise ValueError(f"unknown overlay {label!r}")

    return value


def _trials_for_halfwidth(hw: float, K: int, baseline: float = None, sigma: float = 5.0) -> int:
    # ratio halfwidth hw = sigma / (2 sqrt T) / baseline
    b = baseline if baseline is not None else 1 / (2 * K + 1)
    return math.ceil((sigma / (2 * hw * b)) ** 2)


def _binomial_baseline(K: int) -> float:
    return (1 - 1 / K) ** K


def build_job(figure_id: str | FigureId, paper_scale: bool = False,
              trials: int | None = None) -> FigureJob:
    """The job for ``figure_id``; ``trials`` overrides every sampled series."""
    fid = FigureId(figure_id)
    P = paper_scale

    def T(desk: int, full: int) -> int:
        if trials is not None:
            return trials
        return full if P else desk

    if fid is FigureId.CHELA_LOW_K:
        target_hw = {3: 0.058, 10: 0.053, 100: 0.251}
        series = tuple(
            Series(f"K={K}", Family.MONIC_UNIFORM_SYM, tuple(range(3, 11)),
                   T(100_000, _trials_for_halfwidth(hw, K)), support=K)
            for K, hw in target_hw.items()
        )
        return FigureJob(fid, "monic [-K,K]: P(reducible) x (2K+1)", series, True, "chela",
                         ylabel="ratio to 1/(2K+1)")
    if fid is FigureId.Z1_LOW:
        top = 20 if P else 16
        series = (
            Series("exact", Family.ZERO_ONE_FIXED_ENDS, tuple(range(2, top + 1)), 0, exact=True),
            Series("random", Family.ZERO_ONE_FIXED_ENDS, tuple(range(2, 33)), T(20_000, 1_000_000)),
        )
        return FigureJob(fid, "0/1 polynomials, fixed ends", series, False, "z1-main",
                         ylabel="P(reducible)")
    if fid is FigureId.PM1:
        series = (Series("random", Family.PLUS_MINUS_ONE, tuple(range(2, 33)),
                         T(20_000, 150_000_000)),)
        return FigureJob(fid, "+-1 polynomials", series, False, "pm1-main", ylabel="P(reducible)")
    if fid is FigureId.Z1_HIGH:
        degrees = tuple(range(40, 201, 20)) if P else (30, 40, 50, 60, 80, 100)
        series = (Series("random", Family.ZERO_ONE_FIXED_ENDS, degrees, T(1_000, 10_000), sigma=2.0),)
        return FigureJob(fid, "0/1 polynomials, high degree", series, False, "z1-main",
                         ylabel="P(reducible)")
    if fid is FigureId.PM1_LARGE:
        degrees = tuple(range(30, 201, 10)) + tuple(range(31, 202, 10)) if P else tuple(range(30, 101, 5))
        series = (Series("random", Family.PLUS_MINUS_ONE, tuple(sorted(degrees)),
                         T(1_000, 10_000), sigma=2.0),)
        return FigureJob(fid, "+-1 polynomials, high degree", series, False, "pm1-main",
                         ylabel="P(reducible)")
    if fid is FigureId.ZERO_K:
        series = tuple(
            Series(f"K={K}", Family.MONIC_UNIFORM_NONNEG, tuple(range(2, 16)),
                   T(min(2500 * K * K, 100_000), 2500 * K * K), support=K)
            for K in (1, 10, 100)
        )
        return FigureJob(fid, "monic [0,K]: P(reducible) x (K+1)", series, True, "one",
                         ylabel="ratio to 1/(K+1)")
    if fid is FigureId.KUBA:
        series = tuple(
            Series(f"K={K}", Family.NON_MONIC_UNIFORM, tuple(range(3, 16)),
                   T(min(2500 * K * K, 100_000), 2500 * K * K), support=K)
            for K in (10, 50, 100, 500)
        )
        return FigureJob(fid, "non-monic [-K,K]: P(reducible) x (2K+1)", series, True, "one",
                         ylabel="ratio to 1/(2K+1)")
    if fid is FigureId.BINOMIAL:
        target_hw = {10: 0.0017, 30: 0.0006, 50: 0.0004}
        series = tuple(
            Series(f"K={K}", Family.MONIC_BINOMIAL, tuple(range(3, 16)),
                   T(20_000, _trials_for_halfwidth(hw, K, _binomial_baseline(K))), support=K)
            for K, hw in target_hw.items()
        )
        return FigureJob(fid, "monic Bin(K,1/K): P(reducible) / (1-1/K)^K", series, True, "one",
                         ylabel="ratio to (1-1/K)^K")
    series = (
        Series("circles", Family.CHAR_POLY_PM1, tuple(range(2, 21)), T(10_000, 1_000_000)),
        Series("squares", Family.CHAR_POLY_PM1, tuple(range(21, 41 if P else 31)), T(2_000, 100_000)),
    )
    return FigureJob(fid, "characteristic polynomials of +-1 matrices", series, False,
                     "matrix-bound", ylabel="P(reducible)")


# -------------------------------------------------------------- running


def _row(job: FigureJob, s: Series, d: int, seed: int, workers: int) -> dict:
    spec = s.spec(d)
    over = _overlay(job.overlay)(s, d)
    if s.exact:
        st = exhaustive.exact(spec, workers=workers)
        n = st.support_size
        # uniform-weight families only, so weights are counts
        scale = n / st.total_weight
        counts = (st.reducible_weight * scale, st.linear_weight * scale, st.constant_zero_weight * scale)
        p_hat, hw = float(st.reducible_prob), 0.0
    else:
        st = mcengine.run(spec, s.trials, seed, workers)
        n = st.trials
        counts = (st.reducible, st.linear_factor, st.constant_zero)
        ci = mcengine.confidence(st, s.sigma)
        p_hat, hw = ci.point, ci.halfwidth
    try:
        ratio = p_hat / float(mcengine.baseline(spec))
    except mcengine.BaselineUndefined:
        ratio = None
    return {
        "figure_id": job.figure_id.value,
        "series": s.name,
        "degree": d,
        "K": "" if s.support is None else s.support,
        "trials": n,
        "reducible_count": int(counts[0]),
        "linear_count": int(counts[1]),
        "const_zero_count": int(counts[2]),
        "p_hat": repr(p_hat),
        "ci_halfwidth": repr(hw),
        "ratio": "" if ratio is None else repr(ratio),
        "analytic_overlay": "" if over is None else repr(over),
    }


def run_job(job: FigureJob, seed: int = 0, workers: int = 1,
            progress: Callable[[str], None] | None = None) -> list[dict]:
    rows = []
    for s in job.series:
        for d in s.degrees:
            if progress:
                progress(f"{job.figure_id.value} {s.name} d={d}")
            rows.append(_row(job, s, d, seed, workers))
    return rows


def write_csv(rows: list[dict], path: Path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=COLUMNS)
        w.writeheader()
        w.writerows(rows)


def write_svg(job: FigureJob, rows: list[dict], path: Path, log_y: bool | None = None) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.fonttype"] = "path"
    matplotlib.rcParams["svg.hashsalt"] = "polyred"
    fig, ax = plt.subplots(figsize=(7, 4.5))
    markers = "os^Dvx"
    for i, s in enumerate(job.series):
        pts = [r for r in rows if r["series"] == s.name]
        if job.ratio:
            pts = [r for r in pts if r["ratio"] != ""]
        if not pts:
            continue
        xs = [r["degree"] for r in pts]
        if job.ratio:
            ys = [float(r["ratio"]) for r in pts]
            err = [float(r["ci_halfwidth"]) * float(r["ratio"]) / float(r["p_hat"])
                   if float(r["p_hat"]) > 0 else 0.0 for r in pts]
        else:
            ys = [float(r["p_hat"]) for r in pts]
            err = [float(r["ci_halfwidth"]) for r in pts]
        ax.errorbar(xs, ys, yerr=err if any(err) else None, fmt=markers[i % len(markers)],
                    ms=4, capsize=2, label=s.name, fillstyle="none" if s.exact else "full")
    over = sorted({(r["degree"], float(r["analytic_overlay"])) for r in rows if r["analytic_overlay"] != ""})
    if over:
        ax.plot([x for x, _ in over], [y for _, y in over], "k--", lw=1, label=job.overlay)
    if log_y if log_y is not None else job.log_y:
        ax.set_yscale("log")
    ax.set_xlabel("degree d")
    ax.set_ylabel(job.ylabel)
    ax.set_title(f"{job.figure_id.value}: {job.title}", fontsize=10)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def figure(figure_id: str, out_dir: str | Path, *, seed: int = 0, workers: int = 1,
           paper_scale: bool = False, trials: int | None = None, log_y: bool | None = None,
           progress: Callable[[str], None] | None = None) -> tuple[Path, Path]:
    """Run a figure job and write ``<figure_id>.csv`` and ``<figure_id>.svg``."""
    job = build_job(figure_id, paper_scale, trials)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if not out.is_dir():
        raise OSError(f"output path {out} is not a directory")
    rows = run_job(job, seed, workers, progress)
    csv_path = out / f"{job.figure_id.value}.csv"
    svg_path = out / f"{job.figure_id.value}.svg"
    write_csv(rows, csv_path)
    write_svg(job, rows, svg_path, log_y)
    return csv_path, svg_path
