"""Benchmark suites on the synthetic Gaussian data.

table1 sweeps the training size; table2 fixes the size and sweeps the
label-flip ratio.  Each cell tunes (C, sigma) by cross-validation on the
first seed's training half, then averages metrics over seeds 1..repeats.
Features stay raw here; scaling is a real-data concern.
"""

from dataclasses import dataclass, replace
from statistics import median

import numpy as np

from .dataio import Dataset, signed_design
from .metrics import accuracy
from .modelsel import cross_validate, default_grid
from .solver import SolverConfig, SolverResult, predict, solve
from .synth import (
    FLIP_SEED_OFFSET,
    FlipSpec,
    GaussianSpec,
    gen_two_gaussians,
    gen_two_gaussians_flipped,
)

DEFAULT_RATIOS = (0.0, 0.05, 0.1, 0.15, 0.2)


@dataclass(frozen=True)
class BenchRow:
    """One averaged table line; scalar fields only, so rows survive the CSV
    and JSON round-trips exactly."""

    m: int
    r: float
    C: float
    sigma: float
    repeats: int
    acc: float
    nsv: float
    sws_per_iter: float
    tni: float
    cpu: float
    cpu_median: float
    converged_runs: int


@dataclass(frozen=True, eq=False)
class BenchRun:
    """One solve behind an averaged row, kept for post-hoc certificate checks."""

    m: int
    r: float
    seed: int
    train: Dataset
    test: Dataset
    result: SolverResult
    acc: float


def _gen_pair(m, r, seed):
    spec = GaussianSpec(m=m, seed=seed)
    if r > 0.0:
        return gen_two_gaussians_flipped(spec, FlipSpec(r, seed + FLIP_SEED_OFFSET))
    return gen_two_gaussians(spec)


def _run_cell(m, r, cfg, repeats):
    """Solve seeds 1..repeats at one (m, r) with a fixed config."""
    runs = []
    for seed in range(1, repeats + 1):
        train, test = _gen_pair(m, r, seed)
        result = solve(signed_design(train), replace(cfg, seed=seed))
        acc = accuracy(predict(result.w, result.b, test.X), test.y)
        runs.append(BenchRun(m=m, r=r, seed=seed, train=train, test=test, result=result, acc=acc))
    return runs


def _aggregate(m, r, cfg, runs):
    cpus = [run.result.wall_time for run in runs]
    return BenchRow(
        m=m,
        r=r,
        C=cfg.C,
        sigma=cfg.sigma,
        repeats=len(runs),
        acc=float(np.mean([run.acc for run in runs])),
        nsv=float(np.mean([run.result.support_indices.size for run in runs])),
        sws_per_iter=float(np.mean([run.result.trace.sws_per_iter for run in runs])),
        tni=float(np.mean([run.result.trace.tni for run in runs])),
        cpu=float(np.mean(cpus)),
        cpu_median=float(median(cpus)),
        converged_runs=sum(1 for run in runs if run.result.converged),
    )


def _tuned_cfg(train, k, base_cfg, grid):
    report = cross_validate(train, grid, k, 1, base_cfg, scale=False)
    return replace(base_cfg, C=report.selected_C, sigma=report.selected_sigma)


def run_table1(sizes, repeats=10, k=10, base_cfg=None, grid=None):
    """Size sweep: one averaged row per m in sizes, plus the individual runs.

    Per size, (C, sigma) come from k-fold cross-validation on the seed-1
    training half; seeds then run 1..repeats, scored on the matching clean
    testing halves.
    """
    if repeats < 1:
        raise ValueError("need at least one repeat")
    if base_cfg is None:
        base_cfg = SolverConfig(C=1.0, sigma=1.0)
    if grid is None:
        grid = default_grid()
    rows, all_runs = [], []
    for m in sizes:
        first_train, _ = gen_two_gaussians(GaussianSpec(m=m, seed=1))
        cfg = _tuned_cfg(first_train, k, base_cfg, grid)
        runs = _run_cell(m, 0.0, cfg, repeats)
        rows.append(_aggregate(m, 0.0, cfg, runs))
        all_runs.extend(runs)
    return rows, all_runs


def run_table2(ratios=DEFAULT_RATIOS, m=5000, repeats=10, k=10, base_cfg=None, grid=None):
    """Noise sweep at fixed m: one averaged row per flip ratio r.

    Labels flip in the 2m-sample pool before the train/test split, so test
    accuracy is measured against noisy labels too.  Tuning repeats per ratio
    on the seed-1 noisy training half.
    """
    if repeats < 1:
        raise ValueError("need at least one repeat")
    if base_cfg is None:
        base_cfg = SolverConfig(C=1.0, sigma=1.0)
    if grid is None:
        grid = default_grid()
    rows, all_runs = [], []
    for r in ratios:
        first_train, _ = _gen_pair(m, r, 1)
        cfg = _tuned_cfg(first_train, k, base_cfg, grid)
        runs = _run_cell(m, r, cfg, repeats)
        rows.append(_aggregate(m, r, cfg, runs))
        all_runs.extend(runs)
    return rows, all_runs
