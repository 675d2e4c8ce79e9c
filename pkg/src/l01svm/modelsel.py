"""Grid search over (C, sigma) with seeded k-fold cross-validation.

The default grid is C in {2^-7 .. 2^7} by sigma in {sqrt(2)^-7 .. sqrt(2)^7},
225 pairs.  Scaling, when on, is fit per fold on the training portion only.
"""

from dataclasses import dataclass, replace

import numpy as np

from .dataio import Dataset, apply_scaler, fit_scaler, signed_design
from .metrics import accuracy
from .solver import DivergenceError, LinearSolveError, solve, predict


@dataclass(frozen=True)
class Grid:
    """Candidate C and sigma values; the sweep runs their cross product."""

    C_values: tuple
    sigma_values: tuple

    def __post_init__(self):
        if not self.C_values or not self.sigma_values:
            raise ValueError("grid axes must be nonempty")
        if any(v <= 0 for v in self.C_values) or any(v <= 0 for v in self.sigma_values):
            raise ValueError("grid values must be positive")

    @property
    def pairs(self):
        """All (C, sigma) pairs, C ascending then sigma ascending."""
        return tuple((C, s) for C in self.C_values for s in self.sigma_values)


def default_grid():
    """C = 2^p for p in -7..7; sigma = sqrt(2)^q for q in -7..7; 225 pairs."""
    return Grid(
        C_values=tuple(2.0**p for p in range(-7, 8)),
        sigma_values=tuple(2.0 ** (0.5 * q) for q in range(-7, 8)),
    )


@dataclass(frozen=True)
class CvReport:
    """Mean validation accuracy per pair, the winning pair, and failed cells."""

    pair_accuracies: tuple  # ((C, sigma, mean_acc), ...) in grid order
    selected_C: float
    selected_sigma: float
    k: int
    seed: int
    failed_cells: tuple  # ((C, sigma, message), ...)

    @property
    def selected_accuracy(self):
        for C, s, acc in self.pair_accuracies:
            if C == self.selected_C and s == self.selected_sigma:
                return acc
        raise ValueError("selected pair missing from the accuracy table")


def k_fold_split(m, k, seed):
    """Partition {0..m-1} into k seeded folds whose sizes differ by at most 1.

    Folds are sorted index arrays; the permutation behind them is drawn from a
    PCG64 stream, so identical (m, k, seed) give identical folds.
    """
    if k < 2:
        raise ValueError("need at least 2 folds")
    if m < k:
        raise ValueError(f"cannot split {m} samples into {k} folds")
    perm = np.random.default_rng(seed).permutation(m)
    return [np.sort(part) for part in np.array_split(perm, k)]


def cross_validate(d, grid, k, seed, base_cfg, scale=True):
    """Score every grid pair by mean held-out accuracy over k seeded folds.

    Per fold, the scaler (when scale is on) is fit on the training portion
    only.  A solver failure in a cell scores that cell 0 and is recorded in
    failed_cells instead of aborting the sweep.  The winner is the accuracy
    argmax; ties go to the smaller C, then the smaller sigma.
    """
    folds = k_fold_split(d.m, k, seed)
    pairs = grid.pairs
    sums = np.zeros(len(pairs))
    failed = {}
    for fold_idx in folds:
        mask = np.ones(d.m, dtype=bool)
        mask[fold_idx] = False
        train = Dataset(d.X[mask], d.y[mask])
        val = Dataset(d.X[fold_idx], d.y[fold_idx])
        if scale:
            scaler = fit_scaler(train)
            train = apply_scaler(train, scaler)
            val = apply_scaler(val, scaler)
        sd = signed_design(train)
        for j, (C, sigma) in enumerate(pairs):
            try:
                result = solve(sd, replace(base_cfg, C=C, sigma=sigma))
            except (DivergenceError, LinearSolveError) as exc:
                failed.setdefault((C, sigma), str(exc))
                continue
            sums[j] += accuracy(predict(result.w, result.b, val.X), val.y)
    means = sums / len(folds)
    best = int(np.argmax(means))  # first max wins: smaller C, then smaller sigma
    return CvReport(
        pair_accuracies=tuple(
            (C, sigma, float(means[j])) for j, (C, sigma) in enumerate(pairs)
        ),
        selected_C=pairs[best][0],
        selected_sigma=pairs[best][1],
        k=k,
        seed=seed,
        failed_cells=tuple((C, s, msg) for (C, s), msg in sorted(failed.items())),
    )
