"""Seeded generators for the synthetic benchmarks: two Gaussian classes and
label-flip outliers.

All randomness comes from numpy's default_rng (PCG64) seeded explicitly, so
identical specs give byte-identical datasets.
"""

from dataclasses import dataclass

import numpy as np

from .dataio import Dataset

# flip stream convention: flip seed = data seed + this offset, so the flips
# are decoupled from the Gaussian draw at the same seed
FLIP_SEED_OFFSET = 101


@dataclass(frozen=True)
class GaussianSpec:
    """Two-class Gaussian benchmark: m samples per class, diagonal covariance."""

    m: int
    seed: int
    mu_pos: tuple = (0.5, -3.0)
    mu_neg: tuple = (-0.5, 3.0)
    variances: tuple = (0.2, 3.0)

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("need at least one sample per class")
        if len(self.mu_pos) != len(self.mu_neg) or len(self.mu_pos) != len(self.variances):
            raise ValueError("mean and variance tuples must have equal length")
        if any(v <= 0 for v in self.variances):
            raise ValueError("variances must be positive")


@dataclass(frozen=True)
class FlipSpec:
    """Label-flip ratio r in [0, 0.5) with its own seed."""

    r: float
    seed: int

    def __post_init__(self):
        if not 0.0 <= self.r < 0.5:
            raise ValueError("flip ratio must lie in [0, 0.5)")


def _draw_pool(spec):
    """The 2m-sample pool: positive block rows 0..m-1, then the negative block,
    both in generation order from one PCG64 stream seeded with spec.seed."""
    rng = np.random.default_rng(spec.seed)
    std = np.sqrt(np.asarray(spec.variances))
    pos = np.asarray(spec.mu_pos) + rng.standard_normal((spec.m, len(std))) * std
    neg = np.asarray(spec.mu_neg) + rng.standard_normal((spec.m, len(std))) * std
    X = np.concatenate([pos, neg])
    y = np.concatenate([np.ones(spec.m), -np.ones(spec.m)])
    return X, y


def _split_pool(X, y, m):
    # walk the two generation-order blocks in lockstep; odd-numbered positive
    # and even-numbered negative samples (1-based) train, the rest test
    train_X, train_y, test_X, test_y = [], [], [], []
    for i in range(m):
        if i % 2 == 0:
            first, second = i, m + i
        else:
            first, second = m + i, i
        train_X.append(X[first])
        train_y.append(y[first])
        test_X.append(X[second])
        test_y.append(y[second])
    return Dataset(np.array(train_X), np.array(train_y)), Dataset(
        np.array(test_X), np.array(test_y)
    )


def gen_two_gaussians(spec):
    """Draw m samples per class from the two Gaussians and split into train/test.

    The positive class draws its m standard-normal rows first, then the
    negative class, from one PCG64 stream seeded with spec.seed; samples are
    mu + sqrt(var) * z per coordinate.  Walking the classes in generation
    order, odd-numbered positive samples and even-numbered negative samples
    (1-based) go to the training set and the rest to the testing set, so both
    splits hold m samples, are class-balanced for even m, and m=1 yields
    exactly one sample on each side.
    """
    X, y = _draw_pool(spec)
    return _split_pool(X, y, spec.m)


def gen_two_gaussians_flipped(spec, f):
    """Like gen_two_gaussians, but flip floor(m * r) labels per class in the
    whole 2m-sample pool before the split, so the flips land in both the
    training and testing sets.  The split keys on generation order, not on
    the flipped labels, and f.r = 0 reproduces gen_two_gaussians exactly.
    """
    X, y = _draw_pool(spec)
    flipped = flip_labels(Dataset(X, y), f)
    return _split_pool(flipped.X, flipped.y, spec.m)


def flip_labels(d, f):
    """Negate the labels of floor(class size * r) samples in each class.

    The flipped samples are a seeded uniform choice without replacement,
    positive class first, then negative, from one PCG64 stream.  Features are
    untouched.  Both classes must be present.
    """
    pos_idx = np.flatnonzero(d.y > 0)
    neg_idx = np.flatnonzero(d.y < 0)
    if pos_idx.size == 0 or neg_idx.size == 0:
        raise ValueError("both classes must be present to flip labels")
    rng = np.random.default_rng(f.seed)
    y = np.array(d.y)
    for idx in (pos_idx, neg_idx):
        count = int(idx.size * f.r)
        if count:
            y[rng.choice(idx, size=count, replace=False)] *= -1.0
    return Dataset(d.X, y)


def bayes_reference():
    """The optimal linear rule for the default Gaussian pair: w = (2.5, -1), b = 0."""
    return np.array([2.5, -1.0]), 0.0
