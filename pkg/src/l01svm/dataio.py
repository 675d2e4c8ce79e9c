"""LIBSVM-style text parsing, [-1, 1] feature scaling, and the signed design matrix."""

from dataclasses import dataclass

import numpy as np


class ParseError(ValueError):
    """Malformed dataset text; messages carry the 1-based line number."""


def _frozen(a, dtype=np.float64):
    a = np.ascontiguousarray(a, dtype=dtype)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Dataset:
    """Dense samples X (m rows, n feature columns) with labels y in {-1, +1}."""

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        X = np.atleast_2d(np.asarray(self.X, dtype=np.float64))
        y = np.asarray(self.y, dtype=np.float64).ravel()
        if X.shape[0] != y.shape[0]:
            raise ValueError("X and y disagree on the sample count")
        if X.shape[0] < 1 or X.shape[1] < 1:
            raise ValueError("need at least one sample and one feature")
        if not np.all(np.isfinite(X)):
            raise ValueError("X contains NaN or infinite entries")
        if not np.all(np.abs(y) == 1.0):
            raise ValueError("every label must be -1 or +1")
        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "y", _frozen(y))

    @property
    def m(self):
        return self.X.shape[0]

    @property
    def n(self):
        return self.X.shape[1]

    @property
    def m_pos(self):
        return int(np.count_nonzero(self.y > 0))

    @property
    def m_neg(self):
        return int(np.count_nonzero(self.y < 0))


@dataclass(frozen=True, eq=False)
class SignedDesign:
    """Matrix A whose row i is y_i * x_i, kept together with y and the ones vector."""

    A: np.ndarray
    y: np.ndarray
    ones: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "A", _frozen(np.atleast_2d(self.A)))
        object.__setattr__(self, "y", _frozen(np.asarray(self.y).ravel()))
        object.__setattr__(self, "ones", _frozen(np.asarray(self.ones).ravel()))
        if not (self.A.shape[0] == self.y.shape[0] == self.ones.shape[0]):
            raise ValueError("A, y, and ones disagree on the sample count")

    @property
    def m(self):
        return self.A.shape[0]

    @property
    def n(self):
        return self.A.shape[1]


@dataclass(frozen=True, eq=False)
class ScalingMap:
    """Per-feature (min, max) recorded from a training set, with constant columns flagged."""

    feature_min: np.ndarray
    feature_max: np.ndarray
    constant: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "feature_min", _frozen(self.feature_min))
        object.__setattr__(self, "feature_max", _frozen(self.feature_max))
        object.__setattr__(self, "constant", _frozen(self.constant, dtype=bool))

    @property
    def n(self):
        return self.feature_min.shape[0]


def parse_libsvm(text, n_hint=None):
    """Parse lines of the form "<label> <index>:<value> ..." into a Dataset.

    Labels may be -1, +1 (also written 1), or 0, which is read as -1.  Feature
    indices are 1-based and must be strictly increasing within a line; unlisted
    coordinates are 0.  The feature count is the larger of n_hint and the
    largest index seen.  Both \\n and \\r\\n line endings are accepted.

    Raises ParseError with the offending line number on malformed input, and on
    input containing no samples at all.
    """
    labels = []
    rows = []
    max_index = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        try:
            label = float(parts[0])
        except ValueError:
            raise ParseError(f"line {line_no}: malformed label {parts[0]!r}") from None
        if label not in (-1.0, 0.0, 1.0):
            raise ParseError(f"line {line_no}: label {parts[0]} outside {{-1, 0, +1}}")
        feats = []
        prev = 0
        for tok in parts[1:]:
            idx_s, sep, val_s = tok.partition(":")
            if not sep:
                raise ParseError(f"line {line_no}: malformed entry {tok!r}")
            try:
                idx = int(idx_s)
                val = float(val_s)
            except ValueError:
                raise ParseError(f"line {line_no}: malformed entry {tok!r}") from None
            if idx <= prev:
                raise ParseError(
                    f"line {line_no}: feature index {idx} is not strictly increasing from 1"
                )
            if not np.isfinite(val):
                raise ParseError(f"line {line_no}: non-finite value {val_s!r}")
            feats.append((idx, val))
            prev = idx
        labels.append(1.0 if label > 0 else -1.0)
        rows.append(feats)
        if feats:
            max_index = max(max_index, feats[-1][0])
    if not labels:
        raise ParseError("empty input: no samples found")
    n = max(max_index, int(n_hint) if n_hint else 0)
    if n < 1:
        raise ParseError("no feature indices seen and no feature-count hint given")
    X = np.zeros((len(labels), n))
    for i, feats in enumerate(rows):
        for idx, val in feats:
            X[i, idx - 1] = val
    return Dataset(X, np.asarray(labels))


def format_libsvm(d):
    """Render a Dataset in the LIBSVM text format; zero entries are omitted.

    Values are written with shortest round-trip float formatting, so parsing
    the output (with n_hint=d.n) reproduces the dataset exactly.
    """
    lines = []
    for i in range(d.m):
        parts = ["+1" if d.y[i] > 0 else "-1"]
        for j in np.flatnonzero(d.X[i] != 0.0):
            parts.append(f"{j + 1}:{float(d.X[i, j])!r}")
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def fit_scaler(d):
    """Record per-feature min and max of d.X; constant columns are flagged."""
    mins = d.X.min(axis=0)
    maxs = d.X.max(axis=0)
    return ScalingMap(mins, maxs, mins == maxs)


def apply_scaler(d, s):
    """Map each feature through x' = 2(x - min)/(max - min) - 1.

    Constant features map to 0.  Values from unseen data may fall outside
    [-1, 1] and are not clipped.  Labels are unchanged.
    """
    if s.n != d.n:
        raise ValueError(f"dimension mismatch: scaler has {s.n} features, data has {d.n}")
    span = s.feature_max - s.feature_min
    # guard the constant columns, then overwrite them with 0
    safe = np.where(span > 0, span, 1.0)
    Xs = 2.0 * (d.X - s.feature_min) / safe - 1.0
    Xs[:, s.constant] = 0.0
    return Dataset(Xs, d.y)


def signed_design(d):
    """Build the SignedDesign of a Dataset: row i of A is y_i * x_i."""
    return SignedDesign(d.X * d.y[:, None], d.y, np.ones(d.m))
