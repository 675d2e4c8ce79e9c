"""Math kernel: the L0/1 penalty, its objective and proximal operator, the
stationarity residuals used as the stopping certificate, and the starting rule."""

import math
from dataclasses import dataclass

import numpy as np

from .dataio import _frozen


@dataclass(frozen=True)
class ProxThreshold:
    """Proximal step gamma and penalty C; the zeroing threshold is sqrt(2*gamma*C)."""

    gamma: float
    C: float

    def __post_init__(self):
        if self.gamma <= 0 or self.C <= 0:
            raise ValueError("gamma and C must be positive")

    @property
    def tau(self):
        return math.sqrt(2.0 * self.gamma * self.C)


@dataclass(frozen=True, eq=False)
class PrimalDualPoint:
    """Iterate (w, b, u, lam): weights, intercept, slack, and multiplier."""

    w: np.ndarray
    b: float
    u: np.ndarray
    lam: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "w", _frozen(np.asarray(self.w).ravel()))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "u", _frozen(np.asarray(self.u).ravel()))
        object.__setattr__(self, "lam", _frozen(np.asarray(self.lam).ravel()))
        if self.u.shape != self.lam.shape:
            raise ValueError("u and lam must have the same length")
        if not (
            np.all(np.isfinite(self.w))
            and math.isfinite(self.b)
            and np.all(np.isfinite(self.u))
            and np.all(np.isfinite(self.lam))
        ):
            raise ValueError("point contains non-finite entries")


@dataclass(frozen=True)
class StationarityResiduals:
    """The four normalized residuals of the optimality system."""

    theta1: float
    theta2: float
    theta3: float
    theta4: float

    @property
    def max_theta(self):
        return max(self.theta1, self.theta2, self.theta3, self.theta4)


def l01_count(u):
    """Count the strictly positive entries of u. No epsilon: 1e-300 counts, 0 does not."""
    return int(np.count_nonzero(np.asarray(u) > 0))


def primal_objective(sd, w, b, C):
    """Evaluate 0.5*||w||^2 + C * (number of samples with 1 - y_i(<w, x_i> + b) > 0)."""
    w = np.asarray(w, dtype=np.float64).ravel()
    margins = sd.ones - sd.A @ w - b * sd.y
    return float(0.5 * (w @ w) + C * l01_count(margins))


def prox_l01(z, t):
    """Elementwise proximal map of the scaled positive-part count penalty.

    Entries in the half-open interval (0, tau] with tau = sqrt(2*gamma*C) are
    set to 0; every other entry passes through unchanged.  The endpoint tau
    itself maps to 0.  Comparisons are exact, with no epsilon slack.
    """
    z = np.asarray(z, dtype=np.float64)
    return np.where((z > 0.0) & (z <= t.tau), 0.0, z)


def stationarity_residuals(sd, p, T, C, sigma):
    """Evaluate the four residuals certifying the optimality system at (w, b, u, lam).

    With T the current working set (0-based sample positions):
      theta1 = ||w + A_T' lam_T|| / (1 + ||w||)
      theta2 = |<y_T, lam_T>| / (1 + |T|)
      theta3 = ||u - 1 + A w + b y|| / sqrt(m)
      theta4 = ||u - prox(u - lam/sigma)|| / (1 + ||u||), prox taken with gamma = 1/sigma.
    An empty T leaves theta1 = ||w||/(1 + ||w||) and theta2 = 0.
    """
    T = np.asarray(T, dtype=np.int64)
    w, b, u, lam = p.w, p.b, p.u, p.lam
    A_T = sd.A[T]
    lam_T = lam[T]
    norm_w = float(np.linalg.norm(w))
    theta1 = float(np.linalg.norm(w + A_T.T @ lam_T)) / (1.0 + norm_w)
    theta2 = float(abs(sd.y[T] @ lam_T)) / (1.0 + T.size)
    theta3 = float(np.linalg.norm(u - sd.ones + sd.A @ w + b * sd.y)) / math.sqrt(sd.m)
    t = ProxThreshold(1.0 / sigma, C)
    theta4 = float(np.linalg.norm(u - prox_l01(u - lam / sigma, t))) / (
        1.0 + float(np.linalg.norm(u))
    )
    return StationarityResiduals(theta1, theta2, theta3, theta4)


def initial_point(sd, C):
    """Pick the starting iterate: u = 0, lam = 0, and (w, b) by the objective test.

    The candidate w = ones/100, b = 0 is kept when its objective value is at
    most C * min(m_pos, m_neg); otherwise w = 0 and b is the sign minimizing
    the zero-weights objective, +1 when m_neg <= m_pos and -1 otherwise.
    """
    m_pos = int(np.count_nonzero(sd.y > 0))
    m_neg = sd.m - m_pos
    w = np.full(sd.n, 0.01)
    b = 0.0
    if primal_objective(sd, w, b, C) > C * min(m_pos, m_neg):
        w = np.zeros(sd.n)
        b = 1.0 if m_neg <= m_pos else -1.0
    return PrimalDualPoint(w, b, np.zeros(sd.m), np.zeros(sd.m))
