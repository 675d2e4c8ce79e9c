"""Working-set proximal ADMM for the L0/1 soft-margin model, plus prediction.

Each iteration selects the working set from the current iterate, minimizes the
augmented Lagrangian block by block (slack, weights, intercept), and then takes
a dual ascent step restricted to the working set.  The weight subproblem is a
symmetric positive-definite solve whose size is chosen by comparing the feature
count n with the working-set size.
"""

import math
import time
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .core import (
    PrimalDualPoint,
    initial_point,
    primal_objective,
    stationarity_residuals,
)
from .dataio import _frozen


class DivergenceError(RuntimeError):
    """An iterate stopped being finite; the message names the iteration."""


class LinearSolveError(RuntimeError):
    """The weight subproblem factorization failed; the iterate is corrupt."""


@dataclass(frozen=True)
class SolverConfig:
    """Penalty C, augmented-Lagrangian weight sigma, dual step eta, stopping
    tolerance, iteration cap, and an optional bookkeeping seed."""

    C: float
    sigma: float
    eta: float = 1.618
    tol: float = 1e-3
    max_iter: int = 1000
    seed: int | None = None

    def __post_init__(self):
        if self.C <= 0 or self.sigma <= 0 or self.eta <= 0:
            raise ValueError("C, sigma, and eta must be positive")
        if not 0 < self.tol < 1:
            raise ValueError("tol must lie in (0, 1)")
        if self.max_iter < 0:
            raise ValueError("max_iter must be nonnegative")


@dataclass(frozen=True, eq=False)
class WorkingSet:
    """Sorted 0-based sample positions T with the z vector that produced them."""

    indices: np.ndarray
    z: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "indices", _frozen(self.indices, dtype=np.int64))
        object.__setattr__(self, "z", _frozen(self.z))


@dataclass(frozen=True, eq=False)
class IterationTrace:
    """Per-iteration working-set sizes, residual maxima, and objective values."""

    working_set_sizes: tuple
    max_thetas: tuple
    objectives: tuple

    @property
    def tni(self):
        """Total number of iterations run."""
        return len(self.working_set_sizes)

    @property
    def sws_per_iter(self):
        """Mean working-set size per iteration; 0.0 when no iterations ran."""
        if not self.working_set_sizes:
            return 0.0
        return float(np.mean(self.working_set_sizes))


@dataclass(frozen=True, eq=False)
class SolverResult:
    """Final iterate with its support set, residuals, trace, and loop wall time."""

    w: np.ndarray
    b: float
    support_indices: np.ndarray
    lam: np.ndarray
    residuals: object
    trace: IterationTrace
    converged: bool
    wall_time: float


def working_set(sd, w, b, lam, C, sigma):
    """Select T = { i : z_i in (0, sqrt(2C/sigma)] } with z = 1 - Aw - by - lam/sigma.

    The right endpoint is included; z_i = 0 is excluded.
    """
    z = sd.ones - sd.A @ w - b * sd.y - lam / sigma
    thr = math.sqrt(2.0 * C / sigma)
    return WorkingSet(np.flatnonzero((z > 0.0) & (z <= thr)), z)


def update_u(ws):
    """Slack step: zero on the working set, the z value elsewhere."""
    u = np.array(ws.z)
    u[ws.indices] = 0.0
    return u


def _solve_direct(A_T, v_T, sigma):
    # n x n path: (I + sigma A_T' A_T) w = sigma A_T' v_T
    n = A_T.shape[1]
    M = np.eye(n) + sigma * (A_T.T @ A_T)
    rhs = sigma * (A_T.T @ v_T)
    return cho_solve(cho_factor(M), rhs)


def _solve_smw(A_T, v_T, sigma):
    # |T| x |T| path via the low-rank inversion identity:
    # w = sigma A_T' (I + sigma A_T A_T')^{-1} v_T
    t = A_T.shape[0]
    G = np.eye(t) + sigma * (A_T @ A_T.T)
    return sigma * (A_T.T @ cho_solve(cho_factor(G), v_T))


def update_w(sd, ws, u_next, b, lam, sigma):
    """Weight step: solve (I + sigma A_T' A_T) w = sigma A_T' v_T on the working set.

    v = -(u_next + b y - 1 + lam/sigma).  When n <= |T| the n x n system is
    solved directly; otherwise the |T| x |T| reformulation is used.  An empty
    working set gives w = 0.
    """
    T = ws.indices
    if T.size == 0:
        return np.zeros(sd.n)
    v = -(u_next + b * sd.y - sd.ones + lam / sigma)
    A_T = sd.A[T]
    v_T = v[T]
    try:
        if sd.n <= T.size:
            return _solve_direct(A_T, v_T, sigma)
        return _solve_smw(A_T, v_T, sigma)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise LinearSolveError(f"weight subproblem failed: {exc}") from exc


def update_b(sd, w_next, u_next, lam, sigma):
    """Intercept step: b = <y, r>/m with r = -A w_next + 1 - u_next - lam/sigma."""
    r = sd.ones - sd.A @ w_next - u_next - lam / sigma
    return float(sd.y @ r) / sd.m


def update_lambda(sd, ws, p_next, lam, eta, sigma):
    """Dual step on the working set only; the complement is zeroed every time.

    lam_T += eta * sigma * (u - 1 + A w + b y)_T at the updated point p_next.
    """
    new = np.zeros(sd.m)
    T = ws.indices
    if T.size:
        varpi = p_next.u - sd.ones + sd.A @ p_next.w + p_next.b * sd.y
        new[T] = lam[T] + eta * sigma * varpi[T]
    return new


def _finite(*arrays):
    return all(np.all(np.isfinite(a)) for a in arrays)


def solve(sd, cfg):
    """Run the ADMM loop from the starting rule until the residual maximum
    drops below cfg.tol or cfg.max_iter iterations have run.

    Residuals are evaluated after each iteration at the updated point, using
    that iteration's working set.  Same inputs give bit-identical outputs.

    Raises DivergenceError when an iterate stops being finite, naming the
    iteration; propagates LinearSolveError from the weight step.
    """
    p0 = initial_point(sd, cfg.C)
    w, b, u, lam = p0.w, p0.b, p0.u, p0.lam
    sizes = []
    thetas = []
    objs = []
    converged = False
    res = None
    final_ws = None
    t_start = time.perf_counter()
    for k in range(1, cfg.max_iter + 1):
        ws = working_set(sd, w, b, lam, cfg.C, cfg.sigma)
        u = update_u(ws)
        w = update_w(sd, ws, u, b, lam, cfg.sigma)
        b = update_b(sd, w, u, lam, cfg.sigma)
        if not (_finite(w, u) and math.isfinite(b)):
            raise DivergenceError(f"iterate became non-finite at iteration {k}")
        p = PrimalDualPoint(w, b, u, lam)
        lam = update_lambda(sd, ws, p, lam, cfg.eta, cfg.sigma)
        if not _finite(lam):
            raise DivergenceError(f"multiplier became non-finite at iteration {k}")
        res = stationarity_residuals(sd, PrimalDualPoint(w, b, u, lam), ws.indices, cfg.C, cfg.sigma)
        sizes.append(int(ws.indices.size))
        thetas.append(res.max_theta)
        objs.append(primal_objective(sd, w, b, cfg.C))
        final_ws = ws
        if res.max_theta < cfg.tol:
            converged = True
            break
    wall = time.perf_counter() - t_start
    if final_ws is None:
        # iteration cap of 0: report the starting point as-is
        final_ws = working_set(sd, w, b, lam, cfg.C, cfg.sigma)
        res = stationarity_residuals(
            sd, PrimalDualPoint(w, b, u, lam), final_ws.indices, cfg.C, cfg.sigma
        )
    return SolverResult(
        w=_frozen(w),
        b=float(b),
        support_indices=final_ws.indices,
        lam=_frozen(lam),
        residuals=res,
        trace=IterationTrace(tuple(sizes), tuple(thetas), tuple(objs)),
        converged=converged,
        wall_time=wall,
    )


def predict(w, b, X):
    """Classify rows of X by the sign of <w, x> + b; zero maps to -1."""
    w = np.asarray(w, dtype=np.float64).ravel()
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[1] != w.shape[0]:
        raise ValueError(f"dimension mismatch: {X.shape[1]} features vs {w.shape[0]} weights")
    return np.where(X @ w + b > 0.0, 1.0, -1.0)
