"""Reading and writing trained models as self-describing UTF-8 key-value text.

The format is line-oriented: a version line, then one "key value..." line per
field.  Floats are written with shortest round-trip formatting, so a parsed
model reproduces the written one exactly.
"""

from dataclasses import dataclass

import numpy as np

from .dataio import ScalingMap, _frozen

FORMAT_LINE = "l01svm-model 1"


@dataclass(frozen=True, eq=False)
class Model:
    """A trained classifier: weights, intercept, the training scaler (or None
    when scaling was off), support indices, and the run summary that made it."""

    w: np.ndarray
    b: float
    scaler: ScalingMap | None
    support_indices: np.ndarray
    converged: bool
    iterations: int
    mean_working_set: float
    max_theta: float
    cpu_seconds: float
    C: float
    sigma: float
    eta: float
    tol: float
    max_iter: int
    seed: int | None

    def __post_init__(self):
        object.__setattr__(self, "w", _frozen(self.w))
        object.__setattr__(self, "support_indices", _frozen(self.support_indices, dtype=np.int64))

    @property
    def n(self):
        return self.w.shape[0]


def _floats(values):
    return " ".join(repr(float(v)) for v in values)


def format_model(model):
    """Render a Model as key-value text; parse_model inverts this exactly."""
    lines = [
        FORMAT_LINE,
        f"n {model.n}",
        f"w {_floats(model.w)}",
        f"b {float(model.b)!r}",
        f"scaled {'true' if model.scaler is not None else 'false'}",
    ]
    if model.scaler is not None:
        lines.append(f"feature_min {_floats(model.scaler.feature_min)}")
        lines.append(f"feature_max {_floats(model.scaler.feature_max)}")
        lines.append(
            "constant " + " ".join("true" if c else "false" for c in model.scaler.constant)
        )
    lines.append("support " + " ".join(str(int(i)) for i in model.support_indices))
    lines.append(f"converged {'true' if model.converged else 'false'}")
    lines.append(f"iterations {model.iterations}")
    lines.append(f"mean_working_set {float(model.mean_working_set)!r}")
    lines.append(f"max_theta {float(model.max_theta)!r}")
    lines.append(f"cpu_seconds {float(model.cpu_seconds)!r}")
    lines.append(f"C {float(model.C)!r}")
    lines.append(f"sigma {float(model.sigma)!r}")
    lines.append(f"eta {float(model.eta)!r}")
    lines.append(f"tol {float(model.tol)!r}")
    lines.append(f"max_iter {model.max_iter}")
    lines.append(f"seed {'none' if model.seed is None else model.seed}")
    return "\n".join(lines) + "\n"


class ModelFormatError(ValueError):
    """The model text is not a well-formed model file."""


def _parse_fields(text):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != FORMAT_LINE:
        raise ModelFormatError(f"corrupt model file: missing {FORMAT_LINE!r} header")
    out = {}
    for ln in lines[1:]:
        key, _, rest = ln.partition(" ")
        if key in out:
            raise ModelFormatError(f"corrupt model file: duplicate key {key!r}")
        out[key] = rest.strip()
    return out


def parse_model(text):
    """Parse format_model output back into a Model.

    Raises ModelFormatError on a missing header, missing or duplicate keys,
    or malformed values.
    """
    kv = _parse_fields(text)
    try:
        n = int(kv["n"])
        w = np.array([float(tok) for tok in kv["w"].split()]) if kv["w"] else np.zeros(0)
        if w.shape[0] != n:
            raise ModelFormatError(f"corrupt model file: expected {n} weights, got {w.shape[0]}")
        scaler = None
        if kv["scaled"] == "true":
            scaler = ScalingMap(
                np.array([float(tok) for tok in kv["feature_min"].split()]),
                np.array([float(tok) for tok in kv["feature_max"].split()]),
                np.array([tok == "true" for tok in kv["constant"].split()]),
            )
            if scaler.n != n:
                raise ModelFormatError("corrupt model file: scaler width disagrees with n")
        support = np.array([int(tok) for tok in kv["support"].split()], dtype=np.int64)
        seed_text = kv["seed"]
        return Model(
            w=w,
            b=float(kv["b"]),
            scaler=scaler,
            support_indices=support,
            converged=kv["converged"] == "true",
            iterations=int(kv["iterations"]),
            mean_working_set=float(kv["mean_working_set"]),
            max_theta=float(kv["max_theta"]),
            cpu_seconds=float(kv["cpu_seconds"]),
            C=float(kv["C"]),
            sigma=float(kv["sigma"]),
            eta=float(kv["eta"]),
            tol=float(kv["tol"]),
            max_iter=int(kv["max_iter"]),
            seed=None if seed_text == "none" else int(seed_text),
        )
    except KeyError as exc:
        raise ModelFormatError(f"corrupt model file: missing key {exc.args[0]!r}") from None
    except ModelFormatError:
        raise
    except ValueError as exc:
        raise ModelFormatError(f"corrupt model file: {exc}") from None


def model_from_result(result, scaler, cfg):
    """Assemble a Model from a solver result, the scaler used (or None), and config."""
    return Model(
        w=result.w,
        b=result.b,
        scaler=scaler,
        support_indices=result.support_indices,
        converged=result.converged,
        iterations=result.trace.tni,
        mean_working_set=result.trace.sws_per_iter,
        max_theta=result.residuals.max_theta,
        cpu_seconds=result.wall_time,
        C=cfg.C,
        sigma=cfg.sigma,
        eta=cfg.eta,
        tol=cfg.tol,
        max_iter=cfg.max_iter,
        seed=cfg.seed,
    )
