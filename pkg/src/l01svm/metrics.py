"""Run metrics: test accuracy, support-vector and iteration counts, and exact
CSV/JSON round-tripping of metric reports."""

import csv
import io
import json
from dataclasses import asdict, dataclass, fields

import numpy as np


@dataclass(frozen=True)
class MetricsReport:
    """One run's accuracy, support count, working-set and iteration statistics,
    timing, and the solver configuration that produced them."""

    acc: float
    nsv: int
    sws_per_iter: float
    tni: int
    cpu_seconds: float
    converged: bool
    C: float
    sigma: float
    eta: float
    tol: float
    max_iter: int
    seed: int | None


def accuracy(predictions, y):
    """ACC = 1 - (1/(2 m)) * sum |prediction_i - y_i| over labels in {-1, +1}."""
    predictions = np.asarray(predictions, dtype=np.float64).ravel()
    y = np.asarray(y, dtype=np.float64).ravel()
    if predictions.shape != y.shape:
        raise ValueError("predictions and labels disagree on the sample count")
    m = y.shape[0]
    if m == 0:
        raise ValueError("cannot score an empty label vector")
    return float(1.0 - np.abs(predictions - y).sum() / (2.0 * m))


def report_from_result(result, acc, cfg):
    """Assemble a MetricsReport from a solver result, an accuracy, and its config."""
    return MetricsReport(
        acc=float(acc),
        nsv=int(result.support_indices.size),
        sws_per_iter=result.trace.sws_per_iter,
        tni=result.trace.tni,
        cpu_seconds=float(result.wall_time),
        converged=bool(result.converged),
        C=cfg.C,
        sigma=cfg.sigma,
        eta=cfg.eta,
        tol=cfg.tol,
        max_iter=cfg.max_iter,
        seed=cfg.seed,
    )


def _cell(value):
    # repr of a Python float round-trips exactly; None becomes the empty cell
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _uncell(text, kind):
    if kind is _OPT_INT:
        return None if text == "" else int(text)
    if kind is bool:
        return text == "true"
    return kind(text)


_OPT_INT = object()


def _schema(cls):
    out = []
    for f in fields(cls):
        if f.type == (int | None):
            out.append((f.name, _OPT_INT))
        elif f.type is bool:
            out.append((f.name, bool))
        elif f.type is int:
            out.append((f.name, int))
        else:
            out.append((f.name, float))
    return out


def reports_to_csv(reports, cls=MetricsReport):
    """Render reports as CSV with a header row; floats keep full precision."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    schema = _schema(cls)
    writer.writerow([name for name, _ in schema])
    for rep in reports:
        d = asdict(rep)
        writer.writerow([_cell(d[name]) for name, _ in schema])
    return buf.getvalue()


def reports_from_csv(text, cls=MetricsReport):
    """Parse reports_to_csv output back into report objects, exactly."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty CSV: no header row")
    schema = _schema(cls)
    expected = [name for name, _ in schema]
    if rows[0] != expected:
        raise ValueError(f"CSV header {rows[0]} does not match {expected}")
    out = []
    for row in rows[1:]:
        if len(row) != len(schema):
            raise ValueError(f"CSV row has {len(row)} cells, expected {len(schema)}")
        out.append(cls(**{name: _uncell(cell, kind) for (name, kind), cell in zip(schema, row)}))
    return out


def reports_to_json(reports):
    """Render reports as a JSON array of objects; floats keep full precision."""
    return json.dumps([asdict(rep) for rep in reports], indent=2) + "\n"


def reports_from_json(text, cls=MetricsReport):
    """Parse reports_to_json output back into report objects, exactly."""
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("JSON report file must hold an array of objects")
    return [cls(**obj) for obj in data]
