"""Request and response bodies for the HTTP service.

Datasets travel as LIBSVM text and models as the key-value model text, so
every payload is inspectable and survives the wire byte for byte.
"""

from typing import Literal

from pydantic import BaseModel, Field, model_validator


class MetricsReportModel(BaseModel):
    """Wire form of a run's metrics plus the config that produced them."""

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
    seed: int | None = None


class TrainRequest(BaseModel):
    train_data: str = Field(min_length=1)
    C: float = Field(default=1.0, gt=0)
    sigma: float = Field(default=0.5, gt=0)
    eta: float = Field(default=1.618, gt=0)
    tol: float = Field(default=1e-3, gt=0)
    max_iter: int = Field(default=1000, ge=0)
    seed: int | None = None
    scale: bool = True


class TrainResponse(BaseModel):
    model: str
    report: MetricsReportModel


class PredictRequest(BaseModel):
    model: str = Field(min_length=1)
    test_data: str = Field(min_length=1)


class PredictResponse(BaseModel):
    predictions: list[int]
    report: MetricsReportModel


class CvRequest(BaseModel):
    train_data: str = Field(min_length=1)
    k: int = Field(default=10, ge=2)
    seed: int = 1
    eta: float = Field(default=1.618, gt=0)
    tol: float = Field(default=1e-3, gt=0)
    max_iter: int = Field(default=1000, ge=0)
    scale: bool = True


class CvCell(BaseModel):
    C: float
    sigma: float
    acc: float
    selected: bool


class FailedCell(BaseModel):
    C: float
    sigma: float
    message: str


class CvResponse(BaseModel):
    cells: list[CvCell]
    selected_C: float
    selected_sigma: float
    selected_acc: float
    k: int
    seed: int
    failed: list[FailedCell]


class SynthRequest(BaseModel):
    kind: Literal["example1", "example2"]
    m: int = Field(default=1000, ge=1)
    r: float = Field(default=0.0, ge=0.0, lt=0.5)
    seed: int = 1

    @model_validator(mode="after")
    def _kind_matches_r(self):
        if self.kind == "example1" and self.r != 0.0:
            raise ValueError("example1 has no label flips; use example2 for r > 0")
        return self


class SynthResponse(BaseModel):
    train_data: str
    test_data: str


class BenchRequest(BaseModel):
    suite: Literal["table1", "table2"]
    sizes: list[int] | None = None  # table1 sweep
    ratios: list[float] | None = None  # table2 sweep
    m: int | None = Field(default=None, ge=1)  # table2 training size
    repeats: int = Field(default=10, ge=1)
    k: int = Field(default=10, ge=2)
    eta: float = Field(default=1.618, gt=0)
    tol: float = Field(default=1e-3, gt=0)
    max_iter: int = Field(default=1000, ge=0)

    @model_validator(mode="after")
    def _suite_matches_sweep(self):
        if self.suite == "table1" and (self.ratios is not None or self.m is not None):
            raise ValueError("table1 sweeps sizes; ratios and m belong to table2")
        if self.suite == "table2" and self.sizes is not None:
            raise ValueError("table2 sweeps ratios at fixed m; sizes belong to table1")
        if self.sizes is not None and (not self.sizes or any(s < 1 for s in self.sizes)):
            raise ValueError("sizes must be a nonempty list of positive counts")
        if self.ratios is not None and (
            not self.ratios or any(not 0.0 <= r < 0.5 for r in self.ratios)
        ):
            raise ValueError("ratios must be a nonempty list within [0, 0.5)")
        return self


class BenchRowModel(BaseModel):
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


class BenchResponse(BaseModel):
    rows: list[BenchRowModel]
    csv_text: str
    json_text: str


class HealthResponse(BaseModel):
    status: str
    version: str
