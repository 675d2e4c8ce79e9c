"""FastAPI application: one endpoint per command.

Malformed payloads (data, model text, dimension mismatches) map to 400,
solver breakdowns (divergence, singular linear systems) to 409.  Running out
of iterations is not an error; the response says converged=false and the
client decides.
"""

from dataclasses import asdict

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..bench import DEFAULT_RATIOS, BenchRow, run_table1, run_table2
from ..dataio import (
    ParseError,
    apply_scaler,
    fit_scaler,
    format_libsvm,
    parse_libsvm,
    signed_design,
)
from ..metrics import accuracy, report_from_result, reports_to_csv, reports_to_json
from ..model_io import ModelFormatError, format_model, model_from_result, parse_model
from ..modelsel import cross_validate, default_grid
from ..solver import DivergenceError, LinearSolveError, SolverConfig, predict, solve
from ..synth import (
    FLIP_SEED_OFFSET,
    FlipSpec,
    GaussianSpec,
    gen_two_gaussians,
    gen_two_gaussians_flipped,
)
from .schemas import (
    BenchRequest,
    BenchResponse,
    BenchRowModel,
    CvCell,
    CvRequest,
    CvResponse,
    FailedCell,
    HealthResponse,
    MetricsReportModel,
    PredictRequest,
    PredictResponse,
    SynthRequest,
    SynthResponse,
    TrainRequest,
    TrainResponse,
)


def _report_model(rep):
    return MetricsReportModel(**asdict(rep))


def create_app():
    app = FastAPI(title="l01svm", version=__version__)

    def _bad_request(request, exc):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    def _conflict(request, exc):
        return JSONResponse(status_code=409, content={"detail": str(exc)})

    # ParseError and ModelFormatError are ValueErrors; starlette picks the
    # most specific registered class, so plain domain ValueErrors land here too
    app.add_exception_handler(ValueError, _bad_request)
    app.add_exception_handler(ParseError, _bad_request)
    app.add_exception_handler(ModelFormatError, _bad_request)
    app.add_exception_handler(DivergenceError, _conflict)
    app.add_exception_handler(LinearSolveError, _conflict)

    @app.get("/health", response_model=HealthResponse)
    async def health():
        return HealthResponse(status="ok", version=__version__)

    @app.post("/train", response_model=TrainResponse)
    async def train(req: TrainRequest):
        d = parse_libsvm(req.train_data)
        scaler = fit_scaler(d) if req.scale else None
        used = apply_scaler(d, scaler) if scaler is not None else d
        cfg = SolverConfig(
            C=req.C,
            sigma=req.sigma,
            eta=req.eta,
            tol=req.tol,
            max_iter=req.max_iter,
            seed=req.seed,
        )
        result = solve(signed_design(used), cfg)
        acc = accuracy(predict(result.w, result.b, used.X), used.y)
        return TrainResponse(
            model=format_model(model_from_result(result, scaler, cfg)),
            report=_report_model(report_from_result(result, acc, cfg)),
        )

    @app.post("/predict", response_model=PredictResponse)
    async def predict_endpoint(req: PredictRequest):
        model = parse_model(req.model)
        test = parse_libsvm(req.test_data, n_hint=model.n)
        if test.n != model.n:
            raise ValueError(f"model has {model.n} features, test data has {test.n}")
        used = apply_scaler(test, model.scaler) if model.scaler is not None else test
        preds = predict(model.w, model.b, used.X)
        report = MetricsReportModel(
            acc=accuracy(preds, used.y),
            nsv=int(model.support_indices.size),
            sws_per_iter=model.mean_working_set,
            tni=model.iterations,
            cpu_seconds=model.cpu_seconds,
            converged=model.converged,
            C=model.C,
            sigma=model.sigma,
            eta=model.eta,
            tol=model.tol,
            max_iter=model.max_iter,
            seed=model.seed,
        )
        return PredictResponse(predictions=[int(p) for p in preds], report=report)

    @app.post("/cv", response_model=CvResponse)
    async def cv(req: CvRequest):
        d = parse_libsvm(req.train_data)
        base = SolverConfig(
            C=1.0, sigma=1.0, eta=req.eta, tol=req.tol, max_iter=req.max_iter
        )
        rep = cross_validate(d, default_grid(), req.k, req.seed, base, scale=req.scale)
        return CvResponse(
            cells=[
                CvCell(
                    C=C,
                    sigma=s,
                    acc=a,
                    selected=(C == rep.selected_C and s == rep.selected_sigma),
                )
                for C, s, a in rep.pair_accuracies
            ],
            selected_C=rep.selected_C,
            selected_sigma=rep.selected_sigma,
            selected_acc=rep.selected_accuracy,
            k=rep.k,
            seed=rep.seed,
            failed=[FailedCell(C=C, sigma=s, message=msg) for C, s, msg in rep.failed_cells],
        )

    @app.post("/synth", response_model=SynthResponse)
    async def synth(req: SynthRequest):
        spec = GaussianSpec(m=req.m, seed=req.seed)
        if req.kind == "example2":
            train_d, test_d = gen_two_gaussians_flipped(
                spec, FlipSpec(req.r, req.seed + FLIP_SEED_OFFSET)
            )
        else:
            train_d, test_d = gen_two_gaussians(spec)
        return SynthResponse(
            train_data=format_libsvm(train_d), test_data=format_libsvm(test_d)
        )

    @app.post("/bench", response_model=BenchResponse)
    async def bench(req: BenchRequest):
        base = SolverConfig(
            C=1.0, sigma=1.0, eta=req.eta, tol=req.tol, max_iter=req.max_iter
        )
        if req.suite == "table1":
            rows, _ = run_table1(
                sizes=tuple(req.sizes) if req.sizes else (2000,),
                repeats=req.repeats,
                k=req.k,
                base_cfg=base,
            )
        else:
            rows, _ = run_table2(
                ratios=tuple(req.ratios) if req.ratios else DEFAULT_RATIOS,
                m=req.m if req.m is not None else 5000,
                repeats=req.repeats,
                k=req.k,
                base_cfg=base,
            )
        return BenchResponse(
            rows=[BenchRowModel(**asdict(row)) for row in rows],
            csv_text=reports_to_csv(rows, BenchRow),
            json_text=reports_to_json(rows),
        )

    return app
