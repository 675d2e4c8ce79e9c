"""Command-line client: train, predict, cv, synth, and bench subcommands.

Every subcommand builds one JSON request and sends it to the HTTP service,
in-process by default or at --server when given, then renders the response.
Exit codes: 0 success, 1 solver non-convergence or breakdown, 2 usage and
I/O errors.
"""

import argparse
import asyncio
import sys

import httpx


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _nonneg_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _positive_int(text):
    value = _nonneg_int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _fold_count(text):
    value = _nonneg_int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("need at least 2 folds")
    return value


def _flip_ratio(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not 0.0 <= value < 0.5:
        raise argparse.ArgumentTypeError("flip ratio must lie in [0, 0.5)")
    return value


def _fail(code, message):
    print(message, file=sys.stderr)
    raise SystemExit(code)


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except FileNotFoundError:
        _fail(2, f"file not found: {path}")
    except OSError as exc:
        _fail(2, f"cannot read {path}: {exc}")


def _write_text(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        _fail(2, f"cannot write {path}: {exc}")
    print(f"wrote: {path}", file=sys.stderr)


def _post(server, path, payload):
    async def go():
        if server:
            async with httpx.AsyncClient(base_url=server.rstrip("/"), timeout=None) as client:
                return await client.post(path, json=payload)
        from .service import create_app

        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(
            transport=transport, base_url="http://l01svm", timeout=None
        ) as client:
            return await client.post(path, json=payload)

    try:
        response = asyncio.run(go())
    except httpx.HTTPError as exc:
        _fail(2, f"cannot reach {server}: {exc}")
    if response.status_code == 200:
        return response.json()
    try:
        detail = response.json().get("detail", response.text)
    except ValueError:
        detail = response.text
    if isinstance(detail, list):  # field validation errors arrive as a list
        detail = "; ".join(str(e.get("msg", e)) for e in detail)
    _fail(1 if response.status_code == 409 else 2, f"error: {detail}")


def _show(value):
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _format_report(report):
    lines = [
        f"ACC {_show(report['acc'])}",
        f"NSV {_show(report['nsv'])}",
        f"SWS/ITER {_show(report['sws_per_iter'])}",
        f"TNI {_show(report['tni'])}",
        f"CPU {_show(report['cpu_seconds'])}",
    ]
    for key in ("converged", "C", "sigma", "eta", "tol", "max_iter", "seed"):
        lines.append(f"{key} {_show(report[key])}")
    return "\n".join(lines)


def cmd_train(args):
    payload = {
        "train_data": _read_text(args.train_path),
        "C": args.C,
        "sigma": args.sigma,
        "eta": args.eta,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "seed": args.seed,
        "scale": not args.no_scale,
    }
    body = _post(args.server, "/train", payload)
    _write_text(args.out, body["model"])
    print(_format_report(body["report"]))
    if not body["report"]["converged"]:
        print("solver did not converge within max_iter", file=sys.stderr)
        return 1
    return 0


def cmd_predict(args):
    payload = {
        "model": _read_text(args.model_path),
        "test_data": _read_text(args.test_path),
    }
    body = _post(args.server, "/predict", payload)
    lines = "\n".join(str(p) for p in body["predictions"]) + "\n"
    if args.out:
        _write_text(args.out, lines)
    else:
        sys.stdout.write(lines)
    print(_format_report(body["report"]), file=sys.stderr)
    return 0


def cmd_cv(args):
    payload = {
        "train_data": _read_text(args.train_path),
        "k": args.k,
        "seed": args.seed,
        "eta": args.eta,
        "tol": args.tol,
        "max_iter": args.max_iter,
        "scale": not args.no_scale,
    }
    body = _post(args.server, "/cv", payload)
    for cell in body["cells"]:
        flag = " *" if cell["selected"] else ""
        print(f"C {_show(cell['C'])} sigma {_show(cell['sigma'])} acc {_show(cell['acc'])}{flag}")
    print(
        f"selected C {_show(body['selected_C'])} sigma {_show(body['selected_sigma'])} "
        f"acc {_show(body['selected_acc'])}"
    )
    for cell in body["failed"]:
        print(
            f"cell C {_show(cell['C'])} sigma {_show(cell['sigma'])} failed: {cell['message']}",
            file=sys.stderr,
        )
    if args.out:
        rows = ["C,sigma,acc,selected"]
        rows += [
            f"{_show(c['C'])},{_show(c['sigma'])},{_show(c['acc'])},{_show(c['selected'])}"
            for c in body["cells"]
        ]
        _write_text(args.out, "\n".join(rows) + "\n")
    return 0


def cmd_synth(args):
    payload = {"kind": args.kind, "m": args.m, "r": args.r, "seed": args.seed}
    body = _post(args.server, "/synth", payload)
    _write_text(f"{args.out}_train.libsvm", body["train_data"])
    _write_text(f"{args.out}_test.libsvm", body["test_data"])
    return 0


def cmd_bench(args):
    payload = {
        "suite": args.suite,
        "repeats": args.repeats,
        "k": args.k,
        "eta": args.eta,
        "tol": args.tol,
        "max_iter": args.max_iter,
    }
    if args.suite == "table1":
        if args.r:
            _fail(2, "table1 sweeps sizes; --r belongs to table2")
        if args.m:
            payload["sizes"] = args.m
    else:
        if args.m and len(args.m) > 1:
            _fail(2, "table2 uses one --m; pass repeated --r for the sweep")
        if args.m:
            payload["m"] = args.m[0]
        if args.r:
            payload["ratios"] = args.r
    body = _post(args.server, "/bench", payload)
    columns = (
        "m",
        "r",
        "C",
        "sigma",
        "repeats",
        "acc",
        "nsv",
        "sws_per_iter",
        "tni",
        "cpu",
        "cpu_median",
        "converged_runs",
    )
    print(" ".join(columns))
    for row in body["rows"]:
        print(" ".join(_show(row[c]) for c in columns))
    _write_text(f"{args.out}.csv", body["csv_text"])
    _write_text(f"{args.out}.json", body["json_text"])
    return 0


def _add_solver_flags(parser):
    parser.add_argument("--eta", type=_positive_float, default=1.618)
    parser.add_argument("--tol", type=_positive_float, default=1e-3)
    parser.add_argument("--max-iter", type=_nonneg_int, default=1000)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="l01svm",
        description="Train and evaluate a zero-one-penalty soft-margin SVM.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--server", default=None, help="service URL; default runs in-process")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", parents=[common], help="fit a model on a LIBSVM file")
    p.add_argument("train_path")
    p.add_argument("--C", type=_positive_float, default=1.0)
    p.add_argument("--sigma", type=_positive_float, default=0.5)
    _add_solver_flags(p)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--no-scale", action="store_true")
    p.add_argument("--out", default="model.l01svm", help="model file path")
    p.set_defaults(handler=cmd_train)

    p = sub.add_parser("predict", parents=[common], help="score a test file with a model")
    p.add_argument("model_path")
    p.add_argument("test_path")
    p.add_argument("--out", default=None, help="predictions file; default stdout")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("cv", parents=[common], help="grid search with k-fold cross-validation")
    p.add_argument("train_path")
    p.add_argument("--k", type=_fold_count, default=10)
    p.add_argument("--seed", type=int, default=1)
    _add_solver_flags(p)
    p.add_argument("--no-scale", action="store_true")
    p.add_argument("--out", default=None, help="CSV path for the grid table")
    p.set_defaults(handler=cmd_cv)

    p = sub.add_parser("synth", parents=[common], help="generate synthetic train/test files")
    p.add_argument("kind", choices=("example1", "example2"))
    p.add_argument("--m", type=_positive_int, default=1000, help="samples per output file")
    p.add_argument("--r", type=_flip_ratio, default=0.0, help="label-flip ratio (example2)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--out", default="synth", help="output file prefix")
    p.set_defaults(handler=cmd_synth)

    p = sub.add_parser("bench", parents=[common], help="run a benchmark suite")
    p.add_argument("suite", choices=("table1", "table2"))
    p.add_argument(
        "--m",
        type=_positive_int,
        action="append",
        help="table1: repeat for each size; table2: the fixed training size",
    )
    p.add_argument("--r", type=_flip_ratio, action="append", help="table2: repeat for each ratio")
    p.add_argument("--repeats", type=_positive_int, default=10)
    p.add_argument("--k", type=_fold_count, default=10)
    _add_solver_flags(p)
    p.add_argument("--out", default="bench", help="output prefix for .csv and .json")
    p.set_defaults(handler=cmd_bench)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.handler(args)
