import asyncio

import httpx
import numpy as np
import pytest

import l01svm
from l01svm.bench import BenchRow
from l01svm.dataio import parse_libsvm, format_libsvm
from l01svm.metrics import reports_from_csv, reports_from_json
from l01svm.model_io import parse_model
from l01svm.service import create_app
from l01svm.synth import GaussianSpec, gen_two_gaussians

TWO_POINT = "+1 1:1\n-1 1:-1\n"
SIX_POINT = "+1 1:2\n+1 1:3\n+1 1:4\n-1 1:-2\n-1 1:-3\n-1 1:-4\n"


def call(method, path, payload=None):
    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://svc") as client:
            if method == "get":
                return await client.get(path)
            return await client.post(path, json=payload)

    return asyncio.run(go())


def train_response(**overrides):
    payload = {"train_data": TWO_POINT}
    payload.update(overrides)
    resp = call("post", "/train", payload)
    assert resp.status_code == 200, resp.text
    return resp.json()


class TestHealth:
    def test_status_and_version(self):
        resp = call("get", "/health")
        assert resp.status_code == 200
        body = resp.json()
        assert body["status"] == "ok"
        assert body["version"] == l01svm.__version__


class TestTrain:
    def test_defaults_solve_the_pair(self):
        body = train_response()
        rep = body["report"]
        assert rep["acc"] == 1.0
        assert rep["converged"] is True
        assert rep["nsv"] == 2
        assert (rep["C"], rep["sigma"], rep["eta"]) == (1.0, 0.5, 1.618)
        assert rep["seed"] is None
        model = parse_model(body["model"])
        assert model.scaler is not None
        assert model.converged

    def test_seed_echoed(self):
        assert train_response(seed=7)["report"]["seed"] == 7

    def test_scale_off_recorded_in_model(self):
        body = train_response(scale=False)
        assert "scaled false" in body["model"]
        assert parse_model(body["model"]).scaler is None

    def test_iteration_cap_is_not_an_error(self):
        body = train_response(max_iter=5)
        assert body["report"]["converged"] is False
        assert body["report"]["tni"] == 5

    def test_malformed_data_maps_to_400(self):
        resp = call("post", "/train", {"train_data": "bogus"})
        assert resp.status_code == 400
        assert "line 1" in resp.json()["detail"]

    def test_nonpositive_c_maps_to_422(self):
        resp = call("post", "/train", {"train_data": TWO_POINT, "C": -1.0})
        assert resp.status_code == 422

    def test_solver_breakdown_maps_to_409(self):
        huge = "+1 1:1e160 2:-1e160\n-1 1:-1e160 2:1e160\n"
        with np.errstate(over="ignore"):
            resp = call(
                "post", "/train",
                {"train_data": huge, "C": 8.0, "sigma": 1.0, "scale": False},
            )
        assert resp.status_code == 409
        assert "weight subproblem failed" in resp.json()["detail"]


class TestPredict:
    def test_round_trip_flow(self):
        trained = train_response()
        resp = call(
            "post", "/predict",
            {"model": trained["model"], "test_data": "+1 1:2\n-1 1:-2\n"},
        )
        assert resp.status_code == 200
        body = resp.json()
        assert body["predictions"] == [1, -1]
        rep = body["report"]
        assert rep["acc"] == 1.0
        # run metadata comes back from the model text, not a fresh solve
        assert rep["tni"] == trained["report"]["tni"]
        assert rep["nsv"] == trained["report"]["nsv"]
        assert rep["converged"] is True

    def test_accuracy_matches_returned_predictions(self):
        trained = train_response()
        test_data = "+1 1:0.5\n+1 1:-0.5\n-1 1:-2\n"
        resp = call("post", "/predict", {"model": trained["model"], "test_data": test_data})
        body = resp.json()
        y = [1.0, 1.0, -1.0]
        manual = 1.0 - sum(abs(p - t) for p, t in zip(body["predictions"], y)) / (2 * len(y))
        assert body["report"]["acc"] == manual
        assert set(body["predictions"]) <= {-1, 1}

    def test_stored_scaler_applied(self):
        trained = train_response(train_data="+1 1:10\n-1 1:0\n")
        resp = call(
            "post", "/predict",
            {"model": trained["model"], "test_data": "+1 1:10\n-1 1:0\n"},
        )
        assert resp.json()["report"]["acc"] == 1.0

    def test_feature_width_mismatch_maps_to_400(self):
        trained = train_response()
        resp = call(
            "post", "/predict",
            {"model": trained["model"], "test_data": "+1 1:1 2:3\n"},
        )
        assert resp.status_code == 400
        assert "model has 1 features, test data has 2" in resp.json()["detail"]

    def test_corrupt_model_maps_to_400(self):
        resp = call("post", "/predict", {"model": "garbage\n", "test_data": TWO_POINT})
        assert resp.status_code == 400
        assert "corrupt model file" in resp.json()["detail"]

    def test_empty_strings_fail_validation(self):
        resp = call("post", "/predict", {"model": "", "test_data": TWO_POINT})
        assert resp.status_code == 422

    def test_blank_test_data_maps_to_400(self):
        trained = train_response()
        resp = call("post", "/predict", {"model": trained["model"], "test_data": "\n"})
        assert resp.status_code == 400


class TestCv:
    def test_full_grid_on_tiny_data(self):
        resp = call(
            "post", "/cv",
            {"train_data": SIX_POINT, "k": 2, "max_iter": 5},
        )
        assert resp.status_code == 200, resp.text
        body = resp.json()
        assert len(body["cells"]) == 225
        selected = [c for c in body["cells"] if c["selected"]]
        assert len(selected) == 1
        assert selected[0]["C"] == body["selected_C"]
        assert selected[0]["sigma"] == body["selected_sigma"]
        assert selected[0]["acc"] == body["selected_acc"]
        assert body["cells"][0]["C"] == 2.0**-7
        assert body["cells"][0]["sigma"] == pytest.approx(2.0**-3.5)
        assert body["k"] == 2 and body["seed"] == 1

    def test_more_folds_than_samples_maps_to_400(self):
        resp = call("post", "/cv", {"train_data": TWO_POINT, "k": 5, "max_iter": 5})
        assert resp.status_code == 400
        assert "cannot split" in resp.json()["detail"]

    def test_single_fold_fails_validation(self):
        resp = call("post", "/cv", {"train_data": SIX_POINT, "k": 1})
        assert resp.status_code == 422


class TestSynth:
    def test_example1_matches_generator(self):
        resp = call("post", "/synth", {"kind": "example1", "m": 10, "seed": 4})
        assert resp.status_code == 200
        body = resp.json()
        train, test = gen_two_gaussians(GaussianSpec(m=10, seed=4))
        assert body["train_data"] == format_libsvm(train)
        assert body["test_data"] == format_libsvm(test)
        parsed = parse_libsvm(body["train_data"])
        assert parsed.m == 10 and parsed.n == 2
        assert int(np.sum(parsed.y > 0)) == 5

    def test_example2_flips_in_the_pool(self):
        plain = call("post", "/synth", {"kind": "example1", "m": 20, "seed": 1}).json()
        noisy = call(
            "post", "/synth", {"kind": "example2", "m": 20, "r": 0.2, "seed": 1}
        ).json()
        p_train, p_test = parse_libsvm(plain["train_data"]), parse_libsvm(plain["test_data"])
        n_train, n_test = parse_libsvm(noisy["train_data"]), parse_libsvm(noisy["test_data"])
        assert np.array_equal(p_train.X, n_train.X)
        assert np.array_equal(p_test.X, n_test.X)
        plain_y = np.concatenate([p_train.y, p_test.y])
        noisy_y = np.concatenate([n_train.y, n_test.y])
        # floor(20 * 0.2) = 4 flips per class across the 40-sample pool
        assert int(np.sum(plain_y != noisy_y)) == 8

    def test_example1_rejects_flip_ratio(self):
        resp = call("post", "/synth", {"kind": "example1", "m": 10, "r": 0.1})
        assert resp.status_code == 422

    def test_unknown_kind_rejected(self):
        resp = call("post", "/synth", {"kind": "example3", "m": 10})
        assert resp.status_code == 422


class TestBench:
    def test_table1_rows_and_serializations_agree(self):
        resp = call(
            "post", "/bench",
            {"suite": "table1", "sizes": [40], "repeats": 2, "k": 2, "max_iter": 30},
        )
        assert resp.status_code == 200, resp.text
        body = resp.json()
        assert len(body["rows"]) == 1
        row = body["rows"][0]
        assert row["m"] == 40 and row["r"] == 0.0 and row["repeats"] == 2
        as_rows = [BenchRow(**r) for r in body["rows"]]
        assert reports_from_csv(body["csv_text"], BenchRow) == as_rows
        assert reports_from_json(body["json_text"], BenchRow) == as_rows

    def test_table2_sweeps_ratios(self):
        resp = call(
            "post", "/bench",
            {"suite": "table2", "ratios": [0.0, 0.2], "m": 30, "repeats": 1,
             "k": 2, "max_iter": 30},
        )
        assert resp.status_code == 200, resp.text
        rows = resp.json()["rows"]
        assert [row["r"] for row in rows] == [0.0, 0.2]
        assert all(row["m"] == 30 for row in rows)

    def test_suite_sweep_mismatch_rejected(self):
        resp = call("post", "/bench", {"suite": "table1", "ratios": [0.1]})
        assert resp.status_code == 422
        resp = call("post", "/bench", {"suite": "table2", "sizes": [100]})
        assert resp.status_code == 422

    def test_empty_sweep_rejected(self):
        resp = call("post", "/bench", {"suite": "table1", "sizes": []})
        assert resp.status_code == 422

    def test_out_of_range_ratio_rejected(self):
        resp = call("post", "/bench", {"suite": "table2", "ratios": [0.6]})
        assert resp.status_code == 422
