import numpy as np
import pytest

from l01svm.dataio import (
    Dataset,
    ParseError,
    apply_scaler,
    fit_scaler,
    format_libsvm,
    parse_libsvm,
    signed_design,
)


class TestParse:
    def test_format_definition_case(self):
        d = parse_libsvm("+1 1:0.5 3:-1.2\n-1 2:2\n", n_hint=3)
        assert np.array_equal(d.X, [[0.5, 0.0, -1.2], [0.0, 2.0, 0.0]])
        assert np.array_equal(d.y, [1.0, -1.0])

    def test_zero_label_reads_negative(self):
        d = parse_libsvm("1 1:1\n0 1:2\n")
        assert np.array_equal(d.y, [1.0, -1.0])

    def test_empty_input_is_error(self):
        with pytest.raises(ParseError, match="empty input"):
            parse_libsvm("")

    def test_blank_lines_skipped(self):
        d = parse_libsvm("\n+1 1:1\n\n-1 1:2\n\n")
        assert d.m == 2

    def test_crlf_accepted(self):
        d = parse_libsvm("+1 1:1\r\n-1 1:2\r\n")
        assert d.m == 2

    def test_malformed_label_reports_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_libsvm("+1 1:1\nspam 1:1\n")

    def test_label_outside_set(self):
        with pytest.raises(ParseError, match="outside"):
            parse_libsvm("+3 1:1\n")

    def test_missing_colon(self):
        with pytest.raises(ParseError, match="line 1.*malformed entry"):
            parse_libsvm("+1 12\n")

    def test_non_numeric_value(self):
        with pytest.raises(ParseError, match="malformed entry"):
            parse_libsvm("+1 1:abc\n")

    def test_non_increasing_index(self):
        with pytest.raises(ParseError, match="strictly increasing"):
            parse_libsvm("+1 2:1 2:3\n")

    def test_decreasing_index(self):
        with pytest.raises(ParseError, match="strictly increasing"):
            parse_libsvm("+1 3:1 1:2\n")

    def test_zero_index_rejected(self):
        with pytest.raises(ParseError, match="strictly increasing"):
            parse_libsvm("+1 0:1\n")

    def test_non_finite_value(self):
        with pytest.raises(ParseError, match="non-finite"):
            parse_libsvm("+1 1:inf\n")

    def test_no_indices_and_no_hint(self):
        with pytest.raises(ParseError, match="hint"):
            parse_libsvm("+1\n-1\n")

    def test_hint_expands_width(self):
        d = parse_libsvm("+1 2:5\n", n_hint=4)
        assert d.n == 4
        assert np.array_equal(d.X, [[0.0, 5.0, 0.0, 0.0]])

    def test_max_index_beats_smaller_hint(self):
        d = parse_libsvm("+1 3:1\n", n_hint=2)
        assert d.n == 3

    def test_order_preserved(self):
        d = parse_libsvm("-1 1:9\n+1 1:8\n")
        assert np.array_equal(d.y, [-1.0, 1.0])
        assert d.X[0, 0] == 9.0


class TestFormat:
    def test_round_trip_exact(self):
        rng = np.random.default_rng(11)
        for _ in range(20):
            m = int(rng.integers(1, 12))
            n = int(rng.integers(1, 6))
            X = rng.standard_normal((m, n))
            X[rng.random((m, n)) < 0.3] = 0.0  # exercise sparse omission
            if not X.any():
                X[0, 0] = 1.0  # keep at least one index in the text
            y = rng.choice([-1.0, 1.0], size=m)
            d = Dataset(X, y)
            back = parse_libsvm(format_libsvm(d), n_hint=d.n)
            assert np.array_equal(back.X, d.X)
            assert np.array_equal(back.y, d.y)

    def test_positive_label_written_with_sign(self):
        d = Dataset([[1.0]], [1.0])
        assert format_libsvm(d) == "+1 1:1.0\n"


class TestDataset:
    def test_label_validation(self):
        with pytest.raises(ValueError, match="label"):
            Dataset([[1.0]], [0.5])

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError, match="NaN"):
            Dataset([[np.nan]], [1.0])

    def test_sample_count_mismatch(self):
        with pytest.raises(ValueError, match="sample count"):
            Dataset([[1.0], [2.0]], [1.0])

    def test_counts(self):
        d = Dataset([[1.0], [2.0], [3.0]], [1.0, 1.0, -1.0])
        assert (d.m, d.n, d.m_pos, d.m_neg) == (3, 1, 2, 1)

    def test_arrays_immutable(self):
        d = Dataset([[1.0]], [1.0])
        with pytest.raises(ValueError):
            d.X[0, 0] = 2.0


class TestScaling:
    def test_fit_records_min_max(self):
        s = fit_scaler(Dataset([[-2.0], [2.0]], [1.0, -1.0]))
        assert s.feature_min[0] == -2.0 and s.feature_max[0] == 2.0
        assert not s.constant[0]

    def test_constant_column_flagged(self):
        s = fit_scaler(Dataset([[5.0], [5.0]], [1.0, -1.0]))
        assert s.constant[0]

    def test_fit_two_features(self):
        s = fit_scaler(Dataset([[0.0, 1.0], [4.0, 3.0]], [1.0, -1.0]))
        assert np.array_equal(s.feature_min, [0.0, 1.0])
        assert np.array_equal(s.feature_max, [4.0, 3.0])

    def test_apply_midpoint_endpoint_extrapolation(self):
        train = Dataset([[-2.0], [2.0]], [1.0, -1.0])
        s = fit_scaler(train)
        out = apply_scaler(Dataset([[0.0], [2.0], [4.0]], [1.0, 1.0, 1.0]), s)
        assert np.array_equal(out.X.ravel(), [0.0, 1.0, 2.0])  # no clipping

    def test_constant_feature_maps_to_zero(self):
        train = Dataset([[5.0, 0.0], [5.0, 2.0]], [1.0, -1.0])
        s = fit_scaler(train)
        out = apply_scaler(train, s)
        assert np.array_equal(out.X[:, 0], [0.0, 0.0])

    def test_labels_unchanged(self):
        train = Dataset([[-1.0], [3.0]], [1.0, -1.0])
        out = apply_scaler(train, fit_scaler(train))
        assert np.array_equal(out.y, train.y)

    def test_dimension_mismatch(self):
        s = fit_scaler(Dataset([[1.0]], [1.0]))
        with pytest.raises(ValueError, match="mismatch"):
            apply_scaler(Dataset([[1.0, 2.0]], [1.0]), s)

    def test_self_scaling_lands_in_unit_interval(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            m = int(rng.integers(1, 15))
            n = int(rng.integers(1, 5))
            d = Dataset(rng.standard_normal((m, n)) * 10, rng.choice([-1.0, 1.0], m))
            out = apply_scaler(d, fit_scaler(d))
            assert np.all(out.X >= -1.0) and np.all(out.X <= 1.0)


class TestSignedDesign:
    def test_negative_label_negates_row(self):
        sd = signed_design(Dataset([[1.0, 2.0]], [-1.0]))
        assert np.array_equal(sd.A, [[-1.0, -2.0]])

    def test_positive_labels_identity(self):
        X = np.array([[1.0, 0.0], [0.0, 1.0]])
        sd = signed_design(Dataset(X, [1.0, 1.0]))
        assert np.array_equal(sd.A, X)

    def test_single_sample(self):
        sd = signed_design(Dataset([[3.0]], [1.0]))
        assert np.array_equal(sd.A, [[3.0]])
        assert np.array_equal(sd.ones, [1.0])

    def test_row_recovery_round_trip(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            m = int(rng.integers(1, 10))
            n = int(rng.integers(1, 6))
            d = Dataset(rng.standard_normal((m, n)), rng.choice([-1.0, 1.0], m))
            sd = signed_design(d)
            assert np.array_equal(sd.A * d.y[:, None], d.X)
