"""File-format round trips and byte stability."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

import quadrom as q
from quadrom import serialize


class TestDatasetCsv:
    def test_round_trip(self, toy_dataset, tmp_path):
        path = tmp_path / "ds.csv"
        serialize.write_dataset_csv(path, toy_dataset)
        back = serialize.read_dataset_csv(path)
        assert np.array_equal(back.points, toy_dataset.points)
        for m in (1, 2, 3):
            assert np.array_equal(back.level(m), toy_dataset.level(m))

    def test_missing_levels_kept_empty(self, toy_system, tmp_path):
        ds = q.sample_direct(toy_system, [1.0, 2.0], levels=(1,))
        path = tmp_path / "ds.csv"
        serialize.write_dataset_csv(path, ds)
        text = path.read_text().splitlines()
        assert text[0] == "omega,re_H1,im_H1,re_H2,im_H2,re_H3,im_H3"
        assert text[1].endswith(",,,,")
        back = serialize.read_dataset_csv(path)
        assert back.h2 is None and back.h3 is None

    def test_byte_stability(self, toy_dataset, tmp_path):
        p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
        serialize.write_dataset_csv(p1, toy_dataset)
        serialize.write_dataset_csv(p2, toy_dataset)
        assert p1.read_bytes() == p2.read_bytes()

    def test_bad_header_rejected(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("omega,h1\n1.0,2.0\n")
        with pytest.raises(ValueError, match="header"):
            serialize.read_dataset_csv(path)


class TestSystemJson:
    def test_round_trip(self, toy_system, tmp_path):
        path = tmp_path / "sys.json"
        serialize.write_system_json(path, toy_system)
        back = serialize.read_system_json(path)
        assert_allclose(back.A, toy_system.A)
        assert_allclose(back.Q, toy_system.Q)
        assert_allclose(back.B, toy_system.B)
        assert back.symmetric


class TestModelJson:
    def test_round_trip(self, toy_system, tmp_path):
        path = tmp_path / "model.json"
        serialize.write_model_json(path, toy_system)
        back = serialize.read_model_json(path)
        assert back.n == 2
        assert_allclose(back.A, toy_system.A)
        assert_allclose(back.Q, toy_system.Q)
        assert_allclose(back.E, np.eye(2))


class TestDiagnosticsCsv:
    def test_singular_values(self, tmp_path):
        path = tmp_path / "sv.csv"
        serialize.write_singular_values_csv(path, [4.0, 2.0, 1.0])
        lines = path.read_text().splitlines()
        assert lines[0] == "index,sigma,sigma_normalized"
        assert lines[2].split(",") == ["2", "2.0", "0.5"]

    def test_trace(self, tmp_path):
        path = tmp_path / "trace.csv"
        serialize.write_trace_csv(path, [1.0, 0.25])
        lines = path.read_text().splitlines()
        assert lines[0] == "q,deviation"
        assert lines[1] == "0,1.0"
        assert lines[2] == "1,0.25"

    def test_trajectory_real_and_complex(self, tmp_path):
        real = q.TimeSignal(0.0, 0.5, np.array([1.0, 2.0, 3.0]))
        p = tmp_path / "real.csv"
        serialize.write_trajectory_csv(p, real)
        assert p.read_text().splitlines()[0] == "t,re_y"
        back = serialize.read_trajectory_csv(p)
        assert_allclose(back.values, real.values)
        assert back.dt == pytest.approx(real.dt)

        cplx = q.TimeSignal(0.0, 0.5, np.array([1.0 + 1j, 2.0 - 1j]))
        p2 = tmp_path / "cplx.csv"
        serialize.write_trajectory_csv(p2, cplx)
        assert p2.read_text().splitlines()[0] == "t,re_y,im_y"
        assert_allclose(serialize.read_trajectory_csv(p2).values, cplx.values)
