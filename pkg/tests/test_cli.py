import dataclasses
import json

import pytest

from streamfec.cli import cmd_verify, main, make_parser


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBuild:
    def test_example_one_summary(self, capsys):
        code, out, _ = run(capsys, "build", "--W", "10", "--T", "9", "--B", "5", "--N", "3")
        assert code == 0
        assert out.strip() == "k=7 n=12 M=1 delta=2 q=7 m=9 rate=7/12 capacity=7/12"

    def test_example_two_summary(self, capsys):
        code, out, _ = run(capsys, "build", "--W", "11", "--T", "10", "--B", "4", "--N", "2")
        assert code == 0
        assert out.strip() == "k=9 n=13 M=2 delta=0 q=5 m=9 rate=9/13 capacity=9/13"

    def test_out_writes_bundle(self, capsys, tmp_path):
        path = tmp_path / "bundle.json"
        code, out, _ = run(capsys, "build", "--W", "10", "--T", "9", "--B", "5", "--N", "3",
                           "--out", str(path))
        assert code == 0
        obj = json.loads(path.read_text())
        assert obj["derived"]["k"] == 7
        assert f"wrote {path}" in out

    def test_out_of_regime_exits_2(self, capsys):
        code, _, err = run(capsys, "build", "--W", "10", "--T", "4", "--B", "3", "--N", "3")
        assert code == 2
        assert "error:" in err

    def test_zero_capacity_exits_2(self, capsys):
        code, _, err = run(capsys, "build", "--W", "4", "--T", "9", "--B", "5", "--N", "3")
        assert code == 2
        assert "zero-capacity" in err


class TestCapacity:
    def test_example_one(self, capsys):
        code, out, _ = run(capsys, "capacity", "--T", "9", "--B", "5", "--N", "3")
        assert code == 0
        assert out.strip() == "7/12 ≈ 0.5833"

    def test_invalid_exits_2(self, capsys):
        code, _, _ = run(capsys, "capacity", "--T", "2", "--B", "5", "--N", "3")
        assert code == 2


class TestVerify:
    def test_exhaustive_clean(self, capsys):
        code, out, _ = run(capsys, "verify", "--W", "10", "--T", "9", "--B", "5", "--N", "3",
                           "--trials", "2")
        assert code == 0
        summary = json.loads(out.strip().splitlines()[-1])
        assert summary["failures"] == []
        assert summary["patterns_checked"] > 100

    def test_single_pattern_report(self, capsys):
        code, out, _ = run(capsys, "verify", "--W", "10", "--T", "9", "--B", "5", "--N", "3",
                           "--erase", "0,1,2,3,4")
        assert code == 0
        rep = json.loads(out)
        assert len(rep["symbols"]) == 7
        assert all(s["status"] == "recovered" for s in rep["symbols"])
        assert all(s["recovery_time"] <= s["deadline"] for s in rep["symbols"])

    def test_random_mode(self, capsys):
        code, out, _ = run(capsys, "verify", "--W", "10", "--T", "9", "--B", "5", "--N", "3",
                           "--mode", "random", "--trials", "20", "--seed", "7")
        assert code == 0
        summary = json.loads(out.strip().splitlines()[-1])
        assert summary["patterns_checked"] == 20
        assert summary["failures"] == []

    def test_mutated_generator_exits_1(self, capsys, ex1):
        ext = ex1.field()
        d = ex1.derived
        rows = ex1.G.copy_rows()
        rows[3][d.k + 1] = rows[3][d.k + 1] + ext.one
        from streamfec.matrix import Mat
        bad_g = Mat(ext, rows, d.n)
        bad = dataclasses.replace(
            ex1, G=bad_g,
            P=bad_g.select_columns(list(range(d.k, d.n))), _plan_cache={})
        args = make_parser().parse_args(
            ["verify", "--W", "10", "--T", "9", "--B", "5", "--N", "3", "--trials", "1"])
        code = cmd_verify(args, gset=bad)
        out = capsys.readouterr().out
        summary = json.loads(out.strip().splitlines()[-1])
        assert code == 1
        assert summary["failures"]


class TestSimulate:
    def test_deterministic_output_files(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        base = ["simulate", "--W", "10", "--T", "9", "--B", "5", "--N", "3",
                "--len", "60", "--trials", "3", "--seed", "11"]
        assert run(capsys, *base, "--out", str(a))[0] == 0
        assert run(capsys, *base, "--out", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()
        summary = json.loads(a.read_text())
        assert summary["failures"] == []
        assert summary["packets"] == 180
        assert summary["recovered"] == 180

    def test_latency_stays_within_delay(self, capsys):
        code, out, _ = run(capsys, "simulate", "--W", "11", "--T", "10", "--B", "4",
                           "--N", "2", "--len", "80", "--trials", "4", "--seed", "3")
        assert code == 0
        summary = json.loads(out)
        assert summary["max_latency"] <= 10

    def test_zero_trials_empty_summary(self, capsys):
        code, out, _ = run(capsys, "simulate", "--W", "10", "--T", "9", "--B", "5",
                           "--N", "3", "--trials", "0")
        assert code == 0
        assert json.loads(out) == {}


class TestExport:
    def test_stdout(self, capsys):
        code, out, _ = run(capsys, "export", "--W", "11", "--T", "10", "--B", "4", "--N", "2")
        assert code == 0
        obj = json.loads(out)
        assert obj["params"] == {"W": 11, "T": 10, "B": 4, "N": 2}
        assert obj["constituents"]["mds"]["n"] == 4

    def test_file_round_trips_generator(self, capsys, tmp_path, ex1):
        from streamfec.matrix import Mat
        path = tmp_path / "g.json"
        code, _, _ = run(capsys, "export", "--W", "10", "--T", "9", "--B", "5", "--N", "3",
                         "--out", str(path))
        assert code == 0
        obj = json.loads(path.read_text())
        assert Mat.from_json_obj(obj["G"]) == ex1.G


class TestThreads:
    def test_worker_fanout_matches_serial(self, capsys, monkeypatch):
        base = ["verify", "--W", "10", "--T", "9", "--B", "5", "--N", "3", "--trials", "1"]
        monkeypatch.delenv("STREAMCODE_THREADS", raising=False)
        _, serial, _ = run(capsys, *base)
        monkeypatch.setenv("STREAMCODE_THREADS", "4")
        _, threaded, _ = run(capsys, *base)
        assert serial == threaded

    def test_garbage_env_falls_back(self, capsys, monkeypatch):
        monkeypatch.setenv("STREAMCODE_THREADS", "not-a-number")
        code, out, _ = run(capsys, "capacity", "--T", "9", "--B", "5", "--N", "3")
        assert code == 0
