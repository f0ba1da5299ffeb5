import json

import pytest

from switchnet.cli import main
from switchnet.graphs import InputGraph, chain_with_lollipops
from switchnet.parity import build_chain_lollipop


@pytest.fixture
def chain_files(tmp_path):
    graph = chain_with_lollipops(4, 2)
    gpath = tmp_path / "g.json"
    gpath.write_text(json.dumps(graph.to_json()))
    net = build_chain_lollipop(4, 2, seed=0).network
    npath = tmp_path / "net.json"
    npath.write_text(json.dumps(net.to_json()))
    return gpath, npath


def run(args):
    return main([str(a) for a in args])


class TestVerifyNetwork:
    def test_sound_complete_exits_zero(self, chain_files, capsys):
        gpath, npath = chain_files
        code = run(["verify-network", "--net", npath, "--graph", gpath])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["sound"] and report["complete"]

    def test_counterexample_exits_one(self, tmp_path, capsys):
        graph = InputGraph(2, {("s", 1), (1, "t")})
        gpath = tmp_path / "g.json"
        gpath.write_text(json.dumps(graph.to_json()))
        net = {
            "n": 2,
            "vertices": ["a", "b"],
            "s": "a",
            "t": "b",
            "edges": [{"u": "a", "v": "b", "label": ["s", 1]}],
        }
        npath = tmp_path / "net.json"
        npath.write_text(json.dumps(net))
        code = run(["verify-network", "--net", npath, "--graph", gpath, "--family", "single"])
        report = json.loads(capsys.readouterr().out)
        assert code == 1
        assert not report["sound"]
        assert report["counterexample"]["kind"] == "unsound"


class TestBuildUpper:
    def test_chain_mode(self, chain_files, tmp_path, capsys):
        gpath, _ = chain_files
        out = tmp_path / "built.json"
        code = run(
            ["build-upper", "--mode", "chain", "--graph", gpath, "--out", out, "--verify"]
        )
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["sound"] and report["complete"] and report["within_bound"]
        assert out.exists()

    def test_general_mode(self, tmp_path, capsys):
        graph = InputGraph(4, {("s", 1), (1, 2), (2, "t"), ("s", 3), ("s", 4)})
        gpath = tmp_path / "g.json"
        gpath.write_text(json.dumps(graph.to_json()))
        code = run(
            ["build-upper", "--mode", "general", "--graph", gpath, "--z", 2, "--verify"]
        )
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["sound"] and report["complete"]


class TestCertifyLower:
    def test_valid_instance(self, tmp_path, capsys):
        graph = InputGraph(6, {("s", 1), (1, 2), (2, 3), (3, 4), (4, "t")})
        gpath = tmp_path / "g.json"
        gpath.write_text(json.dumps(graph.to_json()))
        code = run(["certify-lower", "--graph", gpath, "--z", 2])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["certificate"]["certificate"] > 0
        assert report["hypothesis_flags"]["no_short_st_path"]

    def test_edgeless_graph_exits_one_with_flags(self, tmp_path, capsys):
        gpath = tmp_path / "g.json"
        gpath.write_text(json.dumps(InputGraph(4, set()).to_json()))
        code = run(["certify-lower", "--graph", gpath, "--z", 2])
        report = json.loads(capsys.readouterr().out)
        assert code == 1
        assert "hypothesis_flags" in report
        assert not report["hypothesis_flags"]["has_st_path"]


class TestPebbleCommand:
    def test_min(self, tmp_path, capsys):
        graph = InputGraph(2, {("s", 1), (1, 2), (2, "t")})
        gpath = tmp_path / "g.json"
        gpath.write_text(json.dumps(graph.to_json()))
        code = run(["pebble", "--graph", gpath, "--min"])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["min_pebbles"] == 2

    def test_savitch(self, tmp_path, capsys):
        graph = InputGraph(2, {("s", 1), (1, 2), (2, "t")})
        gpath = tmp_path / "g.json"
        gpath.write_text(json.dumps(graph.to_json()))
        code = run(["pebble", "--graph", gpath, "--savitch", "auto"])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["max_pebbles"] <= 2


class TestSpectra:
    def test_n4_k1(self, capsys):
        code = run(["spectra", "--n", 4, "--k", 1])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["eigenvalues"] == [[6, 1], [2, 3]]
        assert report["verified"]


class TestPermutationAverage:
    def test_csv_and_exit_code(self, tmp_path, capsys):
        out = tmp_path / "trials.csv"
        code = run(
            ["verify-permutation-average", "--n", 4, "--trials", 3, "--seed", 5, "--out", out]
        )
        assert code == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "trial,formula,bruteforce,diff"
        assert all(line.endswith(",0") for line in lines[1:])


class TestFormulas:
    def test_record(self, capsys):
        code = run(["formulas", "--k", 2, "--z", 2, "--n", 64])
        report = json.loads(capsys.readouterr().out)
        assert code == 0
        assert report["master_bound"] >= report["regime1_bound"]


class TestWorkers:
    def test_parallel_sweep_matches_sequential(self, chain_files, capsys):
        gpath, npath = chain_files
        reports = []
        for workers in ("1", "2"):
            code = run(["--workers", workers, "verify-network", "--net", npath, "--graph", gpath])
            rep = json.loads(capsys.readouterr().out)
            rep.pop("timestamp")
            assert code == 0
            reports.append(json.dumps(rep, sort_keys=True))
        assert reports[0] == reports[1]


class TestReproducibility:
    def test_reports_identical_modulo_timestamp(self, tmp_path, capsys):
        graph = chain_with_lollipops(4, 2)
        gpath = tmp_path / "g.json"
        gpath.write_text(json.dumps(graph.to_json()))
        reports = []
        for _ in range(2):
            run(["build-upper", "--mode", "chain", "--graph", gpath, "--seed", 7, "--verify"])
            rep = json.loads(capsys.readouterr().out)
            rep.pop("timestamp")
            reports.append(json.dumps(rep, sort_keys=True))
        assert reports[0] == reports[1]

    def test_usage_error_exit_code(self, capsys):
        assert run(["no-such-command"]) == 2
        capsys.readouterr()
