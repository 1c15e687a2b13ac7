import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "cplxdist"]


def run_cli(*args, cwd=None):
    return subprocess.run(CLI + list(args), capture_output=True, text=True,
                          cwd=cwd)


class TestExitCodes:
    def test_usage_error_is_2(self):
        assert run_cli("frobnicate").returncode == 2
        assert run_cli().returncode == 2

    def test_missing_file_is_2(self, tmp_path):
        r = run_cli("distances", str(tmp_path / "nope.json"))
        assert r.returncode == 2
        assert "error" in r.stderr

    def test_malformed_file_is_2(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        assert run_cli("distances", str(bad)).returncode == 2

    def test_bad_scalar_list_is_2(self):
        assert run_cli("sumprod", "").returncode == 2


class TestPipeline:
    def test_gen_distances_verify(self, tmp_path):
        pts = tmp_path / "grid.json"
        r = run_cli("gen", "grid", "--size", "3", "--out", str(pts))
        assert r.returncode == 0
        r = run_cli("distances", str(pts), "--format", "json")
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert payload["distinctCount"] == 5
        r = run_cli("distances", str(pts), "--format", "csv")
        assert r.returncode == 0
        assert r.stdout.splitlines()[0] == "distance_re,distance_im,ordered_pairs"
        lines = tmp_path / "lines.json"
        r = run_cli("esgk", str(pts), "--out", str(lines))
        assert r.returncode == 0
        summary = json.loads(r.stdout)
        assert summary["n"] == 9 and summary["lineCount"] == 81
        assert set(summary) == {"n", "lineCount", "parallelPairs",
                                "badPlanePairs", "coplanarNonBadPairs",
                                "quadrupleCount"}
        r = run_cli("rich", str(lines), "-r", "3")
        assert r.returncode == 0
        r = run_cli("verify", "--points", str(pts), "--lines", str(lines),
                    "--suites", "distance-stats,esgk-consistency,lines-distinct")
        assert r.returncode == 0

    def test_verify_violation_exits_1(self, tmp_path):
        pts = tmp_path / "sq.json"
        run_cli("gen", "grid", "--size", "2", "--out", str(pts))
        lines = tmp_path / "l.json"
        run_cli("esgk", str(pts), "--out", str(lines))
        data = json.loads(lines.read_text())
        data[0] = {"base": [{"re": "7", "im": "0"}, {"re": "9", "im": "0"},
                            {"re": "0", "im": "0"}],
                   "dir": [{"re": "1", "im": "0"}, {"re": "1", "im": "0"},
                           {"re": "1", "im": "0"}]}
        lines.write_text(json.dumps(data))
        r = run_cli("verify", "--points", str(pts), "--lines", str(lines),
                    "--suites", "esgk-consistency")
        assert r.returncode == 1

    def test_sumprod(self):
        r = run_cli("sumprod", "0;1;2")
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert (payload["plusSize"], payload["minusSize"],
                payload["productSize"]) == (6, 7, 7)

    def test_surfaces_and_structure(self, tmp_path):
        lines = tmp_path / "pl.json"
        r = run_cli("gen", "planted-planes", "--planes", "2", "--per-plane",
                    "6", "--extra", "4", "--seed", "11", "--out", str(lines))
        assert r.returncode == 0
        r = run_cli("surfaces", str(lines), "-A", "6", "--cap-triples", "100")
        assert r.returncode == 0
        payload = json.loads(r.stdout)
        assert len(payload["planes"]) == 2
        r = run_cli("structure", str(lines), "-r", "3", "--epsilon", "0.1",
                    "--cap-triples", "100")
        assert r.returncode == 0

    def test_gen_product_writes_three_files(self, tmp_path):
        base = tmp_path / "pp"
        r = run_cli("gen", "product", "--scalars", "0;1", "--out", str(base))
        assert r.returncode == 0
        for suffix in ("plus", "minus", "product"):
            assert (tmp_path / f"pp.{suffix}.json").exists()

    def test_report_grid(self, tmp_path):
        out = tmp_path / "rep.csv"
        r = run_cli("report", "grid-distances", "--kmin", "3", "--kmax", "5",
                    "--epsilon", "0.1", "--format", "csv", "--out", str(out))
        assert r.returncode == 0
        rows = out.read_text().splitlines()
        assert rows[0].startswith("k,n,distinct_distances")
        assert len(rows) == 4


class TestDeterminism:
    def test_outputs_byte_identical_across_threads(self, tmp_path):
        pts = tmp_path / "p.json"
        run_cli("gen", "random", "--count", "12", "--bound", "9",
                "--seed", "5", "--out", str(pts))
        blobs = []
        for threads in ("1", "8"):
            out = tmp_path / f"d{threads}.json"
            r = run_cli("distances", str(pts), "--threads", threads,
                        "--out", str(out))
            assert r.returncode == 0
            blobs.append(out.read_bytes())
        assert blobs[0] == blobs[1]

    def test_gen_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run_cli("gen", "random", "--count", "10", "--bound", "7", "--seed",
                "3", "--out", str(a))
        run_cli("gen", "random", "--count", "10", "--bound", "7", "--seed",
                "3", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()
