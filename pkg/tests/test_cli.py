import io
import json
import subprocess
import sys

import pytest

from oddunimodal.cli import CACHE_ENV, ENGINE_VERSION, TableCache, coefficient_table, main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stream=buf)
    return code, buf.getvalue()


def body(text):
    return [json.loads(line) for line in text.splitlines() if not line.startswith('{"_meta"')]


class TestCoeffs:
    def test_ou_direct(self):
        code, out = run("--no-header", "coeffs", "ou", "direct", "4")
        assert code == 0
        assert body(out)[-1] == {"n": 4, "count": "6"}

    def test_oustar_ranks(self):
        code, out = run("--no-header", "coeffs", "oustar", "direct", "4", "--ranks")
        assert body(out)[-1] == {"n": 4, "ranks": {"-1": "1", "1": "1"}}

    def test_empty_body(self):
        code, out = run("--no-header", "coeffs", "ou", "hecke", "0")
        assert code == 0 and out == ""

    def test_header_line(self):
        code, out = run("coeffs", "ou", "direct", "2")
        meta = json.loads(out.splitlines()[0])["_meta"]
        assert meta["engine_version"] == ENGINE_VERSION and "timestamp" in meta

    def test_flags_after_subcommand(self):
        code, out = run("coeffs", "ou", "direct", "2", "--no-header", "--format", "csv")
        assert out.splitlines() == ["n,count", "1,1", "2,2"]

    def test_csv_long_ranks(self):
        code, out = run("--format", "csv", "--no-header", "coeffs", "ou", "ramanujan", "4", "--ranks")
        lines = out.splitlines()
        assert lines[0] == "n,m,count"
        assert "4,-3,1" in lines and "4,3,1" in lines

    def test_forms_agree(self):
        outs = {run("--no-header", "coeffs", "oustar", f, "12", "--ranks")[1]
                for f in ("direct", "appell", "hecke", "hecke2")}
        assert len(outs) == 1

    def test_big_numbers_are_strings(self):
        code, out = run("--no-header", "coeffs", "ou", "direct", "400")
        last = body(out)[-1]
        assert isinstance(last["count"], str) and int(last["count"]) > 2**53

    @pytest.mark.parametrize("argv", [
        ("coeffs", "ou", "appell", "3"),
        ("coeffs", "xx", "direct", "3"),
        ("coeffs", "ou", "direct", "-1"),
        ("scan", "1", "10"),
        ("enumerate", "v", "3"),
        ("asymptotics", "ou", "--t", "2.0"),
    ])
    def test_usage_errors(self, argv):
        assert run(*argv)[0] == 2

    def test_argparse_usage_error(self):
        with pytest.raises(SystemExit) as exc:
            main(["coeffs", "ou"])
        assert exc.value.code == 2


class TestCache:
    def test_round_trip(self, tmp_path):
        cache = TableCache(tmp_path)
        first = coefficient_table("ou", "direct", 300, False, cache)
        assert list(tmp_path.iterdir())
        again = cache.load("ou", "direct", 300, False)
        assert again == first and again[300] > 2**53

    def test_rank_round_trip(self, tmp_path):
        cache = TableCache(tmp_path)
        first = coefficient_table("oustar", "appell", 20, True, cache)
        assert cache.load("oustar", "appell", 20, True) == first

    def test_version_mismatch_invalidates(self, tmp_path):
        cache = TableCache(tmp_path)
        coefficient_table("ou", "direct", 10, False, cache)
        path = next(tmp_path.iterdir())
        data = json.loads(path.read_text())
        data["header"]["engine_version"] = "0.0.0"
        data["rows"] = ["999"] * 11
        path.write_text(json.dumps(data))
        assert cache.load("ou", "direct", 10, False) is None
        assert coefficient_table("ou", "direct", 10, False, cache)[4] == 6

    def test_env_var_and_flag(self, tmp_path, monkeypatch):
        env_dir, flag_dir = tmp_path / "env", tmp_path / "flag"
        monkeypatch.setenv(CACHE_ENV, str(env_dir))
        run("--no-header", "coeffs", "ou", "direct", "5")
        assert env_dir.exists()
        run("--no-header", "--cache-dir", str(flag_dir), "coeffs", "ou", "direct", "6")
        assert flag_dir.exists() and len(list(env_dir.iterdir())) == 1

    def test_cached_output_identical(self, tmp_path):
        a = run("--no-header", "--cache-dir", str(tmp_path), "coeffs", "ou", "hecke", "30")[1]
        b = run("--no-header", "--cache-dir", str(tmp_path), "coeffs", "ou", "hecke", "30")[1]
        assert a == b


class TestVerify:
    @pytest.mark.parametrize("suite,n", [("identities", "40"), ("bailey", "40"), ("parity", "2000"),
                                         ("congruences", "4000"), ("decomposition", "30")])
    def test_suites_pass(self, suite, n):
        code, out = run("--no-header", "verify", suite, n)
        rows = body(out)
        assert code == 0
        assert rows[-1]["check"] == "summary" and rows[-1]["ok"]

    def test_failure_embeds_counterexample(self):
        code, out = run("--no-header", "verify", "asymptotics")
        summary = body(out)[-1]
        # the N = 3 order check on the even Gaussian is a known failure
        assert code == 1
        assert summary["detail"]["first_failure"]["check"] == "euler_maclaurin_order_N=3"

    def test_deterministic_payload(self):
        cmd = [sys.executable, "-m", "oddunimodal", "verify", "identities", "30"]
        a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
        b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
        strip = lambda s: s.split("\n", 1)[1]
        assert a.startswith('{"_meta"') and strip(a) == strip(b)


class TestScanAndFriends:
    def test_scan_small(self):
        code, out = run("--no-header", "scan", "4", "100")
        assert code == 0
        assert all(r["residue"] != 2 for r in body(out))

    def test_scan_targets(self):
        code, out = run("--no-header", "--jobs", "2", "scan", "50", "2000")
        found = {r["residue"] for r in body(out) if r["status"] == "confirmed"}
        assert {37, 47} <= found

    def test_asymptotics_report(self):
        code, out = run("--no-header", "asymptotics", "ou*", "--n", "500", "--t", "0.1")
        rows = body(out)
        assert code == 0 and len(rows) == 2
        assert abs(float(rows[0]["ratio"]) - 1) < 0.05

    def test_enumerate(self):
        code, out = run("--no-header", "--format", "plain", "enumerate", "ou*", "4")
        assert out.splitlines() == [
            "sequence=(1, [3])  rank=1  left=[1]  peak=3  right=[]",
            "sequence=([3], 1)  rank=-1  left=[]  peak=3  right=[1]",
        ][::-1]
