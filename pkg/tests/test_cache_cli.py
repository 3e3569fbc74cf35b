import os
import struct
import subprocess
import sys

import numpy as np
import pytest

from quadratios.cache import CacheVersionError, LValueCache
from quadratios.cli import main as cli_main
from quadratios.lfunc import LValueRecord


class TestCache:
    def test_put_get_roundtrip_bits(self, tmp_path):
        path = str(tmp_path / "cache.txt")
        c = LValueCache(path)
        val = complex(0.12345678901234567, -3.4e-13)
        rec = LValueRecord("jacobi-bottom-n", 1001, 0.75, val, "afe", 1e-9)
        c.put(rec)
        c.flush()
        c2 = LValueCache(path)
        got = c2.get("jacobi-bottom-n", 1001, 0.75)
        assert got is not None
        assert struct.pack("<d", got.value.real) == struct.pack("<d", val.real)
        assert struct.pack("<d", got.value.imag) == struct.pack("<d", val.imag)

    def test_duplicate_key_smaller_err_wins(self, tmp_path):
        path = str(tmp_path / "cache.txt")
        c = LValueCache(path)
        c.put(LValueRecord("jacobi-bottom-n", 77, 0.7, 1.0 + 0j, "afe", 1e-8))
        c.put(LValueRecord("jacobi-bottom-n", 77, 0.7, 2.0 + 0j, "hurwitz", 1e-11))
        c.put(LValueRecord("jacobi-bottom-n", 77, 0.7, 3.0 + 0j, "afe", 1e-6))
        assert c.get("jacobi-bottom-n", 77, 0.7).value == 2.0 + 0j
        c.flush()
        c2 = LValueCache(path)
        assert c2.get("jacobi-bottom-n", 77, 0.7).value == 2.0 + 0j

    def test_key_quantization(self, tmp_path):
        c = LValueCache(str(tmp_path / "c.txt"))
        c.put(LValueRecord("jacobi-bottom-n", 5, 0.75, 1.5 + 0j, "hurwitz", 1e-11))
        assert c.get("jacobi-bottom-n", 5, 0.75 + 1e-14) is not None
        assert c.get("jacobi-bottom-n", 5, 0.75 + 1e-9) is None

    def test_version_mismatch_rejected(self, tmp_path):
        path = tmp_path / "cache.txt"
        path.write_text(
            "family=jacobi-bottom-n modulus=5 s_re=0x1.8p-1 s_im=0x0p+0 "
            "val_re=0x1p+0 val_im=0x0p+0 method=afe err_est=1e-9 version=99\n"
        )
        with pytest.raises(CacheVersionError):
            LValueCache(str(path))

    def test_append_only(self, tmp_path):
        path = str(tmp_path / "cache.txt")
        c = LValueCache(path)
        c.put(LValueRecord("jacobi-bottom-n", 5, 0.75, 1.0 + 0j, "hurwitz", 1e-11))
        c.flush()
        size1 = os.path.getsize(path)
        c.put(LValueRecord("jacobi-bottom-n", 7, 0.75, 2.0 + 0j, "hurwitz", 1e-11))
        c.flush()
        assert os.path.getsize(path) > size1
        lines = open(path).read().strip().splitlines()
        assert lines[0].startswith("#")
        assert len(lines) == 3


class TestCLI:
    def test_selfcheck_passes(self):
        assert cli_main(["verify", "euler"]) == 0

    def test_fault_injection_fails(self):
        assert cli_main(["selfcheck", "--inject-fault"]) == 1

    def test_usage_errors(self):
        # theorem 3 takes r, not alpha/beta
        assert cli_main(["predict", "--theorem", "3", "--alpha", "0.2", "--beta", "0.2", "--X", "100"]) == 2
        assert cli_main(["predict", "--theorem", "3", "--X", "100"]) == 2
        assert cli_main(["predict", "--theorem", "1", "--alpha", "0.2", "--X", "100"]) == 2
        assert cli_main(["nonsense"]) == 2

    def test_predict_smoke(self, capsys):
        assert cli_main(["predict", "--theorem", "2", "--alpha", "0.25", "--beta", "0.25", "--X", "1e4"]) == 0
        out = capsys.readouterr().out
        assert "term1" in out and "error_exponent" in out

    def test_empirical_smoke(self, capsys):
        rc = cli_main(["empirical", "--theorem", "2", "--alpha", "0.25", "--beta", "0.25", "--X", "150"])
        assert rc == 0
        assert "empirical" in capsys.readouterr().out

    def test_compare_report_format(self, tmp_path, capsys):
        out = str(tmp_path / "rep.csv")
        rc = cli_main(
            [
                "compare",
                "--theorem",
                "2",
                "--alpha",
                "0.25",
                "--beta",
                "0.25",
                "--x-grid",
                "100,200",
                "--out",
                out,
                "--tier",
                "1500",
            ]
        )
        assert rc == 0
        lines = open(out).read().strip().splitlines()
        header = lines[0].split(",")
        assert header == [
            "X",
            "alpha_re",
            "alpha_im",
            "beta_re",
            "beta_im",
            "emp_re",
            "emp_im",
            "t1_re",
            "t1_im",
            "t2_re",
            "t2_im",
            "abs_err",
            "rel_err",
        ]
        data = [l for l in lines if not l.startswith("#")]
        meta = [l for l in lines if l.startswith("#")]
        assert len(data) == 3  # header + 2 rows
        assert any("fitted_slope=" in l for l in meta)
        assert any("theorem_exponent=" in l for l in meta)

    def test_compare_warm_cache_identical(self, tmp_path):
        cache = str(tmp_path / "cache.txt")
        o1, o2 = str(tmp_path / "r1.csv"), str(tmp_path / "r2.csv")
        args = [
            "compare", "--theorem", "2", "--alpha", "0.25", "--beta", "0.25",
            "--x-grid", "100,200", "--tier", "1500", "--cache-path", cache,
        ]
        assert cli_main(args + ["--out", o1]) == 0
        assert os.path.getsize(cache) > 0
        assert cli_main(args + ["--out", o2]) == 0
        assert open(o1).read() == open(o2).read()

    def test_config_file_seeds_flags(self, tmp_path, capsys):
        cfgf = tmp_path / "cfg.txt"
        cfgf.write_text("tier=1500\nthreads=1\n")
        out = str(tmp_path / "rep.csv")
        rc = cli_main(
            [
                "--config",
                str(cfgf),
                "compare",
                "--theorem",
                "2",
                "--alpha",
                "0.25",
                "--beta",
                "0.25",
                "--x-grid",
                "100",
                "--out",
                out,
            ]
        )
        assert rc == 0
        assert "tier=1500" in open(out).read()

    def test_config_io_error(self, tmp_path):
        assert cli_main(["--config", str(tmp_path / "missing.cfg"), "sieve-info"]) == 3

    def test_entrypoint_subprocess(self):
        r = subprocess.run(
            [sys.executable, "-m", "quadratios.cli", "sieve-info", "--limit", "10000"],
            capture_output=True,
            text=True,
        )
        assert r.returncode == 0
        assert "primes" in r.stdout


class TestSelfcheckRepeatability:
    def test_identical_output_on_repeat(self):
        from quadratios.selfcheck import run_suites

        lines1, lines2 = [], []
        assert run_suites(names=["gauss", "euler"], out=lines1.append)
        assert run_suites(names=["gauss", "euler"], out=lines2.append)
        assert lines1 == lines2
