import runpy
import sys
from pathlib import Path

import pytest

from hyperxor import AlgebraSignature, kernels, preset
from hyperxor.bench import bench_signature, bench_sweep
from hyperxor.errors import UnsupportedSignatureError
from hyperxor.verify import FAIL, PASS, SKIP, run_suite

SCRIPT = Path(__file__).resolve().parents[1] / "benchmarks" / "bench_backends.py"


def test_bench_row(backend):
    row = bench_signature(preset("d(3)"), reps=3)
    assert row.backend == backend and row.n == 3 and row.dim == 8
    assert row.naive_ns > 0 and row.diagonal_ns > 0 and row.max_dev <= 1e-12


def test_bench_sweep_and_errors():
    rows = bench_sweep(preset("m(3)"), [0, 2, 3], reps=2)
    assert [r.n for r in rows] == [0, 2, 3]
    with pytest.raises(UnsupportedSignatureError):
        bench_signature(preset("dual"))
    with pytest.raises(ValueError):
        bench_signature(preset("d(1)"), reps=0)


def test_backend_script_runs(capsys, monkeypatch):
    if "numba" not in kernels.BACKENDS:
        pytest.skip("numba unavailable")
    monkeypatch.setattr(sys, "argv", [str(SCRIPT), "--min-n", "2", "--max-n", "3", "--reps", "2"])
    runpy.run_path(str(SCRIPT), run_name="__main__")
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "kernel,n,numba_us,numpy_us,numba_speedup"
    assert {line.split(",")[0] for line in lines[1:]} == {"fwht", "diag_product", "sign_table", "mul_table"}


@pytest.mark.parametrize("name", ["d(4)", "m(3)", "m(0,2)[complex]", "m(1,2)[complex]", "d(7)", "d(0)"])
def test_suite_passes_on_diagonal_algebras(name):
    results = run_suite(preset(name), seed=7, cases=30)
    assert not [r for r in results if r.status == FAIL]
    if preset(name).n <= 4:
        assert {r.status for r in results} == {PASS}


@pytest.mark.parametrize("name", ["dual", "cl(1,1)", "quaternion", "cl(0,1)",
                                  "bicomplex", "d(13)", "cl(3,4)"])
def test_suite_skips_diagonal_properties(name):
    results = {r.name: r for r in run_suite(preset(name), seed=1, cases=20)}
    assert not [r for r in results.values() if r.status == FAIL]
    assert results["engine_equivalence"].status == SKIP
    assert results["sign_formula"].status == PASS


def test_suite_mixed_signature():
    sig = AlgebraSignature((0, -1, 1, 0), -1, "complex")
    results = run_suite(sig, seed=3, cases=20)
    assert not [r for r in results if r.status == FAIL]
    by_name = {r.name: r for r in results}
    assert by_name["multiplier_values"].detail.endswith("zero multipliers")
    assert by_name["multiplier_values"].detail != "0 zero multipliers"
