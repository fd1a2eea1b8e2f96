import math
import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from capitulation import _kernels_py as py
from capitulation import kernels
from capitulation.quadfield import fundamental_discriminant, is_fundamental

try:
    from capitulation import _ckernels as cy
except ImportError:  # extension not built
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

NEG = [D for D in range(-3, -3000, -1) if is_fundamental(D)]
POS = [fundamental_discriminant(m) for m in range(2, 400)
       if all(m % (q * q) for q in range(2, math.isqrt(m) + 1))]


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


def test_python_kernels_agree_with_each_other():
    for D in NEG:
        assert py.count_reduced_forms(D) == py.class_number_analytic(D)


@needs_cython
def test_count_and_analytic_parity():
    for D in NEG:
        assert cy.count_reduced_forms(D) == py.count_reduced_forms(D)
        assert cy.class_number_analytic(D) == py.class_number_analytic(D)


@needs_cython
def test_cycles_and_log_sin_parity():
    for D in POS:
        assert cy.count_form_cycles(D) == py.count_form_cycles(D)
        assert cy.real_log_sin_sum(D) == pytest.approx(py.real_log_sin_sum(D), rel=1e-9, abs=1e-9)


@needs_cython
@given(st.integers(3, 200000))
@settings(max_examples=50, deadline=None)
def test_character_table_parity(n):
    D = -n
    if not is_fundamental(D):
        return
    assert list(cy.character_table(D, 200)) == list(py.character_table(D, 200))


def test_pure_python_switch():
    code = "from capitulation import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, CAPITULATION_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True)
    assert out.stdout.strip() == "python"


@needs_cython
def test_benchmark_script_runs(capsys):
    sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "benchmarks"))
    import bench_kernels

    assert bench_kernels.main(["--limit", "2000", "--repeat", "1"]) == 0
    assert "speedup" in capsys.readouterr().out
