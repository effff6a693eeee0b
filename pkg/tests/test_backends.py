import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aeqts import _backend
from aeqts import _kernels_numpy as knp
from aeqts.instance import generate_instance
from aeqts.rng import SplitMix64
from aeqts.solver import SolverConfig, run

knb = pytest.importorskip("aeqts._kernels_numba")


@given(st.integers(1, 40), st.integers(1, 12), st.integers(0, 2**64 - 1))
@settings(max_examples=50, deadline=None)
def test_measure_and_repair_agree(k, n, seed):
    inst = generate_instance("II", k, seed)
    beta = np.sqrt(np.random.default_rng(seed % 1000).uniform(0, 1, k))
    s1, s2 = SplitMix64(seed), SplitMix64(seed)
    b1, b2 = knb.measure(beta, n, s1.state), knp.measure(beta, n, s2.state)
    assert np.array_equal(b1, b2)
    r1 = knb.repair(b1, inst.weights, inst.profits, inst.budget, s1.state)
    r2 = knp.repair(b2, inst.weights, inst.profits, inst.budget, s2.state)
    assert np.array_equal(b1, b2)
    assert all(np.array_equal(x, y) for x, y in zip(r1, r2))
    assert s1.position == s2.position


@given(st.integers(1, 30), st.integers(1, 5), st.integers(0, 10_000))
@settings(max_examples=50, deadline=None)
def test_update_agrees(k, pairs, seed):
    rng = np.random.default_rng(seed)
    phi = rng.uniform(0, 2 * np.pi, k)
    best = rng.integers(0, 2, (pairs, k)).astype(np.uint8)
    worst = rng.integers(0, 2, (pairs, k)).astype(np.uint8)
    cos_tab = np.cos(0.1 / np.arange(1, pairs + 1))
    sin_tab = np.sin(0.1 / np.arange(1, pairs + 1))
    a1, b1 = np.cos(phi), np.sin(phi)
    a2, b2 = a1.copy(), b1.copy()
    knb.update(a1, b1, best, worst, cos_tab, sin_tab)
    knp.update(a2, b2, best, worst, cos_tab, sin_tab)
    assert np.array_equal(a1, a2) and np.array_equal(b1, b2)


@pytest.mark.parametrize("case,pair_count", [("I", 5), ("II", 1), ("III", 3)])
def test_full_runs_agree(case, pair_count):
    inst = generate_instance(case, 80, 6)
    cfg = SolverConfig(pair_count=pair_count, max_iter=200, seed=31)
    with _backend.use_backend("numba"):
        a = run(cfg, inst)
    with _backend.use_backend("numpy"):
        b = run(cfg, inst)
    assert np.array_equal(a.curve, b.curve)
    assert np.array_equal(a.best_bits, b.best_bits)
    assert a.last_update_iter == b.last_update_iter


def test_env_flag_selects_numpy():
    code = "from aeqts import _backend; print(_backend.active())"
    env = dict(os.environ, AEQTS_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numpy"
    env["AEQTS_BACKEND"] = "numba"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "numba"


def test_unknown_backend():
    with pytest.raises(ValueError):
        _backend.set_backend("cuda")
