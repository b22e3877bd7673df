"""Numeric kernels, compiled and plain paths.

Each hot function is compared against its pure-Python fallback
(``fn.py_func``) so both code paths stay in lockstep.  The rotation
kernel must agree bitwise; the continued fraction may differ by a few
ulps because of fused multiply-adds in compiled code.
"""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

from pcageom._jit import NUMBA_ENABLED
from pcageom.kernels import (
    DIST_COSINE,
    DIST_L1,
    DIST_L2,
    DIST_LINF,
    assign_labels,
    betainc_reg,
    jacobi_sweeps,
    offdiag_norm,
    point_distance,
)


# -- distances ------------------------------------------------------------


def test_distance_codes_are_distinct():
    assert sorted({DIST_L1, DIST_L2, DIST_LINF, DIST_COSINE}) == [0, 1, 2, 3]


def test_point_distance_semantics():
    x = np.array([1.0, -2.0, 3.0])
    c = np.array([0.5, 1.0, -1.0])
    d = x - c
    assert point_distance(x, c, DIST_L1) == pytest.approx(np.abs(d).sum(), abs=1e-15)
    # the l2 code returns the squared distance, not its root
    assert point_distance(x, c, DIST_L2) == pytest.approx(float(d @ d), abs=1e-15)
    assert point_distance(x, c, DIST_LINF) == pytest.approx(np.abs(d).max(), abs=1e-15)
    cos = float(x @ c) / (np.linalg.norm(x) * np.linalg.norm(c))
    assert point_distance(x, c, DIST_COSINE) == pytest.approx(1.0 - cos, abs=1e-12)


def test_cosine_distance_edge_cases():
    z = np.zeros(2)
    assert point_distance(z, np.array([1.0, 0.0]), DIST_COSINE) == 1.0
    assert point_distance(np.array([1.0, 0.0]), z, DIST_COSINE) == 1.0
    # parallel vectors can round 1 - cos slightly negative; it is clamped
    x = np.array([0.1, 0.2, 0.3])
    assert point_distance(x, 7.0 * x, DIST_COSINE) >= 0.0


def test_assign_labels_tie_goes_to_lowest_index():
    points = np.array([[0.5, 0.0]])
    centroids = np.array([[0.0, 0.0], [1.0, 0.0]])
    labels = np.zeros(1, dtype=np.int64)
    total = assign_labels(points, centroids, DIST_L2, labels)
    assert labels[0] == 0
    assert total == pytest.approx(0.25, abs=1e-15)


def test_assign_labels_matches_bruteforce():
    rng = np.random.default_rng(14)
    points = rng.standard_normal((50, 3))
    centroids = rng.standard_normal((4, 3))
    for code in (DIST_L1, DIST_L2, DIST_LINF, DIST_COSINE):
        labels = np.zeros(50, dtype=np.int64)
        total = assign_labels(points, centroids, code, labels)
        want = [
            int(np.argmin([point_distance(p, c, code) for c in centroids])) for p in points
        ]
        assert labels.tolist() == want
        cost = sum(point_distance(points[i], centroids[labels[i]], code) for i in range(50))
        assert total == pytest.approx(cost, abs=1e-12)


# -- off-diagonal norm ----------------------------------------------------


def test_offdiag_norm_direct():
    a = np.array([[1.0, 2.0, -3.0], [2.0, 5.0, 4.0], [-3.0, 4.0, 9.0]])
    want = math.sqrt(2 * (4.0 + 9.0 + 16.0))
    assert offdiag_norm(a) == pytest.approx(want, rel=1e-15)


def test_offdiag_norm_survives_huge_diagonal():
    # a difference of total norms would cancel these tiny entries away
    a = np.diag(np.full(4, 1e8))
    a[0, 1] = a[1, 0] = 1e-8
    assert offdiag_norm(a) == pytest.approx(math.sqrt(2) * 1e-8, rel=1e-12)


# -- jacobi sweeps ----------------------------------------------------------


def test_jacobi_sweeps_decomposes():
    rng = np.random.default_rng(21)
    m = rng.standard_normal((6, 6))
    a = 0.5 * (m + m.T)
    work = a.copy()
    v = np.eye(6)
    target = 1e-12 * np.linalg.norm(a, "fro")
    sweeps, off = jacobi_sweeps(work, v, target, 100)
    assert 0 < sweeps <= 100
    assert off <= target
    assert offdiag_norm(work) <= target
    w = np.diag(work)
    assert np.abs(v @ np.diag(w) @ v.T - a).max() < 1e-12


def test_jacobi_sweeps_noop_on_diagonal():
    work = np.diag([3.0, 1.0, 2.0])
    v = np.eye(3)
    assert jacobi_sweeps(work, v, 1e-12, 100) == (0, 0.0)
    np.testing.assert_array_equal(v, np.eye(3))


# -- regularized incomplete beta -------------------------------------------


def test_betainc_reg_closed_forms():
    for x in np.linspace(0.0, 1.0, 21):
        assert betainc_reg(1.0, 1.0, float(x)) == pytest.approx(x, abs=1e-12)
        want = 2.0 / math.pi * math.asin(math.sqrt(x))
        assert betainc_reg(0.5, 0.5, float(x)) == pytest.approx(want, abs=1e-12)


def test_betainc_reg_endpoints_and_symmetry():
    assert betainc_reg(74.0, 0.5, 0.0) == 0.0
    assert betainc_reg(74.0, 0.5, 1.0) == 1.0
    for x in (0.001, 0.25, 0.7, 0.999):
        a, b = 3.5, 0.5
        assert betainc_reg(a, b, x) == pytest.approx(1.0 - betainc_reg(b, a, 1.0 - x), abs=1e-12)


def test_betainc_reg_monotone_in_x():
    xs = np.linspace(0.0, 1.0, 200)
    vals = [betainc_reg(74.0, 0.5, float(x)) for x in xs]
    assert all(u <= v + 1e-15 for u, v in zip(vals, vals[1:]))


# -- compiled path vs fallback ----------------------------------------------


@pytest.mark.skipif(not NUMBA_ENABLED, reason="compiled path disabled or unavailable")
def test_compiled_jacobi_matches_fallback_bitwise():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = int(rng.integers(2, 8))
        m = rng.standard_normal((n, n))
        a = 0.5 * (m + m.T)
        target = 1e-12 * np.linalg.norm(a, "fro")
        a1, v1 = a.copy(), np.eye(n)
        a2, v2 = a.copy(), np.eye(n)
        s1 = jacobi_sweeps(a1, v1, target, 100)
        s2 = jacobi_sweeps.py_func(a2, v2, target, 100)
        assert s1 == s2
        assert np.array_equal(a1, a2) and np.array_equal(v1, v2)


@pytest.mark.skipif(not NUMBA_ENABLED, reason="compiled path disabled or unavailable")
def test_compiled_betainc_matches_fallback():
    for x in np.linspace(1e-9, 1.0 - 1e-9, 300):
        got = betainc_reg(74.0, 0.5, float(x))
        ref = betainc_reg.py_func(74.0, 0.5, float(x))
        assert got == pytest.approx(ref, abs=1e-13)


@pytest.mark.skipif(not NUMBA_ENABLED, reason="compiled path disabled or unavailable")
def test_compiled_assign_matches_fallback_bitwise():
    rng = np.random.default_rng(15)
    points = rng.standard_normal((100, 4))
    centroids = rng.standard_normal((5, 4))
    for code in (DIST_L1, DIST_L2, DIST_LINF, DIST_COSINE):
        l1 = np.zeros(100, dtype=np.int64)
        l2 = np.zeros(100, dtype=np.int64)
        t1 = assign_labels(points, centroids, code, l1)
        t2 = assign_labels.py_func(points, centroids, code, l2)
        assert t1 == t2
        assert np.array_equal(l1, l2)


def test_disable_flag_forces_plain_path():
    code = (
        "from pcageom._jit import NUMBA_ENABLED; "
        "print(NUMBA_ENABLED); "
        "import numpy as np; "
        "from pcageom.kernels import jacobi_sweeps; "
        "a = np.array([[2.0, 1.0], [1.0, 2.0]]); v = np.eye(2); "
        "jacobi_sweeps(a, v, 1e-12, 100); "
        "print(abs(np.diag(a).sum() - 4.0) < 1e-12)"
    )
    env = dict(os.environ, PCAGEOM_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True
    )
    assert out.stdout.split() == ["False", "True"]
