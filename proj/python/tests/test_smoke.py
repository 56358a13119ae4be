import math

import numpy as np
import pytest

import interp_lab as il


def l1_linf(dim):
    return il.Couple(il.WeightedSpace.lp(dim, 1.0), il.WeightedSpace.lp(dim, math.inf))


def test_norms():
    s = il.WeightedSpace(2.0, np.array([4.0, 1.0]))
    assert s.norm(np.array([1.0, 1.0])) == pytest.approx(math.sqrt(5.0))
    assert il.calderon_exponent(0.5, 1.0, math.inf) == pytest.approx(2.0)


def test_closed_form_is_l2_at_half():
    x = np.array([3.0, 4.0 + 0j])
    assert il.closed_form_norm(l1_linf(2), 0.5, x) == pytest.approx(5.0)


def test_k_functional_level_formula():
    # for (l1, l_inf) on C^1, K(t, x) = min(1, t) |x|
    c = l1_linf(1)
    for t in (0.1, 1.0, 5.0):
        r = il.k_functional(c, np.array([2.0 + 0j]), t)
        assert r["value"] == pytest.approx(2.0 * min(1.0, t), rel=1e-6)
        assert np.allclose(r["part0"] + r["part1"], [2.0])


def test_numeric_bracket():
    c = il.Couple(il.WeightedSpace(2.0, np.array([1.0, 3.0])), il.WeightedSpace(2.0, np.array([2.0, 0.5])))
    r = il.interpolated_norm(c, 0.4, np.array([1.0, 0.5 - 1j]))
    assert r["lower"] <= r["closed_form"] * (1 + 1e-9)
    assert r["upper"] <= r["closed_form"] * 1.05


def test_fourier_round_trip():
    rng = np.random.default_rng(0)
    f = rng.normal(size=(2, 32)) + 1j * rng.normal(size=(2, 32))
    c = il.fourier_coefficients(f)
    assert np.allclose(c[:, 16], f.mean(axis=1))
    assert np.allclose(il.synthesize(c), f)


def test_suites():
    names = [n for n, _ in il.list_suites()]
    assert "parseval" in names and len(names) >= 13
    rep = il.run_suite({"version": 1, "suite": "radius-bound", "seed": 1, "params": {"instances": 5}})
    assert all(c["status"] != "fail" for c in rep["checks"])
    with pytest.raises(il.ConfigError):
        il.run_suite({"version": 1, "suite": "parseval", "seed": 1, "params": {"bogus": 1}})
