import math

import numpy as np
import pytest

from rindler_probe import localize as lc
from rindler_probe import mirror as mr

ETA = np.linspace(-3.0, 3.0, 25)
NU = np.linspace(0.2, 4.0, 40)


def test_objective_zero_at_truth():
    scene = mr.MirrorScene(xi=1.0, xi0=-0.5, alpha=math.pi / 4)
    r_obs = mr.correction_grid(scene, ETA, NU)
    assert lc.objective(r_obs, math.pi / 4, -0.5) == 0.0


def test_objective_sign_symmetry_exact():
    scene = mr.MirrorScene(xi=1.0, xi0=-0.5, alpha=math.pi / 4)
    r_obs = mr.correction_grid(scene, ETA, NU)
    assert lc.objective(r_obs, 0.31, -0.2) == lc.objective(r_obs, -0.31, -0.2)


def test_objective_positive_off_orbit():
    scene = mr.MirrorScene(xi=1.0, xi0=-0.5, alpha=math.pi / 4)
    r_obs = mr.correction_grid(scene, ETA, NU)
    assert lc.objective(r_obs, math.pi / 4 + 0.2, -0.3) > 1e-4


def test_objective_rejects_inadmissible():
    scene = mr.MirrorScene(xi=1.0, xi0=-0.5, alpha=0.0)
    r_obs = mr.correction_grid(scene, ETA, NU)
    with pytest.raises(ValueError):
        lc.objective(r_obs, 0.0, -1.2)
    with pytest.raises(ValueError):
        lc.objective(r_obs, 1.6, 0.0)


def test_fit_scene_noiseless_recovery():
    scene = mr.MirrorScene(xi=1.0, xi0=-0.5, alpha=math.pi / 4)
    res = lc.fit_scene(mr.correction_grid(scene, ETA, NU))
    assert abs(res.alpha_hat - math.pi / 4) <= 1e-3
    assert abs(res.alpha0_hat + 0.5) <= 1e-3
    assert res.alpha_hat >= 0.0
    assert res.evaluations == len(res.trace)
    assert not res.no_obstacle


def test_fit_scene_trace_monotone_refinement():
    scene = mr.MirrorScene(xi=1.0, xi0=0.3, alpha=0.9)
    res = lc.fit_scene(mr.correction_grid(scene, ETA, NU))
    best = np.minimum.accumulate([f for (_, _, f) in res.trace])
    assert np.all(np.diff(best) <= 0)
    assert res.residual == pytest.approx(best[-1], abs=1e-30)


def test_fit_scene_budget_flag():
    scene = mr.MirrorScene(xi=1.0, xi0=-0.5, alpha=math.pi / 4)
    cfg = lc.FitConfig(n_alpha=10, n_alpha0=10, max_evaluations=120, refinement_tol=0.0)
    res = lc.fit_scene(mr.correction_grid(scene, ETA, NU), cfg=cfg)
    assert res.budget_exhausted


def test_fit_scene_zero_grid_flags_no_obstacle():
    grid = mr.correction_grid(mr.MirrorScene(xi=1.0, xi0=5.0, alpha=0.0), ETA, NU)
    grid.values = np.zeros_like(grid.values)
    res = lc.fit_scene(grid)
    assert res.alpha0_hat >= 0.98 * lc.FitConfig().alpha0_max
    assert res.no_obstacle


def test_fit_scene_inverse_variance_weights():
    scene = mr.MirrorScene(xi=1.0, xi0=-0.5, alpha=math.pi / 4)
    grid = mr.correction_grid(scene, ETA, NU)
    grid.stderr = np.full_like(grid.values, 0.01)
    res = lc.fit_scene(grid, cfg=lc.FitConfig(weight_mode="inverse-variance"))
    assert abs(res.alpha_hat - math.pi / 4) <= 1e-3


def test_result_serialization():
    scene = mr.MirrorScene(xi=1.0, xi0=2.0, alpha=1.2)
    res = lc.fit_scene(mr.correction_grid(scene, ETA, NU))
    doc = res.to_dict()
    assert set(doc) >= {"alpha_hat", "alpha0_hat", "residual", "evaluations", "trace"}
    assert len(doc["trace"]) == res.evaluations


def test_fit_distance_recovery_and_scaling():
    omega = np.linspace(0.1, 20.0, 400)
    res = lc.fit_distance_stationary(omega, mr.stationary_mirror_spectrum(1.7, 1.0, omega), 1.0)
    assert abs(res.d_hat - 1.7) / 1.7 <= 1e-3
    res2 = lc.fit_distance_stationary(omega, mr.stationary_mirror_spectrum(3.4, 1.0, omega), 1.0)
    assert res2.d_hat == pytest.approx(2.0 * res.d_hat, rel=1e-6)


def test_fit_distance_flat_spectrum_flagged():
    omega = np.linspace(0.1, 20.0, 400)
    res = lc.fit_distance_stationary(omega, omega / (4 * math.pi), 1.0)
    assert res.at_boundary
    assert res.no_obstacle


def test_fit_distance_band_too_narrow():
    # a huge sampling gap starves the resolvable-distance range
    omega = np.array([0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 20.0])
    with pytest.raises(ValueError):
        lc.fit_distance_stationary(omega, np.ones(omega.size), 1.0)
    with pytest.raises(ValueError):
        lc.fit_distance_stationary(omega[:4], np.ones(4), 1.0)
