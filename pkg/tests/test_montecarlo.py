import math

import numpy as np
import pytest
from scipy import stats

from rindler_probe import freefield as ff
from rindler_probe import mirror as mr
from rindler_probe import montecarlo as mc
from rindler_probe import trajectories as tj
from rindler_probe import kernels

SPECTRUM = ff.SourceSpectrum(f0=1.0, eps=0.05)


def test_sample_ensemble_requires_finite_energy():
    with pytest.raises(ValueError):
        mc.sample_ensemble(ff.SourceSpectrum(f0=1.0, eps=0.0), 128, seed=0)
    with pytest.raises(ValueError):
        mc.sample_ensemble(ff.SourceSpectrum(f0=1.0, f1=0.5, eps=0.1), 128, seed=0)


def test_amplitudes_zero_mean():
    ens = mc.sample_ensemble(SPECTRUM, 10_000, seed=5)
    sigma = np.std(ens.amp.real)
    for comp in (ens.amp.real, ens.amp.imag):
        assert abs(np.mean(comp)) <= 3.0 * sigma / math.sqrt(comp.size)


def test_radial_law_is_gamma():
    ens = mc.sample_ensemble(SPECTRUM, 100_000, seed=11)
    kmag = ens.omega / ens.c0
    ks = stats.kstest(kmag, stats.gamma(a=2.0, scale=1.0 / (SPECTRUM.eps * 1.0)).cdf)
    # 1% critical value 1.628/sqrt(n)
    assert ks.statistic <= 1.628 / math.sqrt(kmag.size)


def test_total_power_and_zero_mean():
    target = SPECTRUM.f0 / (4.0 * math.pi**2 * SPECTRUM.eps**2)
    samples = []
    for r in range(300):
        ens = mc.sample_ensemble(SPECTRUM, 4096, mc.realization_key(3, r))
        samples.append(mc.field_at(ens, tj.SpacetimeEvent(0.0, 0.0, 0.0, 0.5)))
    samples = np.array(samples)
    vals = samples**2
    se = np.std(vals) / math.sqrt(vals.size)
    assert abs(np.mean(vals) - target) <= 3.0 * se
    assert abs(np.mean(samples)) <= 3.0 * np.std(samples) / math.sqrt(samples.size)


def test_dirichlet_plane_is_exactly_zero():
    ens = mc.sample_ensemble(SPECTRUM, 512, seed=9, half_space=True)
    vals = mc.field_at(ens, np.array([0.3, -1.2]), np.array([[0.4, -0.2, 0.0], [3.0, 1.0, 0.0]]))
    assert np.all(vals == 0.0)


def test_field_linearity_and_single_wave():
    ens = mc.sample_ensemble(SPECTRUM, 64, seed=21)
    e1 = mc.sample_ensemble(SPECTRUM, 64, seed=22)
    t = np.array([0.4])
    x = np.array([[0.1, 0.2, 0.3]])
    combined = mc.PlaneWaveEnsemble(
        np.vstack([ens.k, e1.k]),
        np.concatenate([ens.omega, e1.omega]),
        np.concatenate([ens.amp, e1.amp]),
        np.concatenate([ens.weights, e1.weights]),
        0,
        False,
        1.0,
    )
    assert mc.field_at(combined, t, x)[0] == pytest.approx(
        mc.field_at(ens, t, x)[0] + mc.field_at(e1, t, x)[0], rel=1e-12
    )
    # single wave with unit amplitude: u = 2 cos(k.x - w t)
    k = np.array([[1.0, 2.0, -0.5]])
    single = mc.PlaneWaveEnsemble(
        k, np.array([np.linalg.norm(k)]), np.array([1.0 + 0.0j]), np.ones(1), 0, False, 1.0
    )
    expected = 2.0 * math.cos(k[0] @ x[0] - single.omega[0] * t[0])
    assert mc.field_at(single, t, x)[0] == pytest.approx(expected, rel=1e-12)


def test_kernel_backends_agree():
    rng = np.random.default_rng(2)
    t = rng.normal(size=100)
    xyz = rng.normal(size=(100, 3))
    k = rng.normal(size=(256, 3))
    om = np.abs(rng.normal(size=256))
    ar, ai = rng.normal(size=256), rng.normal(size=256)
    for hs in (False, True):
        a = kernels.field_sum(t, xyz, k, om, ar, ai, hs)
        b = kernels.field_sum_numpy(t, xyz, k, om, ar, ai, hs)
        assert np.max(np.abs(a - b)) <= 1e-10 * np.max(np.abs(b))


def test_image_mode_cross_terms():
    # fixed wave vector: the conditional covariance is the four-term expansion,
    # two of which pair up because reflection preserves distances
    rng = np.random.default_rng(4)
    k = np.array([0.7, -0.3, 1.1])
    omega = np.linalg.norm(k)
    x1, t1 = np.array([0.2, 0.5, 0.8]), 0.3
    x2, t2 = np.array([-0.4, 0.1, 1.3]), -0.2
    flip = np.array([1.0, 1.0, -1.0])
    x1s, x2s = x1 * flip, x2 * flip
    assert np.linalg.norm(x1s - x2s) == pytest.approx(np.linalg.norm(x1 - x2))
    assert np.linalg.norm(x1 - x2s) == pytest.approx(np.linalg.norm(x1s - x2))
    sigma2 = 0.37

    def mode(x, t):
        return (np.exp(1j * k @ x) - np.exp(1j * k @ (x * flip))) * np.exp(-1j * omega * t)

    analytic = 2.0 * sigma2 * np.real(mode(x1, t1) * np.conj(mode(x2, t2)))
    expansion = (
        2.0
        * sigma2
        * (
            math.cos(k @ (x1 - x2) - omega * (t1 - t2))
            - math.cos(k @ (x1 - x2s) - omega * (t1 - t2))
            - math.cos(k @ (x1s - x2) - omega * (t1 - t2))
            + math.cos(k @ (x1s - x2s) - omega * (t1 - t2))
        )
    )
    assert analytic == pytest.approx(expansion, rel=1e-12)
    # amplitude-draw Monte Carlo over the circular Gaussian amplitude
    draws = (rng.standard_normal(200_000) + 1j * rng.standard_normal(200_000)) * math.sqrt(
        sigma2 / 2.0
    )
    u1 = 2.0 * np.real(draws * mode(x1, t1))
    u2 = 2.0 * np.real(draws * mode(x2, t2))
    assert np.mean(u1 * u2) == pytest.approx(analytic, abs=4.0 * np.std(u1 * u2) / math.sqrt(u1.size))


def test_image_mode_direction_average_gives_sinc_difference():
    # averaging the four-term expansion over the sphere collapses to
    # sinc(k d12) - sinc(k d12s), the image-source covariance structure
    kmag = 2.3
    x1 = np.array([0.2, 0.0, 0.9])
    x2 = np.array([-0.3, 0.4, 0.6])
    flip = np.array([1.0, 1.0, -1.0])
    rng = np.random.default_rng(8)
    g = rng.standard_normal((400_000, 3))
    dirs = g / np.linalg.norm(g, axis=1)[:, None]

    def avg_cos(d):
        return np.mean(np.cos(kmag * dirs @ d))

    lhs = (
        avg_cos(x1 - x2)
        - avg_cos(x1 - x2 * flip)
        - avg_cos(x1 * flip - x2)
        + avg_cos(x1 * flip - x2 * flip)
    )
    rhs = 2.0 * (
        np.sinc(kmag * np.linalg.norm(x1 - x2) / np.pi)
        - np.sinc(kmag * np.linalg.norm(x1 - x2 * flip) / np.pi)
    )
    assert lhs == pytest.approx(rhs, abs=5e-3)


def test_covariance_residual_examples():
    # coincident events: the variance estimator's relative noise is
    # sqrt(2/M) (a chi-square of one Gaussian sample per realization)
    e = tj.SpacetimeEvent(0.0, 0.1, -0.2, 0.7)
    assert mc.covariance_residual(SPECTRUM, 2048, 500, e, e, seed=31) <= 3.5 * math.sqrt(2.0 / 500)
    on_plane = tj.SpacetimeEvent(0.0, 0.4, 0.2, 0.0)
    assert mc.covariance_residual(SPECTRUM, 256, 5, on_plane, on_plane, half_space=True, seed=32) == 0.0
    e1 = tj.SpacetimeEvent(0.0, 0.0, 0.0, 1.0)
    e2 = tj.SpacetimeEvent(0.1, 0.2, 0.0, 0.8)
    assert mc.covariance_residual(SPECTRUM, 4096, 500, e1, e2, seed=33) <= 0.05
    assert mc.covariance_residual(SPECTRUM, 4096, 1500, e1, e2, half_space=True, seed=34) <= 0.05


def test_covariance_translation_rotation_invariance():
    # congruent event pairs share the analytic covariance exactly; both
    # Monte-Carlo estimates agree with it within noise
    dt, sep = 0.3, 0.9
    pair_a = (tj.SpacetimeEvent(0.0, 0.0, 0.0, 0.0), tj.SpacetimeEvent(dt, sep, 0.0, 0.0))
    pair_b = (tj.SpacetimeEvent(5.0, 1.0, 2.0, -3.0), tj.SpacetimeEvent(5.0 + dt, 1.0, 2.0 - sep, -3.0))
    for pair in (pair_a, pair_b):
        assert mc.covariance_residual(SPECTRUM, 2048, 800, *pair, seed=35) <= 0.1


def test_determinism_and_isolation():
    cfg = mc.EstimatorConfig(
        m_realizations=40,
        tau_grid=np.array([0.0]),
        taup_grid=np.linspace(-2.0, 2.0, 17),
        seed=77,
    )
    g1 = mc.estimate_autocorr(SPECTRUM, tj.Rindler(1.0), cfg, 256)
    g2 = mc.estimate_autocorr(SPECTRUM, tj.Rindler(1.0), cfg, 256)
    g3 = mc.estimate_autocorr(SPECTRUM, tj.Rindler(1.0), cfg, 256, threads=4)
    assert np.array_equal(g1.values, g2.values)
    assert np.array_equal(g1.values, g3.values)
    # realization reproducible in isolation through its key
    ens = mc.sample_ensemble(SPECTRUM, 256, mc.realization_key(77, 17))
    again = mc.sample_ensemble(SPECTRUM, 256, mc.realization_key(77, 17))
    assert np.array_equal(ens.k, again.k) and np.array_equal(ens.amp, again.amp)


def test_estimate_autocorr_matches_analytic():
    cfg = mc.EstimatorConfig(
        m_realizations=500,
        tau_grid=np.array([0.0]),
        taup_grid=np.arange(-100, 101) * 0.05,
        seed=42,
    )
    grid = mc.estimate_autocorr(SPECTRUM, tj.Rindler(1.0), cfg, 2048)
    target = ff.rindler_autocorr_regularized(1.0, 1.0, SPECTRUM.eps, 0.0, grid.tau_prime)
    z = (grid.values[0] - target) / grid.stderr[0]
    assert np.mean(np.abs(z) <= 3.0) >= 0.95


def test_stationary_estimate_depends_on_lag_only():
    cfg = mc.EstimatorConfig(
        m_realizations=400,
        tau_grid=np.array([-2.0, 0.0, 2.0]),
        taup_grid=np.linspace(-2.0, 2.0, 21),
        seed=19,
    )
    grid = mc.estimate_autocorr(SPECTRUM, tj.Stationary(), cfg, 1024)
    for i in (1, 2):
        diff = grid.values[i] - grid.values[0]
        se = np.sqrt(grid.stderr[i] ** 2 + grid.stderr[0] ** 2)
        assert np.mean(np.abs(diff) <= 3.0 * se) >= 0.9


def test_mirror_estimate_matches_deformed_autocorr():
    scene = mr.MirrorScene(xi=1.0, xi0=-0.5, alpha=math.pi / 4)
    cfg = mc.EstimatorConfig(
        m_realizations=600,
        tau_grid=np.array([0.0]),
        taup_grid=np.arange(-60, 61) * 0.05,
        seed=57,
    )
    grid = mc.estimate_autocorr(SPECTRUM, None, cfg, 2048, half_space=True, scene=scene)
    target = mr.mirror_autocorr_regularized(scene, 1.0, SPECTRUM.eps, 0.0, grid.tau_prime)
    z = (grid.values[0] - target) / grid.stderr[0]
    assert np.mean(np.abs(z) <= 3.0) >= 0.95


def test_mirror_wigner_dip_structure():
    # near-wall scene: the windowed spectrum estimate reproduces the deformed
    # form W0(1-R) (through the same lags and window) within 3 SE
    from rindler_probe.grids import window_function

    scene = mr.MirrorScene(xi=1.0, xi0=-0.9, alpha=0.0)
    cfg = mc.EstimatorConfig(
        m_realizations=600,
        tau_grid=np.array([0.0]),
        taup_grid=np.arange(-200, 201) * 0.05,
        window="gaussian",
        t_c=2.5,
        seed=2718,
    )
    omegas = np.linspace(0.5, 3.0, 11)
    grid = mc.estimate_wigner(SPECTRUM, None, cfg, 2048, omegas, half_space=True, scene=scene)
    chi = window_function(cfg.window, cfg.t_c)(cfg.taup_grid)
    target = ff.windowed_dft(
        mr.mirror_autocorr_regularized(scene, 1.0, SPECTRUM.eps, 0.0, cfg.taup_grid),
        cfg.taup_grid,
        chi,
        omegas,
    )
    z = (grid.values[0] - target) / grid.stderr[0]
    assert np.mean(np.abs(z) <= 3.0) >= 0.9
    # the dip is real: the deformed spectrum sits well below the free one
    free = ff.windowed_dft(
        ff.rindler_autocorr_regularized(1.0, 1.0, SPECTRUM.eps, 0.0, cfg.taup_grid),
        cfg.taup_grid,
        chi,
        omegas,
    )
    assert np.all(target < 0.6 * free)


def test_trajectory_must_stay_in_half_space():
    cfg = mc.EstimatorConfig(
        m_realizations=2,
        tau_grid=np.array([0.0]),
        taup_grid=np.linspace(-1.0, 1.0, 5),
        seed=1,
    )
    with pytest.raises(ValueError):
        mc.estimate_autocorr(SPECTRUM, tj.Stationary((0.0, 0.0, -1.0)), cfg, 64, half_space=True)


def test_estimate_wigner_shapes_and_window_tag():
    cfg = mc.EstimatorConfig(
        m_realizations=50,
        tau_grid=np.array([0.0, 1.0]),
        taup_grid=np.arange(-40, 41) * 0.1,
        window="gaussian",
        t_c=1.5,
        seed=3,
    )
    omegas = np.linspace(0.5, 2.5, 9)
    grid = mc.estimate_wigner(SPECTRUM, tj.Rindler(1.0), cfg, 512, omegas)
    assert grid.values.shape == (2, 9)
    assert grid.stderr.shape == (2, 9)
    assert grid.window == "gaussian:1.5"
    assert np.allclose(grid.nu, omegas)
