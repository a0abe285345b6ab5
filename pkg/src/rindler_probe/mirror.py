"""Dirichlet half-space obstacle: image geometry, deformed spectra, corrections.

The observer rides the tilted hyperbolic world-line of ObliqueRindler in
z > 0 with a perfect mirror at z = 0.  The obstacle enters every second
moment through the image-source difference, and the perturbed lag covariance
collapses to a quadratic in cosh(eta'/2) with coefficients

    A = sin^2(alpha)
    B(eta) = -2 alpha0 cos(alpha) cosh(eta)
    C(eta) = -1 - alpha0^2 - cos^2(alpha) sinh^2(eta),   alpha0 = xi0/xi,

which is exactly the admissible domain of the Psi integral in core_math.
The spectral correction R(eta, nu) is Psi evaluated at 2 nu, normalized by
the free Planck spectrum; its general and normal-incidence closed forms are
implemented here in vectorized form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core_math import argcosh
from .freefield import regularized_pair_term, rindler_wigner
from .grids import WignerGrid
from .trajectories import ObliqueRindler

__all__ = [
    "MirrorScene",
    "AbcCoefficients",
    "abc_coefficients",
    "image_point",
    "mirror_autocorr",
    "mirror_autocorr_regularized",
    "correction_R",
    "correction_grid",
    "mirror_wigner",
    "near_wall_limit",
    "stationary_mirror_spectrum",
    "scene_to_dict",
    "scene_from_dict",
]

ALPHA_SWITCH = 1e-4  # below this |alpha| the normal-incidence forms take over


@dataclass(frozen=True)
class MirrorScene:
    """Obstacle geometry: tilt alpha, offset xi0, acceleration scale xi."""

    xi: float
    xi0: float
    alpha: float
    c0: float = 1.0

    def __post_init__(self):
        if self.xi <= 0:
            raise ValueError("scene: xi must be > 0")
        if self.c0 <= 0:
            raise ValueError("scene: c0 must be > 0")
        if not -math.pi / 2 < self.alpha < math.pi / 2:
            raise ValueError("scene: alpha must be in (-pi/2, pi/2)")
        if not self.xi0 > -self.xi * math.cos(self.alpha):
            raise ValueError("scene: requires xi0 > -xi cos(alpha) (trajectory stays in z > 0)")

    @property
    def alpha0(self) -> float:
        return self.xi0 / self.xi

    @property
    def degenerate(self) -> bool:
        """True for the undetectable scene alpha = 0, xi0 = 0 (correction ~ delta(nu))."""
        return abs(self.alpha) < 1e-12 and abs(self.alpha0) < 1e-12

    def trajectory(self) -> ObliqueRindler:
        return ObliqueRindler(xi=self.xi, xi0=self.xi0, alpha=self.alpha)


@dataclass(frozen=True)
class AbcCoefficients:
    A: float
    B: float
    C: float


def _abc_arrays(scene: MirrorScene, eta):
    eta = np.asarray(eta, dtype=float)
    a0 = scene.alpha0
    ca = math.cos(scene.alpha)
    a = math.sin(scene.alpha) ** 2
    b = -2.0 * a0 * ca * np.cosh(eta)
    c = -1.0 - a0**2 - ca**2 * np.sinh(eta) ** 2
    return a, b, c


def abc_coefficients(scene: MirrorScene, eta: float) -> AbcCoefficients:
    """Quadratic coefficients at dimensionless time eta, admissibility-checked.

    A + C + |B| = -(cos(alpha) cosh(eta) - |alpha0|)^2 is <= 0 for every
    valid scene; it reaches 0 exactly where cosh(eta) = |alpha0|/cos(alpha)
    (possible whenever |alpha0| >= cos(alpha)), where the correction formulas
    take their removable limits.  A strictly positive value can only mean an
    internal error and raises.
    """
    a, b, c = _abc_arrays(scene, eta)
    gap = a + c + abs(float(b))
    if gap > 1e-12:
        raise RuntimeError(f"admissibility violated: A + C + |B| = {gap} > 0")
    return AbcCoefficients(float(a), float(b), float(c))


def image_point(scene: MirrorScene, tau: float) -> np.ndarray:
    """Mirror image of the observer position across the plane z = 0.

    (xi cosh(c0 tau/xi) sin(alpha), 0, -xi0 - xi cosh(c0 tau/xi) cos(alpha)).
    """
    r = scene.xi * math.cosh(scene.c0 * tau / scene.xi)
    return np.array([r * math.sin(scene.alpha), 0.0, -scene.xi0 - r * math.cos(scene.alpha)])


def mirror_autocorr(scene: MirrorScene, f0: float, tau, taup):
    """Two-term closed-form lag covariance in front of the mirror.

    Free term -k/sinh^2(eta'/2) plus image term k/(A cosh^2(eta'/2)
    + B cosh(eta'/2) + C), k = c0^2 f0/(16 pi^2 xi^2).  The image term has
    simple poles at isolated real lags (principal-value structure); values
    there are +-inf.
    """
    tau = np.asarray(tau, dtype=float)
    taup = np.asarray(taup, dtype=float)
    if np.any(taup == 0.0):
        raise ValueError("zero-lag rejected: the unregularized autocorrelation diverges at tau' = 0")
    eta = scene.c0 * tau / scene.xi
    etap = scene.c0 * taup / scene.xi
    a, b, c = _abc_arrays(scene, eta)
    k = scene.c0**2 * f0 / (16.0 * math.pi**2 * scene.xi**2)
    y = np.cosh(etap / 2.0)
    with np.errstate(divide="ignore"):
        out = -k / np.sinh(etap / 2.0) ** 2 + k / (a * y**2 + b * y + c)
    if out.ndim == 0:
        return float(out)
    return out


def mirror_autocorr_regularized(scene: MirrorScene, f0: float, eps: float, tau, taup):
    """Finite-energy mirror autocorrelation: free pair term minus image pair term."""
    tau = np.asarray(tau, dtype=float)
    taup = np.asarray(taup, dtype=float)
    xi, c0 = scene.xi, scene.c0
    eta1 = c0 * (tau + taup / 2.0) / xi
    eta2 = c0 * (tau - taup / 2.0) / xi
    h1 = np.cosh(eta1)
    h2 = np.cosh(eta2)
    dt = (xi / c0) * (np.sinh(eta1) - np.sinh(eta2))
    rho_free = (xi / c0) * np.abs(h1 - h2)  # the rigid tilt preserves |dX| = xi |h1 - h2|
    sa, ca = math.sin(scene.alpha), math.cos(scene.alpha)
    dx = xi * sa * (h1 - h2)
    dz = -2.0 * scene.xi0 - xi * ca * (h1 + h2)
    rho_im = np.sqrt(dx**2 + dz**2) / c0
    return regularized_pair_term(rho_free, dt, eps, f0) - regularized_pair_term(rho_im, dt, eps, f0)


def _h_factor(nu):
    # 1/(2 cosh^2(pi nu)) == tanh(pi nu)/sinh(2 pi nu); 1 - h == tanh(pi nu)/tanh(2 pi nu)
    return 1.0 / (2.0 * np.cosh(np.pi * nu) ** 2)


def _t_ratio(nu, x):
    # sin(2 nu x) / (nu sinh x), removable at nu = 0 (-> 2x/sinh x) and x = 0 (-> 2)
    x = np.asarray(x, dtype=float)
    small = x < 1e-8
    x_safe = np.where(small, 1.0, x)
    lead = np.where(small, 1.0 - x * x / 6.0, x / np.sinh(x_safe))
    return 2.0 * lead * np.sinc(2.0 * nu * x / np.pi)


def _correction_general(a, b, c, nu):
    """Oblique-incidence correction from the quadratic coefficients (vectorized)."""
    b = np.asarray(b, dtype=float)
    c = np.asarray(c, dtype=float)
    nu = np.asarray(nu, dtype=float)
    delta = b * b - 4.0 * a * c
    sq = np.sqrt(delta)
    # large-magnitude root by the non-cancelling branch, the other by Vieta
    neg_b = b < 0
    root_big = np.where(neg_b, (-b + sq) / (2.0 * a), (-b - sq) / (2.0 * a))
    root_other = c / (a * root_big)
    c_plus = np.where(neg_b, root_big, root_other)
    c_minus = np.where(neg_b, root_other, root_big)
    x_plus = argcosh(c_plus)
    x_minus = argcosh(-c_minus)
    h = _h_factor(nu)
    return ((1.0 - h) * _t_ratio(nu, x_plus) + h * _t_ratio(nu, x_minus)) / sq


def _correction_normal(alpha0, eta, nu):
    """Normal-incidence correction (the two-branch closed form), vectorized."""
    eta = np.asarray(eta, dtype=float)
    nu = np.asarray(nu, dtype=float)
    ch = np.cosh(eta)
    aa = abs(alpha0)
    q = np.abs(np.log(ch / aa))
    s = np.abs(ch * ch - alpha0 * alpha0)
    h = _h_factor(nu)
    pref = (1.0 - h) if alpha0 < 0 else h
    # sin(2 nu q)/(nu s) with the grazing degeneracy q, s -> 0 (q/s -> 1/(2 alpha0^2))
    tiny = s < 1e-12 * (ch * ch + alpha0 * alpha0)
    s_safe = np.where(tiny, 1.0, s)
    ratio = np.where(tiny, 1.0 / alpha0**2, 2.0 * q / s_safe)
    return pref * ratio * np.sinc(2.0 * nu * q / np.pi)


def correction_R(scene: MirrorScene, eta, nu):
    """Relative deformation R(eta, nu) of the Planck spectrum by the mirror.

    Even in eta and in nu, and invariant under alpha -> -alpha (the
    localization sign ambiguity).  The degenerate scene alpha = alpha0 = 0
    contributes only at nu = 0 and returns 0 here (see MirrorScene.degenerate).
    Broadcasts over eta and nu.
    """
    eta = np.abs(np.asarray(eta, dtype=float))
    nu = np.abs(np.asarray(nu, dtype=float))
    eta, nu = np.broadcast_arrays(eta, nu)
    if abs(scene.alpha) >= ALPHA_SWITCH:
        a, b, c = _abc_arrays(scene, eta)
        out = _correction_general(a, b, c, nu)
    elif abs(scene.alpha0) < 1e-12:
        out = np.zeros_like(np.asarray(eta, dtype=float))
    else:
        out = _correction_normal(scene.alpha0, eta, nu)
    if out.ndim == 0:
        return float(out)
    return out


def correction_grid(scene: MirrorScene, eta, nu) -> WignerGrid:
    """R sampled on the (eta, nu) lattice as a correction-kind grid."""
    eta = np.asarray(eta, dtype=float)
    nu = np.asarray(nu, dtype=float)
    values = correction_R(scene, eta[:, None], nu[None, :])
    return WignerGrid(eta, nu, values, window="analytic", kind="correction")


def mirror_wigner(scene: MirrorScene, f0: float, tau, omega):
    """Deformed Planck spectrum W0(omega) (1 - R(c0 tau/xi, xi omega/c0)).

    Can go locally negative: R exceeds 1 for some near-wall scenes.
    """
    tau = np.asarray(tau, dtype=float)
    omega = np.asarray(omega, dtype=float)
    w0 = rindler_wigner(scene.xi, f0, omega, scene.c0)
    r = correction_R(scene, scene.c0 * tau / scene.xi, scene.xi * omega / scene.c0)
    out = w0 * (1.0 - r)
    if np.ndim(out) == 0:
        return float(out)
    return out


def near_wall_limit(alpha: float, nu):
    """Asymptotic R at closest approach with the observer grazing the wall.

    1 - 1/(2 cosh^2 pi nu) at normal incidence; the oblique form keeps a
    tilt-dependent oscillatory factor.
    """
    if not -math.pi / 2 < alpha < math.pi / 2:
        raise ValueError("alpha must be in (-pi/2, pi/2)")
    nu = np.abs(np.asarray(nu, dtype=float))
    h = _h_factor(nu)
    if abs(alpha) < 1e-12:
        out = 1.0 - h
    else:
        t2 = math.tan(alpha) ** 2
        x = argcosh(1.0 + 2.0 / t2)
        denom = 4.0 * math.sqrt(1.0 / t2 + 1.0 / t2**2)
        osc = (2.0 * x / denom) * np.sinc(2.0 * nu * x / np.pi)
        out = 1.0 - h * (1.0 - osc)
    if out.ndim == 0:
        return float(out)
    return out


def stationary_mirror_spectrum(d: float, f0: float, omega, c0: float = 1.0):
    """(f0 |omega|/4pi)(1 - sinc(2 omega d / c0)) for an observer at distance d."""
    if d <= 0:
        raise ValueError("distance d must be > 0")
    omega = np.abs(np.asarray(omega, dtype=float))
    out = f0 * omega / (4.0 * math.pi) * (1.0 - np.sinc(2.0 * omega * d / c0 / math.pi))
    if out.ndim == 0:
        return float(out)
    return out


def scene_to_dict(scene: MirrorScene) -> dict:
    return {"xi": scene.xi, "xi0": scene.xi0, "alpha": scene.alpha, "c0": scene.c0}


def scene_from_dict(doc: dict) -> MirrorScene:
    allowed = {"xi", "xi0", "alpha", "c0"}
    unknown = set(doc) - allowed
    if unknown:
        raise ValueError(f"scene object: unknown keys {sorted(unknown)}")
    missing = {"xi", "xi0", "alpha"} - set(doc)
    if missing:
        raise ValueError(f"scene object: missing keys {sorted(missing)}")
    return MirrorScene(**doc)
