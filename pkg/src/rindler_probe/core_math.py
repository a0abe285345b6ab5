"""Shared analytic kernels.

Closed-form evaluation of the oscillatory integral

    Psi(v; a, b, c) = PV int_R exp(i v s) / (a cosh^2 s + b cosh s + c) ds

on the admissible domain a in [0,1), c <= -1, a + c + |b| < 0, together with
an independent principal-value quadrature oracle, the 3-D homogeneous
Green's function, and a randomized surface-quadrature check of the
Helmholtz-Kirchhoff identity.

For a > 0 (and for a = 0, b > 0) the denominator has simple real roots at
+-argcosh of the positive root of the quadratic in cosh(s); both the closed
forms and the oracle treat the integral as a principal value there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy.integrate import quad

__all__ = [
    "QuadratureError",
    "PsiParams",
    "PsiResult",
    "QuadratureConfig",
    "sinc",
    "argcosh",
    "psi_closed",
    "psi_quadrature",
    "psi_quadrature_full",
    "green_hom",
    "hk_surface_quadrature",
    "hk_residual",
]

# Case-dispatch thresholds: below these, a (resp. b) is treated as exactly 0.
A_ZERO = 1e-10
B_ZERO = 1e-10
# Below this |v| the 0/0 ratios sin(vx)/tanh(pi v) etc. switch to series.
V_SERIES = 1e-6


class QuadratureError(RuntimeError):
    """Adaptive quadrature failed to converge within its budget."""


def sinc(x):
    """sin(x)/x with the removable singularity at 0 filled.

    Even in x, bounded by 1 in modulus.  Accepts scalars or arrays.
    """
    x = np.asarray(x, dtype=float)
    out = np.sinc(x / np.pi)
    if out.ndim == 0:
        return float(out)
    return out


def argcosh(x):
    """Inverse hyperbolic cosine via log(x + sqrt((x-1)(x+1))).

    Arguments that round slightly below 1 are clamped to 1 instead of
    producing NaN.
    """
    x = np.maximum(np.asarray(x, dtype=float), 1.0)
    out = np.log(x + np.sqrt((x - 1.0) * (x + 1.0)))
    if out.ndim == 0:
        return float(out)
    return out


@dataclass(frozen=True)
class PsiParams:
    """Parameters (a, b, c) of the Psi integral denominator.

    Invariants: a in [0, 1), c <= -1, a + c + |b| < 0.  The last one is what
    keeps the quadratic a y^2 + b y + c (y = cosh s) root-separated from
    y = 1, so the integral is well defined as a principal value.
    """

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (0.0 <= self.a < 1.0):
            raise ValueError(f"invalid-params: a={self.a} not in [0, 1)")
        if not self.c <= -1.0:
            raise ValueError(f"invalid-params: c={self.c} must be <= -1")
        if not self.a + self.c + abs(self.b) < 0.0:
            raise ValueError(
                f"invalid-params: a + c + |b| = {self.a + self.c + abs(self.b)} must be < 0"
            )


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and truncation for the quadrature oracle."""

    atol: float = 1e-12
    rtol: float = 1e-10
    half_width: float = 40.0
    max_subdivisions: int = 400

    def __post_init__(self):
        if self.atol <= 0 or self.rtol <= 0:
            raise ValueError("tolerances must be > 0")
        if self.half_width <= 0:
            raise ValueError("half_width must be > 0")


class PsiResult(NamedTuple):
    value: float
    is_delta: bool


def _ratio_tanh(v, x):
    # sin(v x) / tanh(pi v), analytic limit x/pi at v = 0
    if abs(v) < V_SERIES:
        return (x / math.pi) * (1.0 + v * v * (math.pi**2 / 3.0 - x * x / 6.0))
    return math.sin(v * x) / math.tanh(math.pi * v)


def _ratio_sinh(v, x):
    # sin(v x) / sinh(pi v), analytic limit x/pi at v = 0
    if abs(v) < V_SERIES:
        return (x / math.pi) * (1.0 - v * v * (x * x + math.pi**2) / 6.0)
    return math.sin(v * x) / math.sinh(math.pi * v)


def _ratio_tanh_half(v, x):
    # sin(v x) / tanh(pi v / 2), analytic limit 2x/pi at v = 0
    if abs(v) < V_SERIES:
        return (2.0 * x / math.pi) * (1.0 + v * v * (math.pi**2 / 12.0 - x * x / 6.0))
    return math.sin(v * x) / math.tanh(math.pi * v / 2.0)


def psi_closed(v: float, p: PsiParams) -> PsiResult:
    """Closed-form Psi(v; a, b, c) by residue-theorem case dispatch.

    Returns a (value, is_delta) pair.  The degenerate a = b = 0 case is a
    pure point mass at v = 0: the value is 0 for every v != 0 and the
    is_delta flag is set (the mass 2 pi / c is not representable as a
    number at a point).

    The result is even in v by construction (evaluated at |v|), finite and
    real everywhere on the admissible parameter domain.
    """
    a, b, c = p.a, p.b, p.c
    v = abs(float(v))

    a_is_zero = a < A_ZERO
    b_is_zero = abs(b) < B_ZERO

    if a_is_zero and b_is_zero:
        if v == 0.0:
            raise ValueError("delta case: Psi(0; 0, 0, c) is a point mass, not a number")
        return PsiResult(0.0, True)

    if a_is_zero:
        # single pair of poles of 1/(b cosh s + c); principal value when b > 0
        q = argcosh(abs(c / b))
        s = math.sqrt((c - b) * (c + b))
        if b < 0:
            return PsiResult(-2.0 * math.pi * _ratio_sinh(v, q) / s, False)
        return PsiResult(-2.0 * math.pi * _ratio_tanh(v, q) / s, False)

    if b_is_zero:
        x0 = argcosh(math.sqrt(-c / a))
        s = math.sqrt(c * c + c * a)
        return PsiResult(-math.pi * _ratio_tanh_half(v, x0) / s, False)

    # general case: roots c+ > 1 and c- < -1 of a y^2 + b y + c.
    # Compute the large-magnitude root by the non-cancelling formula and the
    # other by Vieta (c+ c- = c/a), so nothing degrades as a -> 0.
    delta = b * b - 4.0 * a * c
    sq = math.sqrt(delta)
    if b < 0:
        c_plus = (-b + sq) / (2.0 * a)
        c_minus = c / (a * c_plus)
    else:
        c_minus = (-b - sq) / (2.0 * a)
        c_plus = c / (a * c_minus)
    x_plus = argcosh(c_plus)
    x_minus = argcosh(-c_minus)
    term_plus = _ratio_tanh(v, x_plus) / math.sinh(x_plus)
    term_minus = _ratio_sinh(v, x_minus) / math.sinh(x_minus)
    return PsiResult(-2.0 * math.pi / sq * (term_plus + term_minus), False)


def _real_poles(p: PsiParams):
    """Positive real roots s0 of a cosh^2 s + b cosh s + c = 0."""
    a, b, c = p.a, p.b, p.c
    if a >= A_ZERO:
        sq = math.sqrt(b * b - 4.0 * a * c)
        if b < 0:
            c_plus = (-b + sq) / (2.0 * a)
        else:
            c_plus = c / (a * (-b - sq) / (2.0 * a))
        if c_plus > 1.0:
            return [argcosh(c_plus)]
        return []
    if b > B_ZERO and -p.c / b > 1.0:
        return [argcosh(-p.c / b)]
    return []


def psi_quadrature_full(v: float, p: PsiParams, q: QuadratureConfig = QuadratureConfig()) -> complex:
    """Psi(v; a, b, c) by adaptive principal-value quadrature over [-S, S].

    Independent oracle for psi_closed.  Real poles are handled by
    symmetrizing the integrand around each pole (the odd singular part
    cancels exactly); the remaining panels use plain adaptive quadrature.
    Returns the full complex value; the imaginary part is a self-check and
    should sit at the tolerance floor.
    """
    a, b, c = p.a, p.b, p.c
    S = q.half_width

    # analytic tail bound of the truncated integrand
    if a >= A_ZERO:
        tail = 8.0 * math.exp(-2.0 * S) / a
    elif abs(b) > B_ZERO:
        tail = 4.0 * math.exp(-S) / abs(b)
    else:
        tail = 2.0 * math.exp(-S) / abs(c)
    if tail > 0.1 * q.atol:
        raise ValueError(f"truncation half_width {S} too small: tail bound {tail:.3e}")

    def f_re(s):
        return math.cos(v * s) / (a * math.cosh(s) ** 2 + b * math.cosh(s) + c)

    def f_im(s):
        return math.sin(v * s) / (a * math.cosh(s) ** 2 + b * math.cosh(s) + c)

    def panel(f, lo, hi):
        val, err = quad(f, lo, hi, epsabs=q.atol, epsrel=q.rtol, limit=q.max_subdivisions)
        if err > max(q.atol, q.rtol * abs(val)) * 50.0:
            raise QuadratureError(
                f"quadrature on [{lo}, {hi}] did not converge: error estimate {err:.3e}"
            )
        return val

    poles = _real_poles(p)
    total_re = 0.0
    total_im = 0.0
    if not poles:
        total_re = panel(f_re, -S, S)
        total_im = panel(f_im, -S, S)
    else:
        s0 = poles[0]
        d = 0.5 * min(s0, S - s0)
        for f, acc in ((f_re, "re"), (f_im, "im")):
            def sym_pos(u, f=f):
                return f(s0 + u) + f(s0 - u)

            def sym_neg(u, f=f):
                return f(-s0 + u) + f(-s0 - u)

            val = panel(sym_pos, 0.0, d) + panel(sym_neg, 0.0, d)
            val += panel(f, -s0 + d, s0 - d)
            val += panel(f, s0 + d, S) + panel(f, -S, -s0 - d)
            if acc == "re":
                total_re = val
            else:
                total_im = val
    return complex(total_re, total_im)


def psi_quadrature(v: float, p: PsiParams, q: QuadratureConfig = QuadratureConfig()) -> float:
    """Real part of the quadrature oracle, after the imaginary self-check."""
    z = psi_quadrature_full(v, p, q)
    if abs(z.imag) > max(q.atol * 100.0, q.rtol * abs(z.real) * 10.0):
        raise QuadratureError(f"imaginary residue {z.imag:.3e} above tolerance")
    return z.real


def green_hom(omega: float, x, y, c0: float = 1.0) -> complex:
    """3-D homogeneous Green's function exp(i (omega/c0) |x-y|) / (4 pi |x-y|)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    r = float(np.linalg.norm(x - y))
    if r == 0.0:
        raise ValueError("coincident-points: green_hom requires x != y")
    return np.exp(1j * omega / c0 * r) / (4.0 * math.pi * r)


def _uniform_sphere(rng, n):
    g = rng.standard_normal((n, 3))
    return g / np.linalg.norm(g, axis=1)[:, None]


def _fibonacci_sphere(n):
    i = np.arange(n)
    z = 1.0 - (2.0 * i + 1.0) / n
    phi = 2.0 * math.pi * i * (2.0 / (1.0 + math.sqrt(5.0)))
    r = np.sqrt(1.0 - z * z)
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def hk_surface_quadrature(
    omega: float,
    x1,
    x2,
    L: float,
    n_nodes: int,
    c0: float = 1.0,
    seed: int = 0,
    lattice: bool = False,
) -> complex:
    """Surface quadrature of conj(G(x1, .)) G(x2, .) over the sphere |y| = L.

    Default: n_nodes uniform random nodes from a Philox stream keyed by the
    seed (deterministic given (seed, n_nodes)), with O(n^-1/2) sampling error.
    lattice=True replaces them with a Fibonacci lattice (seed ignored), whose
    quadrature error is negligible for these smooth integrands; useful to
    isolate the deterministic finite-L residual.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    k = omega / c0
    total = 0.0 + 0.0j
    rng = None if lattice else np.random.Generator(np.random.Philox(key=seed))
    chunk = 1_000_000
    done = 0
    while done < n_nodes:
        m = min(chunk, n_nodes - done)
        if lattice:
            dirs = _fibonacci_sphere(n_nodes)[done : done + m]
        else:
            dirs = _uniform_sphere(rng, m)
        y = L * dirs
        r1 = np.linalg.norm(y - x1, axis=1)
        r2 = np.linalg.norm(y - x2, axis=1)
        vals = np.exp(1j * k * (r2 - r1)) / (16.0 * math.pi**2 * r1 * r2)
        total += vals.sum()
        done += m
    return total * (4.0 * math.pi * L**2 / n_nodes)


def hk_residual(
    omega: float, x1, x2, L: float, n_nodes: int, c0: float = 1.0, seed: int = 0
) -> float:
    """Relative error of the Helmholtz-Kirchhoff identity at sphere radius L.

    Compares Im G(omega, x1, x2) = (omega / 4 pi c0) sinc(omega |x1-x2| / c0)
    against (omega/c0) times the surface quadrature.  Expected to decay like
    O(1/L) with an O(n_nodes^-1/2) Monte-Carlo floor.
    """
    x1 = np.asarray(x1, dtype=float)
    x2 = np.asarray(x2, dtype=float)
    r = float(np.linalg.norm(x1 - x2))
    lhs = omega / (4.0 * math.pi * c0) * sinc(omega * r / c0)
    rhs = (omega / c0) * hk_surface_quadrature(omega, x1, x2, L, n_nodes, c0, seed)
    return float(abs(lhs - rhs) / abs(lhs))
