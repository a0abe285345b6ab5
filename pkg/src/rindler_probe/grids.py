"""Sampled spectra and correlations, their CSV format, and lag windows.

CSV layout (diff-able, shortest round-trip floats):

    # kind=wigner
    # window=gaussian:2.5
    # eta/nu,0.0,0.5,1.0
    -1.0,0.07,0.08,0.09
    ...

Metadata lines are ``# key=value``; the last ``#`` line is the column header
carrying the nu (or tau') values.  Standard-error grids live in companion
``*_stderr.csv`` files with the same layout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

__all__ = [
    "WignerGrid",
    "CorrelationGrid",
    "window_function",
    "window_kernel",
    "write_grid_csv",
    "read_grid_csv",
    "read_wigner_csv",
    "write_spectrum_csv",
    "read_spectrum_csv",
]


@dataclass
class WignerGrid:
    """Local spectrum sampled on an (eta, nu) lattice.

    window is "analytic" for closed-form fills, or "kind:Tc" for lag-windowed
    estimates.  kind distinguishes plain spectra from correction grids.
    """

    eta: np.ndarray
    nu: np.ndarray
    values: np.ndarray
    window: str = "analytic"
    kind: str = "wigner"
    stderr: Optional[np.ndarray] = None

    def __post_init__(self):
        self.eta = np.asarray(self.eta, dtype=float)
        self.nu = np.asarray(self.nu, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.eta.size, self.nu.size):
            raise ValueError("values must have shape (len(eta), len(nu))")
        if self.stderr is not None:
            self.stderr = np.asarray(self.stderr, dtype=float)
            if self.stderr.shape != self.values.shape:
                raise ValueError("stderr must match values shape")


@dataclass
class CorrelationGrid:
    """Autocorrelation sampled on a (tau, tau') lattice."""

    tau: np.ndarray
    tau_prime: np.ndarray
    values: np.ndarray
    stderr: Optional[np.ndarray] = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.tau = np.asarray(self.tau, dtype=float)
        self.tau_prime = np.asarray(self.tau_prime, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.tau.size, self.tau_prime.size):
            raise ValueError("values must have shape (len(tau), len(tau_prime))")
        if self.stderr is not None:
            self.stderr = np.asarray(self.stderr, dtype=float)
            if self.stderr.shape != self.values.shape:
                raise ValueError("stderr must match values shape")


def window_function(kind: str, t_c: float):
    """Lag window chi(tau') with chi(0) = 1: rectangular, hann, or gaussian."""
    if t_c <= 0:
        raise ValueError("window width T_c must be > 0")
    if kind == "rectangular":
        return lambda t: np.where(np.abs(t) <= t_c, 1.0, 0.0)
    if kind == "hann":
        return lambda t: np.where(np.abs(t) <= t_c, np.cos(np.pi * np.asarray(t) / (2 * t_c)) ** 2, 0.0)
    if kind == "gaussian":
        return lambda t: np.exp(-np.asarray(t) ** 2 / (2.0 * t_c**2))
    raise ValueError(f"unknown window kind {kind!r}")


def window_kernel(kind: str, t_c: float):
    """Unit-mass frequency kernel (1/2pi) int chi(t) e^{i mu t} dt of the window."""
    if t_c <= 0:
        raise ValueError("window width T_c must be > 0")
    if kind == "rectangular":

        def kernel(mu):
            mu = np.asarray(mu, dtype=float)
            return t_c / math.pi * np.sinc(mu * t_c / math.pi)

    elif kind == "hann":

        def kernel(mu):
            # (T_c / 2 pi) * pi^2 sin(x) / (x (pi^2 - x^2)), x = mu T_c;
            # removable points x = 0 (value 1) and x = +-pi (value 1/2)
            x = np.asarray(mu, dtype=float) * t_c
            den = math.pi**2 - x**2
            near = np.abs(den) < 1e-9
            g = np.where(near, 0.5, math.pi**2 * np.sinc(x / math.pi) / np.where(near, 1.0, den))
            return t_c / (2.0 * math.pi) * g

    elif kind == "gaussian":

        def kernel(mu):
            mu = np.asarray(mu, dtype=float)
            return t_c / math.sqrt(2.0 * math.pi) * np.exp(-(mu**2) * t_c**2 / 2.0)

    else:
        raise ValueError(f"unknown window kind {kind!r}")
    return kernel


def _fmt(x: float) -> str:
    return repr(float(x))


def write_grid_csv(path, grid, row_label: Optional[str] = None) -> None:
    """Write a WignerGrid or CorrelationGrid to CSV (see module docstring)."""
    if isinstance(grid, WignerGrid):
        label = row_label or "eta/nu"
        rows, cols = grid.eta, grid.nu
        meta = {"kind": grid.kind, "window": grid.window}
    else:
        label = row_label or "tau/tau_prime"
        rows, cols = grid.tau, grid.tau_prime
        meta = {"kind": "correlation", **grid.meta}
    lines = [f"# {k}={v}" for k, v in meta.items()]
    lines.append("# " + ",".join([label] + [_fmt(c) for c in cols]))
    for i, r in enumerate(rows):
        lines.append(",".join([_fmt(r)] + [_fmt(v) for v in grid.values[i]]))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_grid_csv(path):
    """Read a grid CSV; returns (meta dict, row values, col values, matrix)."""
    meta = {}
    cols = None
    rows = []
    data = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body and "," not in body.split("=")[0]:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                else:
                    parts = body.split(",")
                    meta["_row_label"] = parts[0]
                    cols = np.array([float(p) for p in parts[1:]])
            else:
                parts = line.split(",")
                rows.append(float(parts[0]))
                data.append([float(p) for p in parts[1:]])
    if cols is None:
        raise ValueError(f"{path}: missing column header line")
    return meta, np.array(rows), cols, np.array(data)


def read_wigner_csv(path, stderr_path=None) -> WignerGrid:
    meta, rows, cols, data = read_grid_csv(path)
    stderr = None
    if stderr_path is not None:
        _, _, _, stderr = read_grid_csv(stderr_path)
    return WignerGrid(
        eta=rows,
        nu=cols,
        values=data,
        window=meta.get("window", "analytic"),
        kind=meta.get("kind", "wigner"),
        stderr=stderr,
    )


def write_spectrum_csv(path, omega, values, kind: str = "spectrum") -> None:
    """Single-row spectrum: (omega, W) samples."""
    lines = [f"# kind={kind}", "# omega,value"]
    for w, v in zip(omega, values):
        lines.append(f"{_fmt(w)},{_fmt(v)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_spectrum_csv(path):
    omega = []
    values = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            a, b = line.split(",")
            omega.append(float(a))
            values.append(float(b))
    return np.array(omega), np.array(values)
