"""The vacuum vector, the five observables on sampled functions, and the
Fourier transform pair.

These give grid-level realizations of the operators that the resolvent and
spectral modules are checked against: multiplication by s for position,
-i d/ds for momentum (hbar is fixed to 1 throughout), their symmetrized
product, and the harmonic Hamiltonian (s**2/2) - (1/2) d**2/ds**2.
Derivatives use 4th-order central stencils in the interior; the two points
nearest each boundary fall back to one-sided stencils and are flagged via
``SampledFunction.edge_points`` so tests can exclude them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.interpolate import CubicSpline

from .numerics import QuadratureConfig, _composite_weights, integrate_line

__all__ = [
    "Observable",
    "SampledFunction",
    "GridTooCoarseError",
    "NonDecayingError",
    "UnsupportedObservableError",
    "vacuum",
    "apply",
    "fourier",
    "inverse_fourier",
    "sample",
    "grid_inner",
    "grid_norm",
]

_INV_PI_QUARTER = np.pi ** -0.25


class Observable(Enum):
    """The five quantum observables; values double as CLI tokens."""

    X = "x"
    P = "p"
    XplusP = "x+p"
    XPplusPX = "xp+px"
    Harmonic = "harmonic"  # (X**2 + P**2) / 2


class GridTooCoarseError(ValueError):
    """Grid resolution too low for the finite-difference stencils."""


class UnsupportedObservableError(ValueError):
    """Operation not defined for the requested observable."""


class NonDecayingError(ValueError):
    """Function does not decay at the ends of its grid."""


@dataclass(frozen=True)
class SampledFunction:
    """A complex function sampled on a uniform grid.

    ``edge_points`` counts, per side, how many samples were produced by
    one-sided stencils (and therefore carry lower-order accuracy).
    Instances are immutable; the arrays are marked read-only.
    """

    grid: np.ndarray
    values: np.ndarray
    edge_points: int = 0

    def __post_init__(self) -> None:
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=np.complex128)
        if grid.ndim != 1 or values.shape != grid.shape:
            raise ValueError("grid and values must be 1-D arrays of equal length")
        if grid.size < 5:
            raise ValueError("need at least 5 samples")
        steps = np.diff(grid)
        h = steps[0]
        if h <= 0 or np.max(np.abs(steps - h)) > 1e-12 * max(abs(h), 1.0):
            raise ValueError("grid must be strictly increasing and uniform")
        grid.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @property
    def step(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def interior(self) -> slice:
        """Slice selecting the samples untouched by one-sided stencils."""
        k = self.edge_points
        return slice(k, self.grid.size - k) if k else slice(None)


def vacuum(s):
    """Ground-state Gaussian pi**(-1/4) exp(-s**2/2); unit L2 norm."""
    return _INV_PI_QUARTER * np.exp(-np.asarray(s, dtype=float) ** 2 / 2)


def sample(fn, lo: float, hi: float, step: float, edge_points: int = 0) -> SampledFunction:
    """Sample a callable on the uniform grid lo, lo+step, ..., hi."""
    n = int(round((hi - lo) / step)) + 1
    grid = lo + step * np.arange(n)
    return SampledFunction(grid, np.asarray(fn(grid), dtype=np.complex128), edge_points)


def grid_inner(f: SampledFunction, g: SampledFunction) -> complex:
    """L2 inner product <f, g> = int conj(f) g on the common grid."""
    if f.grid.shape != g.grid.shape or abs(f.grid[0] - g.grid[0]) > 1e-12:
        raise ValueError("sampled functions live on different grids")
    w = _composite_weights(f.grid.size, f.step)
    return complex(np.sum(w * np.conj(f.values) * g.values))


def grid_norm(f: SampledFunction) -> float:
    """L2 norm of a sampled function via a 4th-order composite rule."""
    w = _composite_weights(f.grid.size, f.step)
    return float(np.sqrt(np.sum(w * np.abs(f.values) ** 2).real))


def _derivative(values: np.ndarray, h: float) -> np.ndarray:
    v = values
    d = np.empty_like(v)
    d[2:-2] = (-v[4:] + 8 * v[3:-1] - 8 * v[1:-3] + v[:-4]) / (12 * h)
    d[0] = (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]) / (12 * h)
    d[1] = (-3 * v[0] - 10 * v[1] + 18 * v[2] - 6 * v[3] + v[4]) / (12 * h)
    d[-2] = (3 * v[-1] + 10 * v[-2] - 18 * v[-3] + 6 * v[-4] - v[-5]) / (12 * h)
    d[-1] = (25 * v[-1] - 48 * v[-2] + 36 * v[-3] - 16 * v[-4] + 3 * v[-5]) / (12 * h)
    return d


def _second_derivative(values: np.ndarray, h: float) -> np.ndarray:
    v = values
    d = np.empty_like(v)
    d[2:-2] = (-v[4:] + 16 * v[3:-1] - 30 * v[2:-2] + 16 * v[1:-3] - v[:-4]) / (12 * h * h)
    for j in (0, 1):
        d[j] = (2 * v[j] - 5 * v[j + 1] + 4 * v[j + 2] - v[j + 3]) / (h * h)
        d[-1 - j] = (2 * v[-1 - j] - 5 * v[-2 - j] + 4 * v[-3 - j] - v[-4 - j]) / (h * h)
    return d


def _check_resolution(values: np.ndarray, h: float, coarse_tol: float) -> None:
    # h**2 * max|f''''| large relative to max|f| means the stencil error
    # is no longer negligible; estimated from the 5-point 4th difference.
    v = values
    d4 = np.abs(v[4:] - 4 * v[3:-1] + 6 * v[2:-2] - 4 * v[1:-3] + v[:-4]) / h**4
    scale = max(float(np.max(np.abs(v))), 1e-300)
    if d4.size and h * h * float(d4.max()) > coarse_tol * scale:
        raise GridTooCoarseError(
            "finite-difference stencils unreliable: h^2 * max|f''''| "
            f"~ {h * h * float(d4.max()):.3g} exceeds {coarse_tol:.3g} * max|f|"
        )


def apply(T: Observable, f: SampledFunction, coarse_tol: float = 0.1) -> SampledFunction:
    """Apply an observable to a sampled function.

    X multiplies by s; P is -i times the finite-difference derivative;
    XP+PX acts as -i (f + 2 s f'); the harmonic Hamiltonian acts as
    (s**2/2) f - f''/2.  Two points per side are flagged as edge points.
    """
    s, v, h = f.grid, f.values, f.step
    if T is Observable.X:
        return SampledFunction(s, s * v, f.edge_points)
    _check_resolution(v, h, coarse_tol)
    if T is Observable.P:
        out = -1j * _derivative(v, h)
    elif T is Observable.XplusP:
        out = s * v - 1j * _derivative(v, h)
    elif T is Observable.XPplusPX:
        out = -1j * (v + 2 * s * _derivative(v, h))
    elif T is Observable.Harmonic:
        out = (s * s / 2) * v - _second_derivative(v, h) / 2
    else:  # pragma: no cover
        raise ValueError(f"unknown observable {T}")
    return SampledFunction(s, out, f.edge_points + 2)


def _transform(f: SampledFunction, t_grid, sign: float, cfg: QuadratureConfig | None, decay_tol: float) -> SampledFunction:
    end_mag = max(abs(f.values[0]), abs(f.values[-1]))
    if end_mag >= decay_tol:
        raise NonDecayingError(f"endpoint magnitude {end_mag:.3g} >= {decay_tol:.3g}")
    cfg = cfg or QuadratureConfig(abs_tol=1e-12, rel_tol=1e-10)
    spline = CubicSpline(f.grid, f.values)
    a, b = float(f.grid[0]), float(f.grid[-1])
    pref = (2 * np.pi) ** -0.5
    t_grid = np.asarray(t_grid, dtype=float)
    out = np.empty(t_grid.shape, dtype=np.complex128)
    for k, t in enumerate(t_grid):
        res = integrate_line(lambda lam: np.exp(sign * 1j * lam * t) * spline(lam), a, b, cfg)
        out[k] = pref * res.value
    return SampledFunction(t_grid, out, f.edge_points)


def fourier(f: SampledFunction, t_grid, cfg: QuadratureConfig | None = None, decay_tol: float = 1e-5) -> SampledFunction:
    """(Uf)(t) = (2 pi)**(-1/2) int exp(+i lam t) f(lam) d lam.

    The samples are interpolated by a cubic spline and the truncated
    integral is evaluated adaptively for each requested t.  Requires the
    samples to have decayed at the grid ends.
    """
    return _transform(f, t_grid, +1.0, cfg, decay_tol)


def inverse_fourier(f: SampledFunction, lam_grid, cfg: QuadratureConfig | None = None, decay_tol: float = 1e-5) -> SampledFunction:
    """Inverse transform; mirror of :func:`fourier` with conjugate kernel."""
    return _transform(f, lam_grid, -1.0, cfg, decay_tol)
