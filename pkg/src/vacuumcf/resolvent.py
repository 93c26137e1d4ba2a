"""Resolvent kernels R(z; T) applied to Gaussian-damped functions, and the
vacuum matrix element <Phi, R(z; T) Phi> feeding the contour engine.

Pointwise kernels (``resolve_*``) follow the closed formulas for each
observable; ``matrix_element`` pairs them with the vacuum.  For the
symmetrized product XP+PX the kernel is a power law s**(-(z+i)/(2i)) valid
on the strip Im z > -1; its boundary values are honest resolvent values on
the lower side, while the upper side is recovered through the adjoint
identity R(z)* = R(conj z), which is exactly how the matrix element enters
the boundary-jump formula.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .numerics import (
    QuadratureConfig,
    _composite_weights,
    _cumulative_integral,
    integrate_halfline,
    integrate_line,
)
from .operators import Observable, SampledFunction, vacuum

__all__ = [
    "ResolventQuery",
    "MatrixElement",
    "Validity",
    "PoleHitError",
    "RealZError",
    "OutsideStripError",
    "AtEigenvalueError",
    "resolve_X",
    "resolve_P",
    "resolve_XplusP",
    "resolve_XPplusPX",
    "resolve_Harmonic_elem",
    "resolve_sampled",
    "matrix_element",
]

_GROUND_ENERGY = 0.5


class PoleHitError(ValueError):
    """Pointwise evaluation of R(z; X) exactly at the pole s = z."""


class RealZError(ValueError):
    """Kernel requested at real z where the formula has no boundary value."""


class OutsideStripError(ValueError):
    """XP+PX kernel requested below its validity strip Im z > -1."""


class AtEigenvalueError(ValueError):
    """Harmonic resolvent requested at an eigenvalue (2n - 1)/2."""


class Validity(Enum):
    UpperHalf = "upper"
    LowerHalf = "lower"
    ImAboveMinusOne = "strip"
    SpectralExpansion = "spectral"


@dataclass(frozen=True)
class ResolventQuery:
    """An (observable, z) pair together with the regime the kernel needs."""

    observable: Observable
    z: complex

    @property
    def validity(self) -> Validity:
        if self.observable is Observable.XPplusPX:
            return Validity.ImAboveMinusOne
        if self.observable is Observable.Harmonic:
            return Validity.SpectralExpansion
        return Validity.UpperHalf if self.z.imag > 0 else Validity.LowerHalf

    def check(self) -> None:
        z = complex(self.z)
        if self.observable in (Observable.X, Observable.P, Observable.XplusP):
            if z.imag == 0:
                raise RealZError(f"{self.observable.value}: z must lie off the real axis")
        elif self.observable is Observable.XPplusPX:
            if z.imag <= -1:
                raise OutsideStripError("XP+PX kernel is only valid for Im z > -1")
        elif self.observable is Observable.Harmonic:
            _check_not_eigenvalue(z)


@dataclass(frozen=True)
class MatrixElement:
    """<Phi, R(z; T) Phi> with an a posteriori error estimate."""

    z: complex
    value: complex
    error_estimate: float

    def __post_init__(self) -> None:
        if self.error_estimate < 0:
            raise ValueError("error_estimate must be nonnegative")


# ---------------------------------------------------------------------------
# pointwise kernels


def resolve_X(z: complex, g, s: float) -> complex:
    """R(z; X) g(s) = g(s) / (z - s)."""
    z = complex(z)
    denom = z - s
    if denom == 0:
        raise PoleHitError(f"R(z; X) pole hit at s = z = {s}")
    return complex(g(s)) / denom


def resolve_P(z: complex, g, s: float, cfg: QuadratureConfig | None = None) -> complex:
    """Half-line kernel of R(z; P); branch chosen by the sign of Im z."""
    z = complex(z)
    if z.imag == 0:
        raise RealZError("R(z; P) has no continuous extension to real z")
    if z.imag > 0:
        res = integrate_halfline(lambda w: np.exp(1j * z * (s - w)) * g(w), s, "-", cfg)
        return -1j * res.value
    res = integrate_halfline(lambda w: np.exp(1j * z * (s - w)) * g(w), s, "+", cfg)
    return 1j * res.value


def resolve_XplusP(z: complex, g, s: float, cfg: QuadratureConfig | None = None) -> complex:
    """Chirp kernel of R(z; X+P); branch chosen by the sign of Im z."""
    z = complex(z)
    if z.imag == 0:
        raise RealZError("R(z; X+P) has no continuous extension to real z")
    kern = lambda t: np.exp(1j * (t * t - s * s) / 2 - 1j * z * (t - s)) * g(t)
    if z.imag > 0:
        return -1j * integrate_halfline(kern, s, "-", cfg).value
    return 1j * integrate_halfline(kern, s, "+", cfg).value


def _xppx_exponents(z: complex) -> tuple[complex, complex]:
    # s-exponent -(z+i)/(2i) = (iz-1)/2 and w-exponent (z-i)/(2i) = -(1+iz)/2
    return (1j * z - 1) / 2, -(1 + 1j * z) / 2


def resolve_XPplusPX(z: complex, g, s: float, cfg: QuadratureConfig | None = None) -> complex:
    """Power-law kernel of R(z; XP+PX) on the strip Im z > -1.

    Complex powers of the positive base |s| are exp(exponent * log|s|)
    with the real logarithm, so no branch cut is crossed.
    """
    z = complex(z)
    if z.imag <= -1:
        raise OutsideStripError("XP+PX kernel is only valid for Im z > -1")
    if s == 0:
        return complex(g(0.0)) / (z + 1j)
    p, q = _xppx_exponents(z)
    if s > 0:
        res = integrate_halfline(lambda w: np.exp(q * np.log(w)) * g(w), s, "+", cfg)
        return 0.5j * np.exp(p * math.log(s)) * res.value
    res = integrate_halfline(lambda w: np.exp(q * np.log(-w)) * g(w), s, "-", cfg)
    return 0.5j * np.exp(p * math.log(-s)) * res.value


def _check_not_eigenvalue(z: complex) -> None:
    z = complex(z)
    if z.imag == 0:
        m = round(z.real - _GROUND_ENERGY)
        if m >= 0 and abs(z.real - (m + _GROUND_ENERGY)) < 1e-12:
            raise AtEigenvalueError(f"z = {z.real} is an oscillator eigenvalue")


def resolve_Harmonic_elem(z: complex) -> complex:
    """<Phi, R(z; H) Phi> for the harmonic Hamiltonian H = (X**2+P**2)/2.

    The vacuum is exactly the ground state, so the spectral expansion
    collapses to a single term 1 / (z - 1/2).
    """
    z = complex(z)
    _check_not_eigenvalue(z)
    return 1.0 / (z - _GROUND_ENERGY)


# ---------------------------------------------------------------------------
# sampled resolvents (cumulative evaluation on uniform grids)


def resolve_sampled(T: Observable, z: complex, g, grid: np.ndarray,
                    cfg: QuadratureConfig | None = None) -> SampledFunction:
    """Evaluate R(z; T) g on a uniform grid for T in {X, P, X+P}.

    For the integral kernels the half-line integrals at every grid node
    share one cumulative antiderivative, which keeps the cost linear in
    the grid size.  The open end is truncated at the grid boundary, so the
    grid should extend far enough for g to have decayed.
    """
    z = complex(z)
    grid = np.asarray(grid, dtype=float)
    gv = np.asarray(g(grid), dtype=np.complex128)
    h = float(grid[1] - grid[0])
    if T is Observable.X:
        denom = z - grid
        if np.any(denom == 0):
            raise PoleHitError("grid touches the pole s = z")
        return SampledFunction(grid, gv / denom)
    if z.imag == 0:
        raise RealZError(f"{T.value}: z must lie off the real axis")
    if T is Observable.P:
        inner = np.exp(-1j * z * grid) * gv
        phase = np.exp(1j * z * grid)
    elif T is Observable.XplusP:
        inner = np.exp(1j * grid**2 / 2 - 1j * z * grid) * gv
        phase = np.exp(-1j * grid**2 / 2 + 1j * z * grid)
    else:
        raise ValueError(f"resolve_sampled does not support {T}")
    cum = _cumulative_integral(inner, h)
    if z.imag > 0:
        vals = -1j * phase * cum
    else:
        vals = 1j * phase * (cum[-1] - cum)
    return SampledFunction(grid, vals)


# ---------------------------------------------------------------------------
# vacuum matrix elements


def _me_x_lower(xs: np.ndarray, eps: float, cfg: QuadratureConfig) -> np.ndarray:
    """<Phi, R(x - i eps; X) Phi> on a grid of real x."""
    R = cfg.radius
    out = np.empty(xs.size, dtype=np.complex128)
    pref = 1.0 / math.sqrt(math.pi)
    for k, x in enumerate(xs):
        z = complex(x, -eps)
        f = lambda s: np.exp(-s * s) / (z - s)
        if -R < x < R:
            # splitting at the near-pole makes it an endpoint feature that
            # bisection resolves geometrically
            val = integrate_line(f, -R, x, cfg).value + integrate_line(f, x, R, cfg).value
        else:
            val = integrate_line(f, -R, R, cfg).value
        out[k] = pref * val
    return out


def _me_halfline_lower(T: Observable, xs: np.ndarray, eps: float,
                       cfg: QuadratureConfig, step: float = 1.0 / 256.0) -> np.ndarray:
    """<Phi, R(x - i eps; T) Phi> for T in {P, X+P} on a grid of real x.

    Lower-half branch: R(z)g(s) = i e^{i z s} (chirp) int_s^inf ... ;
    the inner integral is one reverse cumulative per z, vectorized over
    chunks of x.
    """
    R = cfg.radius
    n = 2 * int(round(R / step)) + 1
    s = np.linspace(-R, R, n)
    h = s[1] - s[0]
    phi = vacuum(s)
    w = _composite_weights(n, h)
    grow = np.exp(-eps * s) * phi          # |e^{-izw}| part of the inner kernel
    damp = np.exp(eps * s) * phi           # outer Phi * |e^{izs}|
    chirp = np.exp(1j * s * s / 2) if T is Observable.XplusP else 1.0
    out = np.empty(xs.size, dtype=np.complex128)
    for lo in range(0, xs.size, 64):
        xc = xs[lo : lo + 64]
        E = np.exp(-1j * np.multiply.outer(xc, s))      # e^{-i x s}
        inner = E * (chirp * grow)
        cum = _cumulative_integral(inner, h)
        rev = cum[:, -1][:, None] - cum
        G = 1j * np.conj(E * chirp) * rev
        out[lo : lo + 64] = (G * (damp * w)).sum(axis=1)
    return out


def _me_xppx(zs: np.ndarray, cfg: QuadratureConfig, step: float = 1.0 / 512.0,
             v_max: float = 20.0) -> np.ndarray:
    """<Phi, R(z; XP+PX) Phi> for Im z <= 0 via the power-law kernel.

    Written in the variable s = e^{-v} the kernel integrals become
    constant-frequency oscillatory integrals with exponential damping;
    the inner integral is cumulative in v and the tail beyond v_max is
    added in closed form.  Requires Im z < 1 (true for all lower-half z).
    """
    zs = np.atleast_1d(np.asarray(zs, dtype=np.complex128))
    R = cfg.radius
    v0 = -math.log(R)
    n = int(math.ceil((v_max - v0) / step)) + 1
    if n % 2 == 0:
        n += 1
    v = np.linspace(v0, v_max, n)
    hv = v[1] - v[0]
    s = np.exp(-v)
    phi = vacuum(s)
    w = _composite_weights(n, hv)
    phi0 = float(vacuum(0.0))
    out = np.empty(zs.size, dtype=np.complex128)
    for lo in range(0, zs.size, 64):
        zc = zs[lo : lo + 64]
        p = (1j * zc - 1) / 2
        q = -(1 + 1j * zc) / 2
        Ein = np.exp(np.multiply.outer(-(q + 1), v)) * phi       # e^{-(q+1)v} Phi(e^{-v})
        K = _cumulative_integral(Ein, hv)
        Eout = np.exp(np.multiply.outer(-(p + 1), v)) * phi
        val = ((Eout * K) * w).sum(axis=1)
        # analytic tails: K(v) ~ B + D e^{-(q+1) v} beyond v_max, and
        # p + q + 2 = 1 collapses the cross term to e^{-v_max}
        D = -phi0 / (q + 1)
        B = K[:, -1] - D * np.exp(-(q + 1) * v_max)
        tail = phi0 * (B * np.exp(-(p + 1) * v_max) / (p + 1) + D * math.exp(-v_max))
        out[lo : lo + 64] = 1j * (val + tail)
    return out


def _me_halfline_single(T: Observable, z: complex, cfg: QuadratureConfig,
                        step: float) -> complex:
    """Outer integral of Phi * R(z; T) Phi at one z via the sampled kernel."""
    R = cfg.radius
    n = 2 * int(round(R / step)) + 1
    grid = np.linspace(-R, R, n)
    rs = resolve_sampled(T, z, vacuum, grid)
    w = _composite_weights(n, grid[1] - grid[0])
    return complex(np.sum(w * vacuum(grid) * rs.values))


def matrix_element(T: Observable, z: complex, cfg: QuadratureConfig | None = None) -> MatrixElement:
    """Vacuum matrix element <Phi, R(z; T) Phi>.

    For X the outer integral is adaptive with a split at Re z; for P and
    X+P the nested half-line kernel is evaluated per branch through one
    cumulative antiderivative.  For XP+PX the power-law kernel is
    integrated on the lower half-plane, where it is the honest resolvent;
    upper-half values are its adjoint reflection conj(M(conj z)).
    Harmonic delegates to the spectral closed form.
    """
    cfg = cfg or QuadratureConfig()
    z = complex(z)
    if T is Observable.Harmonic:
        return MatrixElement(z, resolve_Harmonic_elem(z), 0.0)
    if T is Observable.XPplusPX:
        zq = complex(z.real, -abs(z.imag))
        fine = complex(_me_xppx(np.array([zq]), cfg)[0])
        coarse = complex(_me_xppx(np.array([zq]), cfg, step=1.0 / 256.0)[0])
        val = fine.conjugate() if z.imag > 0 else fine
        return MatrixElement(z, val, abs(fine - coarse))
    if z.imag == 0:
        raise RealZError(f"{T.value}: z must lie off the real axis")
    if T is Observable.X:
        R = cfg.radius
        pref = 1.0 / math.sqrt(math.pi)
        f = lambda s: np.exp(-s * s) / (z - s)
        pieces = ([(-R, z.real), (z.real, R)] if -R < z.real < R else [(-R, R)])
        val, err = complex(0.0), 0.0
        for a, b in pieces:
            r = integrate_line(f, a, b, cfg)
            val += r.value
            err += r.error_estimate
        return MatrixElement(z, pref * val, pref * err)
    if T in (Observable.P, Observable.XplusP):
        fine = _me_halfline_single(T, z, cfg, step=1.0 / 256.0)
        coarse = _me_halfline_single(T, z, cfg, step=1.0 / 128.0)
        return MatrixElement(z, fine, abs(fine - coarse))
    raise ValueError(f"unsupported observable {T}")


def matrix_element_lower_grid(T: Observable, xs: np.ndarray, eps: float,
                              cfg: QuadratureConfig | None = None) -> np.ndarray:
    """<Phi, R(x - i eps; T) Phi> on a grid of real x (eps > 0).

    This is the quantity the boundary-jump engine integrates; upper-half
    values follow from the adjoint identity as the complex conjugate.
    """
    cfg = cfg or QuadratureConfig()
    xs = np.asarray(xs, dtype=float)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if T is Observable.X:
        return _me_x_lower(xs, eps, cfg)
    if T in (Observable.P, Observable.XplusP):
        return _me_halfline_lower(T, xs, eps, cfg)
    if T is Observable.XPplusPX:
        return _me_xppx(xs - 1j * eps, cfg)
    if T is Observable.Harmonic:
        return 1.0 / (xs - 1j * eps - _GROUND_ENERGY)
    raise ValueError(f"unsupported observable {T}")
