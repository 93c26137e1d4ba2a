"""Constructive spectral diagnostics.

Approximate eigenvectors with closed-form residual norms witness the
continuous spectrum of P, X+P and XP+PX; an explicit pair of piecewise
kernels witnesses the unboundedness of R(z; X) at real z; solutions of the
defect equations (T +/- i) f = g back the essential self-adjointness
checks; and the harmonic oscillator eigenpairs come out of the even/odd
Weber solutions, whose confluent-hypergeometric factor truncates to a
polynomial at the quantized eigenvalues (2n - 1)/2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .numerics import (
    QuadratureConfig,
    incomplete_gamma_upper,
    integrate_line,
    pochhammer,
)
from .operators import Observable, SampledFunction, UnsupportedObservableError, vacuum

__all__ = [
    "ApproxEigenReport",
    "EigenPair",
    "Bump",
    "BadSupportError",
    "approx_eigvec_P",
    "approx_eigvec_XplusP",
    "approx_eigvec_XPplusPX",
    "unbounded_witness_X",
    "defect_solution",
    "oscillator_eigenpair",
]

_TIGHT = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-12)


class BadSupportError(ValueError):
    """Input support violates the kernel's requirements (nonzero near 0)."""


@dataclass(frozen=True)
class ApproxEigenReport:
    """Numeric vs closed-form residual data for one approximate eigenvector.

    ``residual_norm`` is the L2 norm of (z - T) g computed by quadrature;
    ``closed_form_residual`` is the paper-side norm; ``discrepancy`` is
    their absolute difference.
    """

    observable: Observable
    z: float
    parameter: float
    vector_norm: float
    residual_norm: float
    closed_form_residual: float
    discrepancy: float


@dataclass(frozen=True)
class EigenPair:
    """One harmonic-oscillator eigenpair; eigenfunction has unit L2 norm."""

    index: int
    eigenvalue: float
    parity: str  # "even" or "odd"
    eigenfunction: Callable[[np.ndarray], np.ndarray]


class Bump:
    """Smooth compactly supported test function on [a, b].

    Scaled copy of the standard profile exp(-1 / (1 - u**2)); vanishes
    with all derivatives at the endpoints.
    """

    def __init__(self, a: float, b: float) -> None:
        if not a < b:
            raise ValueError("need a < b")
        self.a = float(a)
        self.b = float(b)

    @property
    def support(self) -> tuple[float, float]:
        return (self.a, self.b)

    def __call__(self, s):
        s = np.asarray(s, dtype=float)
        u = (2 * s - (self.a + self.b)) / (self.b - self.a)
        out = np.zeros_like(u)
        inside = np.abs(u) < 1
        ui = u[inside]
        out[inside] = np.exp(-1.0 / (1.0 - ui * ui))
        return out


def _l2_norm_sq(f, lo: float, hi: float, cfg: QuadratureConfig) -> float:
    return float(integrate_line(lambda s: np.abs(f(s)) ** 2, lo, hi, cfg).value.real)


def approx_eigvec_P(z: float, beta: float, cfg: QuadratureConfig | None = None) -> ApproxEigenReport:
    """Gaussian wave packet g(s) = beta**(1/4) e^{-beta s^2} e^{izs}.

    Its squared norm is sqrt(pi/2) and ||(z - P) g||^2 = beta sqrt(pi/2),
    which tends to 0 with beta: z sits in the continuous spectrum of P.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    cfg = cfg or _TIGHT
    L = max(cfg.radius, 8.0 / math.sqrt(beta))
    g = lambda s: beta**0.25 * np.exp(-beta * s * s) * np.exp(1j * z * s)
    gp = lambda s: (-2 * beta * s + 1j * z) * g(s)
    resid = lambda s: z * g(s) + 1j * gp(s)  # (z - P) g with P = -i d/ds
    norm = math.sqrt(_l2_norm_sq(g, -L, L, cfg))
    rnorm = math.sqrt(_l2_norm_sq(resid, -L, L, cfg))
    closed = math.sqrt(beta * math.sqrt(math.pi / 2))
    return ApproxEigenReport(Observable.P, float(z), float(beta), norm, rnorm,
                             closed, abs(rnorm - closed))


def approx_eigvec_XplusP(z: float, eps: float, cfg: QuadratureConfig | None = None) -> ApproxEigenReport:
    """Chirped unit Gaussian for X+P with residual norm eps / sqrt(2)."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    cfg = cfg or _TIGHT
    L = max(cfg.radius, 8.0 / eps)
    pref = math.sqrt(eps) * math.pi**-0.25
    g = lambda s: pref * np.exp(-(eps * s) ** 2 / 2) * np.exp(1j * (s * z - s * s / 2))
    gp = lambda s: (-s * eps * eps + 1j * (z - s)) * g(s)
    resid = lambda s: z * g(s) - s * g(s) + 1j * gp(s)
    norm = math.sqrt(_l2_norm_sq(g, -L, L, cfg))
    rnorm = math.sqrt(_l2_norm_sq(resid, -L, L, cfg))
    closed = eps / math.sqrt(2.0)
    return ApproxEigenReport(Observable.XplusP, float(z), float(eps), norm, rnorm,
                             closed, abs(rnorm - closed))


def approx_eigvec_XPplusPX(z: float, eps: float, cfg: QuadratureConfig | None = None) -> ApproxEigenReport:
    """Power-law Gaussian for XP+PX, zeroed on (-eps, eps).

    Normalized by Gamma(0, 2 eps^2)^{-1/2}; the closed-form residual norm
    is 2 Gamma(0, 2 eps^2)^{-1/2} e^{-eps^2} sqrt(1 + 2 eps^2).
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    cfg = cfg or _TIGHT
    gam = incomplete_gamma_upper(0.0, 2 * eps * eps)
    pref = 1.0 / math.sqrt(gam)
    expo = -0.5 + 0.5j * z

    def g(s):
        s = np.asarray(s, dtype=float)
        return pref * np.exp(expo * np.log(np.abs(s))) * np.exp(-s * s)

    def resid(s):
        s = np.asarray(s, dtype=float)
        gv = g(s)
        gp = (expo / s - 2 * s) * gv
        return z * gv + 1j * (gv + 2 * s * gp)  # (z - (XP+PX)) g

    # both integrands are even; integrate the |s| >= eps region
    L = cfg.radius
    norm = math.sqrt(2 * _l2_norm_sq(g, eps, L, cfg))
    rnorm = math.sqrt(2 * _l2_norm_sq(resid, eps, L, cfg))
    closed = 2 * pref * math.exp(-eps * eps) * math.sqrt(1 + 2 * eps * eps)
    return ApproxEigenReport(Observable.XPplusPX, float(z), float(eps), norm, rnorm,
                             closed, abs(rnorm - closed))


def unbounded_witness_X(z: float, n: int, cfg: QuadratureConfig | None = None) -> tuple[float, float]:
    """Norms witnessing that R(z; X) is unbounded at real z.

    G_n = (z - s)^{-1} on [z-1, z-1/n] and g_n its indicator satisfy
    ||G_n||^2 = n - 1 and ||g_n||^2 = 1 - 1/n, so ||G_n|| / ||g_n|| is
    unbounded in n.  Returns the squared norms by quadrature.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cfg = cfg or QuadratureConfig(abs_tol=1e-12, rel_tol=1e-13)
    a, b = z - 1.0, z - 1.0 / n
    if n == 1:
        return 0.0, 0.0
    gn_sq = integrate_line(lambda s: np.ones_like(s), a, b, cfg).value.real
    Gn_sq = integrate_line(lambda s: (z - s) ** -2.0, a, b, cfg).value.real
    return float(Gn_sq), float(gn_sq)


def _clip_quad(f, lo: float, hi: float, cfg: QuadratureConfig) -> complex:
    if not lo < hi:
        return 0.0
    return integrate_line(f, lo, hi, cfg).value


def defect_solution(T: Observable, sign: str, g, grid,
                    support: tuple[float, float] | None = None,
                    cfg: QuadratureConfig | None = None) -> SampledFunction:
    """Sampled solution f of the defect equation (T + sign*i) f = g.

    Supported observables: X+P (exponential-chirp kernels) and XP+PX
    (the s f' = (i/2) g reduction and its adjoint-side kernel).  For
    XP+PX the input must vanish on a neighbourhood of zero.
    """
    if sign not in ("+", "-"):
        raise ValueError("sign must be '+' or '-'")
    if T not in (Observable.XplusP, Observable.XPplusPX):
        raise UnsupportedObservableError(f"defect_solution not defined for {T.value}")
    cfg = cfg or QuadratureConfig(abs_tol=1e-12, rel_tol=1e-10)
    if support is None:
        support = getattr(g, "support", None)
    if support is None:
        raise ValueError("g needs a known compact support (pass support=(a, b))")
    a, b = float(support[0]), float(support[1])
    if T is Observable.XPplusPX and a <= 0.0 <= b:
        raise BadSupportError("XP+PX defect input must vanish near 0")

    grid = np.asarray(grid, dtype=float)
    vals = np.zeros(grid.shape, dtype=np.complex128)
    for k, s in enumerate(grid):
        if T is Observable.XplusP:
            if sign == "-":  # f = -R(i; X+P) g, supported in s > a
                vals[k] = 1j * _clip_quad(
                    lambda t: np.exp(1j * (t * t - s * s) / 2 + (t - s)) * g(t),
                    a, min(s, b), cfg)
            else:  # f = -R(-i; X+P) g, supported in s < b
                vals[k] = -1j * _clip_quad(
                    lambda t: np.exp(1j * (t * t - s * s) / 2 + (s - t)) * g(t),
                    max(s, a), b, cfg)
        else:  # XP+PX
            if sign == "-":  # f = -R(i; XP+PX) g
                if s > 0:
                    vals[k] = -0.5j / s * _clip_quad(g, max(s, a), b, cfg)
                elif s < 0:
                    vals[k] = 0.5j / s * _clip_quad(g, a, min(s, b), cfg)
            else:  # s f' = (i/2) g integrated from the decaying end
                if s > 0:
                    vals[k] = -0.5j * _clip_quad(lambda w: g(w) / w, max(s, a), b, cfg)
                elif s < 0:
                    vals[k] = 0.5j * _clip_quad(lambda w: g(w) / w, a, min(s, b), cfg)
    return SampledFunction(grid, vals)


def _hermite_like_coeffs(y: int, c: float, m: int) -> np.ndarray:
    """Coefficients of the terminating 1F1(-m; c; x) polynomial in x."""
    return np.array([
        (pochhammer(y, k) / pochhammer(c, k) / math.factorial(k)).real
        for k in range(m + 1)
    ])


def oscillator_eigenpair(n: int, cfg: QuadratureConfig | None = None) -> EigenPair:
    """n-th eigenpair of (X^2 + P^2)/2: eigenvalue (2n - 1)/2.

    Odd n gives the even family e^{-s^2/2} 1F1((1-n)/2; 1/2; s^2); even n
    the odd family s e^{-s^2/2} 1F1((2-n)/2; 3/2; s^2) (the s*sqrt(2)
    rescaling of the Weber solutions folds into the series argument).
    Both series terminate, and the eigenfunction is normalized to unit
    L2 norm numerically.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cfg = cfg or _TIGHT
    eigenvalue = (2 * n - 1) / 2.0
    if n % 2 == 1:
        parity, c, y = "even", 0.5, (1 - n) // 2
        odd_factor = False
    else:
        parity, c, y = "odd", 1.5, (2 - n) // 2
        odd_factor = True
    coeffs = _hermite_like_coeffs(y, c, -y)

    def raw(s):
        s = np.asarray(s, dtype=float)
        x = s * s
        poly = np.zeros_like(x)
        for a_k in coeffs[::-1]:
            poly = poly * x + a_k
        out = np.exp(-x / 2) * poly
        return out * s if odd_factor else out

    nrm = math.sqrt(_l2_norm_sq(raw, -cfg.radius, cfg.radius, cfg))
    scale = 1.0 / nrm

    def eigenfunction(s):
        return scale * raw(s)

    return EigenPair(n, eigenvalue, parity, eigenfunction)
