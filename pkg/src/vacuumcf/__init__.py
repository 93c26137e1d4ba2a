"""Vacuum characteristic functions of quantum observables.

Computes <Phi, e^{itT} Phi> for T in {X, P, X+P, XP+PX, (X^2+P^2)/2} on
L2(R) with the Gaussian vacuum Phi, three independent ways: closed forms,
boundary jumps of the resolvent matrix element along a contour hugging the
real axis, and (for the oscillator) the spectral expansion.  Supporting
modules expose the resolvent kernels, constructive spectral diagnostics,
and inversion of characteristic functions to probability densities.
"""

from .charfn import CfSample, Engine, JumpConfig, cf_closed, cf_jump, cf_spectral, moments
from .distributions import DensityTable, Gaussian, GHS, PointMass, classify, density_for, invert_cf
from .numerics import (
    IntegralResult,
    QuadratureConfig,
    gaussian_integral,
    incomplete_gamma_upper,
    integrate_halfline,
    integrate_line,
    kummer_1f1,
    pochhammer,
)
from .operators import Observable, SampledFunction, apply, fourier, inverse_fourier, vacuum
from .resolvent import (
    MatrixElement,
    ResolventQuery,
    matrix_element,
    resolve_Harmonic_elem,
    resolve_P,
    resolve_X,
    resolve_XplusP,
    resolve_XPplusPX,
)
from .spectral import (
    ApproxEigenReport,
    EigenPair,
    approx_eigvec_P,
    approx_eigvec_XplusP,
    approx_eigvec_XPplusPX,
    defect_solution,
    oscillator_eigenpair,
    unbounded_witness_X,
)

__version__ = "0.1.0"

__all__ = [
    "Observable",
    "SampledFunction",
    "QuadratureConfig",
    "IntegralResult",
    "JumpConfig",
    "CfSample",
    "Engine",
    "MatrixElement",
    "ResolventQuery",
    "ApproxEigenReport",
    "EigenPair",
    "DensityTable",
    "Gaussian",
    "GHS",
    "PointMass",
    "vacuum",
    "apply",
    "fourier",
    "inverse_fourier",
    "integrate_line",
    "integrate_halfline",
    "gaussian_integral",
    "pochhammer",
    "kummer_1f1",
    "incomplete_gamma_upper",
    "resolve_X",
    "resolve_P",
    "resolve_XplusP",
    "resolve_XPplusPX",
    "resolve_Harmonic_elem",
    "matrix_element",
    "approx_eigvec_P",
    "approx_eigvec_XplusP",
    "approx_eigvec_XPplusPX",
    "unbounded_witness_X",
    "defect_solution",
    "oscillator_eigenpair",
    "cf_closed",
    "cf_jump",
    "cf_spectral",
    "moments",
    "classify",
    "invert_cf",
    "density_for",
]
