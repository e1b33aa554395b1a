"""Closed-form asymptotic variances for the statistics under study.

Fourth-order structure enters only through a scalar excess kurtosis, which is
exact for linear processes and for companion autoregressive processes; the
same second-order functional with different kurtosis values distinguishes what
the bootstrap delivers from what the data demand.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .series import ACVF
from .spectral import KernelSpec, WeightFunction

__all__ = [
    "KurtosisSpec",
    "VarMatrix",
    "ma1_companion_kurtosis",
    "acvf_asymptotic_variance",
    "bartlett_variance",
    "mean_asymptotic_variance",
    "integrated_periodogram_variance",
    "ratio_statistic_variance",
    "spectral_estimator_variance",
    "spectral_estimator_bias",
    "vm_matrix",
]

# Fixed quadrature grid (midpoint rule) for all frequency-domain integrals.
_QUAD_POINTS = 2048


@dataclass(frozen=True)
class KurtosisSpec:
    """Excess kurtosis E xi^4 / (E xi^2)^2 - 3 of a designated innovation law."""

    excess: float = 0.0

    def __post_init__(self):
        if self.excess < -2.0:
            raise ValueError("excess kurtosis cannot be below -2")


@dataclass(frozen=True)
class VarMatrix:
    """Asymptotic covariance of scaled sample autocovariances at lags 0..M."""

    M: int
    entries: np.ndarray

    def __post_init__(self):
        entries = np.asarray(self.entries, dtype=float)
        if entries.shape != (self.M + 1, self.M + 1):
            raise ValueError("entries must be (M+1) x (M+1)")
        if not np.allclose(entries, entries.T):
            raise ValueError("entries must be symmetric")
        object.__setattr__(self, "entries", entries)


def _quad_grid():
    lam = (np.arange(_QUAD_POINTS) + 0.5) * np.pi / _QUAD_POINTS
    return lam, np.pi / _QUAD_POINTS


def ma1_companion_kurtosis(raw_ratio_e: float) -> float:
    """Excess kurtosis of the Wold innovations of the MA(1) worked example.

    For X_t = e_t - 2 e_{t-1} the geometric filter gives
    E eps^4/(E eps^2)^2 - 3 = (2/5) * (E e^4/sigma^4) - 6/5.
    """
    if raw_ratio_e < 1.0:
        raise ValueError("fourth-moment ratio must be at least 1")
    return 0.4 * raw_ratio_e - 1.2


def _gamma_extended(acvf: ACVF) -> Callable[[int], float]:
    return acvf.__getitem__


def _truncation_lags(acvf: ACVF) -> int:
    g = np.abs(acvf.gamma)
    keep = np.nonzero(g >= 1e-12 * g[0])[0]
    return int(keep[-1]) if keep.size else 0


def acvf_asymptotic_variance(acvf: ACVF, h: int, kappa: KurtosisSpec) -> float:
    """kappa * gamma(h)^2 + sum_k (gamma(k)^2 + gamma(k+h) gamma(k-h)).

    With kappa the innovation excess kurtosis this is the variance of
    sqrt(n)(gamma_hat(h) - gamma(h)) for a linear or companion process.
    """
    g = _gamma_extended(acvf)
    K = _truncation_lags(acvf) + abs(h)
    total = kappa.excess * g(h) ** 2
    for k in range(-K, K + 1):
        total += g(k) ** 2 + g(k + h) * g(k - h)
    return float(total)


def bartlett_variance(acf, h: int) -> float:
    """Bartlett's formula for the variance of sqrt(n)(rho_hat(h) - rho(h))."""
    rho_arr = np.asarray(acf, dtype=float)
    if abs(rho_arr[0] - 1.0) > 1e-12:
        raise ValueError("acf must start with rho(0) = 1")

    def rho(k: int) -> float:
        k = abs(k)
        return float(rho_arr[k]) if k < rho_arr.size else 0.0

    K = rho_arr.size + abs(h)
    rh = rho(h)
    total = 0.0
    for k in range(-K, K + 1):
        total += ((1.0 + 2.0 * rh ** 2) * rho(k) ** 2
                  + rho(k - h) * rho(k + h)
                  - 4.0 * rh * rho(k) * rho(k + h))
    return float(total)


def mean_asymptotic_variance(acvf: ACVF) -> float:
    """Long-run variance gamma(0) + 2 sum_{h>=1} gamma(h)."""
    return float(acvf.gamma[0] + 2.0 * np.sum(acvf.gamma[1:]))


def integrated_periodogram_variance(f: Callable, phi: WeightFunction, kappa: KurtosisSpec) -> float:
    """kappa (int_0^pi phi f)^2 + 2 pi int_0^pi phi^2 f^2, fixed-grid quadrature."""
    lam, dl = _quad_grid()
    fv = np.asarray(f(lam), dtype=float)
    pv = phi(lam)
    first = kappa.excess * (np.sum(pv * fv) * dl) ** 2
    second = 2.0 * np.pi * np.sum(pv ** 2 * fv ** 2) * dl
    return float(first + second)


def ratio_statistic_variance(f: Callable, phi: WeightFunction) -> float:
    """Variance of sqrt(n)(R(I_n, phi) - R(f, phi)); kurtosis-free.

    With psi = phi * int f - int phi f, returns 2 pi int psi^2 f^2 / (int f)^4.
    """
    lam, dl = _quad_grid()
    fv = np.asarray(f(lam), dtype=float)
    pv = phi(lam)
    int_f = np.sum(fv) * dl
    if int_f <= 0:
        raise ValueError("spectral density must have positive mass")
    int_pf = np.sum(pv * fv) * dl
    psi = pv * int_f - int_pf
    return float(2.0 * np.pi * np.sum(psi ** 2 * fv ** 2) * dl / int_f ** 4)


def spectral_estimator_variance(f_lambda: float, at_boundary: bool, kernel: KernelSpec) -> float:
    """Limit of n h Var(f_n(lambda)): (1 + boundary) f^2 (2 pi)^-1 int K^2.

    Stated under this package's unit-mass kernel normalization; use for
    relative or ratio assertions only.
    """
    if f_lambda < 0:
        raise ValueError("spectral density value must be nonnegative")
    factor = 2.0 if at_boundary else 1.0
    return float(factor * f_lambda ** 2 * kernel.l2_norm_sq / (2.0 * np.pi))


def spectral_estimator_bias(second_derivative: float, kernel: KernelSpec, regime: str) -> float:
    """Limit of sqrt(nh) E(f_n - f): zero when undersmoothed, else the
    curvature term (1/4 pi) f'' int u^2 K(u) du."""
    if regime == "undersmoothed":
        return 0.0
    if regime == "optimal":
        return float(second_derivative * kernel.second_moment / (4.0 * np.pi))
    raise ValueError(f"unknown regime {regime!r}")


def vm_matrix(acvf: ACVF, kappa: KurtosisSpec, M: int) -> VarMatrix:
    """Joint asymptotic covariance of sqrt(n) gamma_hat(0..M):
    V[i,j] = kappa gamma(i) gamma(j) + sum_k (gamma(k) gamma(k-i+j) + gamma(k+j) gamma(k-i))."""
    g = _gamma_extended(acvf)
    K = _truncation_lags(acvf) + M
    entries = np.empty((M + 1, M + 1))
    for i in range(M + 1):
        for j in range(i, M + 1):
            total = kappa.excess * g(i) * g(j)
            for k in range(-K, K + 1):
                total += g(k) * g(k - i + j) + g(k + j) * g(k - i)
            entries[i, j] = entries[j, i] = total
    return VarMatrix(M=M, entries=entries)
