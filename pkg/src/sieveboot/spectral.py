"""Frequency-domain statistics: periodogram, integrated periodogram, ratio
statistics, kernel spectral density estimation and model spectral densities.

Quadrature convention: all integrals over [0, pi] are Riemann sums on the
Fourier frequencies 2*pi*j/n, j = 1..floor(n/2), with spacing 2*pi/n and the
endpoint pi (present for even n) weighted by one half. The half weight is what
makes M(I_n, 2cos(.h)) track the non-centered sample autocovariance even when
spectral mass concentrates at pi.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .ar import ARFit
from .series import DegenerateSeriesError, Series

__all__ = [
    "Periodogram",
    "WeightFunction",
    "KernelSpec",
    "cosine_weight",
    "constant_weight",
    "periodogram",
    "fourier_quadrature",
    "integrated_periodogram",
    "ratio_statistic",
    "kernel_spectral_estimate",
    "ar_spectral_density",
    "linear_process_spectral_density",
]


@dataclass(frozen=True)
class Periodogram:
    """Periodogram ordinates I_n(lambda_j) at lambda_j = 2*pi*j/n, j=0..n//2."""

    freqs: np.ndarray
    values: np.ndarray
    n: int

    def __post_init__(self):
        if self.freqs.size != self.values.size or self.freqs.size != self.n // 2 + 1:
            raise ValueError("inconsistent periodogram arrays")


@dataclass(frozen=True)
class WeightFunction:
    """A bounded weight on [0, pi] for integrated-periodogram functionals."""

    phi: Callable[[np.ndarray], np.ndarray]
    name: str = ""

    def __call__(self, lam):
        return self.phi(np.asarray(lam, dtype=float))


def cosine_weight(h: int) -> WeightFunction:
    """phi(lambda) = 2 cos(lambda h); M(I_n, phi) approximates c(h)."""
    return WeightFunction(phi=lambda lam: 2.0 * np.cos(lam * h), name=f"2cos({h}l)")


def constant_weight(c: float = 1.0) -> WeightFunction:
    return WeightFunction(phi=lambda lam: np.full_like(lam, float(c)), name=f"const({c})")


@dataclass(frozen=True)
class KernelSpec:
    """Smoothing kernel for spectral density estimation.

    The only built-in shape is the Epanechnikov kernel rescaled to support
    [-pi, pi] and normalized to integrate to one:
    K(u) = (3 / 4 pi) (1 - (u/pi)^2) on [-pi, pi].
    """

    shape: str = "epanechnikov_pi"
    bandwidth: float = 0.3

    def __post_init__(self):
        if self.shape != "epanechnikov_pi":
            raise ValueError(f"unknown kernel shape {self.shape!r}")
        if not 0 < self.bandwidth <= np.pi:
            raise ValueError("bandwidth must lie in (0, pi]")

    def kernel(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return np.where(np.abs(u) <= np.pi, 3.0 / (4.0 * np.pi) * (1.0 - (u / np.pi) ** 2), 0.0)

    @property
    def l2_norm_sq(self) -> float:
        """Integral of K^2 over the support: 3 / (5 pi)."""
        return 3.0 / (5.0 * np.pi)

    @property
    def second_moment(self) -> float:
        """Integral of u^2 K(u) du: pi^2 / 5."""
        return np.pi ** 2 / 5.0


def periodogram(s: Series) -> Periodogram:
    """I_n(lambda) = (2 pi n)^-1 |sum_t X_t e^{-i lambda t}|^2 at Fourier frequencies."""
    n = s.n
    if n < 2:
        raise ValueError("periodogram requires n >= 2")
    dft = np.fft.rfft(s.values)
    values = np.abs(dft) ** 2 / (2.0 * np.pi * n)
    freqs = 2.0 * np.pi * np.arange(n // 2 + 1) / n
    return Periodogram(freqs=freqs, values=values, n=n)


def fourier_quadrature(n: int):
    """(frequencies in (0, pi], weights) for the package's quadrature rule."""
    m = n // 2
    freqs = 2.0 * np.pi * np.arange(1, m + 1) / n
    w = np.full(m, 2.0 * np.pi / n)
    if n % 2 == 0:
        w[-1] *= 0.5
    return freqs, w


def integrated_periodogram(s: Series, phi: WeightFunction) -> float:
    """Quadrature approximation of M(I_n, phi) = int_0^pi phi I_n."""
    pg = periodogram(s)
    freqs, w = fourier_quadrature(s.n)
    return float(np.dot(w * phi(freqs), pg.values[1:]))


def ratio_statistic(s: Series, phi: WeightFunction) -> float:
    """R(I_n, phi) = M(I_n, phi) / M(I_n, 1)."""
    pg = periodogram(s)
    freqs, w = fourier_quadrature(s.n)
    denom = float(np.dot(w, pg.values[1:]))
    if denom <= 0:
        raise DegenerateSeriesError("total periodogram mass is zero")
    return float(np.dot(w * phi(freqs), pg.values[1:])) / denom


def _full_circle_periodogram(pg: Periodogram) -> np.ndarray:
    """Ordinates at all n Fourier frequencies via the even symmetry I(-l)=I(l)."""
    n = pg.n
    j = np.arange(n)
    return pg.values[np.minimum(j, n - j)]


def kernel_spectral_estimate(s: Series, k: KernelSpec, lam: float) -> float:
    """Kernel-smoothed periodogram f_n(lambda) = int K_h(lambda - mu) I_n(mu) dmu.

    The periodogram is extended evenly across 0 and pi (equivalently, treated
    as the 2*pi-periodic even function it is), so mass leaking past the
    boundaries folds back; this produces the boundary variance doubling.
    """
    if not 0 <= lam <= np.pi:
        raise ValueError("lambda must lie in [0, pi]")
    n = s.n
    pg = periodogram(s)
    i_full = _full_circle_periodogram(pg)
    mu = 2.0 * np.pi * np.arange(n) / n
    d = np.angle(np.exp(1j * (lam - mu)))  # wrapped to (-pi, pi]
    h = k.bandwidth
    weights = k.kernel(d / h) / h
    return float(np.dot(weights, i_full) * (2.0 * np.pi / n))


def ar_spectral_density(fit: ARFit, lam) -> np.ndarray | float:
    """f_AR(lambda) = (sigma2 / 2 pi) |1 - sum a_j e^{-i j lambda}|^-2."""
    scalar = np.isscalar(lam) or np.ndim(lam) == 0
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    if fit.p == 0:
        out = np.full_like(lam, fit.sigma2 / (2.0 * np.pi))
    else:
        j = np.arange(1, fit.p + 1)
        transfer = 1.0 - np.exp(-1j * np.outer(lam, j)) @ fit.a
        out = fit.sigma2 / (2.0 * np.pi) / np.abs(transfer) ** 2
    return float(out[0]) if scalar else out


def linear_process_spectral_density(b, sigma2: float, lam) -> np.ndarray | float:
    """f(lambda) = (sigma2 / 2 pi) |1 + sum b_j e^{-i j lambda}|^2."""
    scalar = np.isscalar(lam) or np.ndim(lam) == 0
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    b = np.asarray(b, dtype=float)
    if b.size == 0:
        out = np.full_like(lam, sigma2 / (2.0 * np.pi))
    else:
        j = np.arange(1, b.size + 1)
        transfer = 1.0 + np.exp(-1j * np.outer(lam, j)) @ b
        out = sigma2 / (2.0 * np.pi) * np.abs(transfer) ** 2
    return float(out[0]) if scalar else out
